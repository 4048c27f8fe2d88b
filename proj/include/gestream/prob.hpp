#pragma once

#include "gestream/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gestream {

/// Absolute tolerance on the sum of a stored probability vector.
inline constexpr double kSumTolerance = 1e-6;
/// Ingested vectors off by at most this much are renormalized; beyond it they are rejected.
inline constexpr double kRenormalizeTolerance = 1e-3;

/// Scales a non-negative vector to unit sum.
template <class Derived>
vec_type<typename Derived::Scalar> normalize(const Eigen::MatrixBase<Derived>& raw)
{
    using Scalar = typename Derived::Scalar;
    if (raw.size() == 0) {
        throw ValidationError("normalize: empty vector");
    }
    if (!raw.allFinite()) {
        throw ValidationError("normalize: non-finite element");
    }
    if ((raw.array() < Scalar(0)).any()) {
        throw ValidationError("normalize: negative element");
    }
    const Scalar total = raw.sum();
    if (!(total > Scalar(0))) {
        throw ValidationError("normalize: all-zero vector");
    }
    return raw / total;
}

template <class Scalar>
struct Top2 {
    Eigen::Index argmax = 0;
    Scalar max1 = 0;
    Scalar max2 = 0;
};

/// Largest and second-largest element; ties go to the lowest index.
template <class Derived>
Top2<typename Derived::Scalar> top2(const Eigen::DenseBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    if (v.size() < 2) {
        throw ValidationError("top2: need at least 2 elements, got " + std::to_string(v.size()));
    }
    Top2<Scalar> out;
    out.argmax = 0;
    out.max1 = v(0);
    out.max2 = -std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const Scalar x = v(i);
        if (x > out.max1) {
            out.max2 = out.max1;
            out.max1 = x;
            out.argmax = i;
        } else if (x > out.max2) {
            out.max2 = x;
        }
    }
    return out;
}

/// A validated probability distribution over classes.
///
/// Construction goes through ingest(), which applies the storage tolerance rules:
/// sums within kSumTolerance are kept verbatim, sums within kRenormalizeTolerance
/// are rescaled, anything else is rejected.
class ProbVector {
public:
    static ProbVector ingest(Vector raw);

    /// Wraps the result of normalize() on an arbitrary non-negative vector.
    static ProbVector from_weights(const Vector& raw) { return ProbVector(normalize(raw)); }

    const Vector& values() const noexcept { return values_; }
    Eigen::Index size() const noexcept { return values_.size(); }
    double operator[](Eigen::Index i) const { return values_(i); }

private:
    explicit ProbVector(Vector v) : values_(std::move(v)) {}

    Vector values_;
};

inline ProbVector ProbVector::ingest(Vector raw)
{
    if (raw.size() == 0) {
        throw ValidationError("probability vector is empty");
    }
    if (!raw.allFinite()) {
        throw ValidationError("probability vector has a non-finite element");
    }
    if ((raw.array() < 0.0).any() || (raw.array() > 1.0).any()) {
        throw ValidationError("probability vector has an element outside [0, 1]");
    }
    const double deviation = std::abs(raw.sum() - 1.0);
    if (deviation <= kSumTolerance) {
        return ProbVector(std::move(raw));
    }
    if (deviation <= kRenormalizeTolerance) {
        return ProbVector(normalize(raw));
    }
    throw ValidationError("probability vector sums to " + std::to_string(raw.sum()) +
                          ", outside 1 +/- " + std::to_string(kRenormalizeTolerance));
}

} // namespace gestream
