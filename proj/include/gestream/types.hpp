#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gestream {

template <class Scalar_, int Rows_ = Eigen::Dynamic>
using vec_type = Eigen::Matrix<Scalar_, Rows_, 1>;

template <class Scalar_, int Rows_ = Eigen::Dynamic, int Cols_ = Eigen::Dynamic>
using mat_type = Eigen::Matrix<Scalar_, Rows_, Cols_>;

using Vector = vec_type<double>;
using Matrix = mat_type<double>;

/// Zero-based frame index. Window-keyed data uses the window's end frame.
using FrameIndex = std::int64_t;

struct GestureLabel {
    int class_id = 0;

    friend auto operator<=>(const GestureLabel&, const GestureLabel&) = default;
};

/// Bad input: config, data file contents, CLI values. Maps to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system failure. Maps to exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant did not hold. Maps to exit code 3.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gestream
