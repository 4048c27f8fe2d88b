#pragma once

#include "gestream/config.hpp"
#include "gestream/types.hpp"

#include <cmath>
#include <vector>

namespace gestream {

/// Weight of the i-th previous sample (i = 0 newest) for an exponentially weighted
/// queue of length k: exp(-(1 - (k - i)) / k). The oldest sample gets exactly 1.
template <class Scalar = double>
Scalar ewa_weight(int i, int k)
{
    return std::exp(-(Scalar(1) - Scalar(k - i)) / Scalar(k));
}

template <class Scalar = double>
vec_type<Scalar> ewa_weights(int k)
{
    vec_type<Scalar> w(k);
    for (int i = 0; i < k; ++i) {
        w(i) = ewa_weight<Scalar>(i, k);
    }
    return w;
}

/// Fixed-capacity queue of raw gesture probabilities; evicts the oldest on overflow.
class FilterQueue {
public:
    explicit FilterQueue(int capacity = 1);

    void push(double x);
    int capacity() const noexcept { return static_cast<int>(ring_.size()); }
    int size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    /// i = 0 is the newest sample.
    double operator[](int i) const;
    /// Contents ordered newest to oldest.
    Vector samples() const;

private:
    std::vector<double> ring_;
    int head_ = 0;  // slot of the newest sample
    int size_ = 0;
};

/// Mean, median (mid-mean for even length) or EWA of the queue contents.
double filter(const FilterQueue& queue, FilterKind kind);

enum class GateMode { Idle, Active };
enum class GateDecision { StayIdle, Activate, StayActive, Deactivate };

const char* to_string(GateMode mode);
const char* to_string(GateDecision decision);

struct GateState {
    GateMode mode = GateMode::Idle;
    FilterQueue queue;
    int nogesture_run = 0;

    static GateState initial(const PipelineConfig& cfg) { return {GateMode::Idle, FilterQueue(cfg.filter_size), 0}; }
};

struct GateStep {
    GateState state;
    GateDecision decision = GateDecision::StayIdle;
    double filtered = 0.0;
};

/// One detector window through the gate. Pure: the state is taken by value.
GateStep gate_step(GateState state, double raw_gesture_prob, const PipelineConfig& cfg);

} // namespace gestream
