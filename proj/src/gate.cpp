#include "gestream/gate.hpp"

#include <algorithm>
#include <string>

namespace gestream {

FilterQueue::FilterQueue(int capacity)
{
    if (capacity < 1) {
        throw ValidationError("filter queue capacity must be >= 1");
    }
    ring_.assign(static_cast<std::size_t>(capacity), 0.0);
}

void FilterQueue::push(double x)
{
    head_ = (head_ + 1) % capacity();
    ring_[static_cast<std::size_t>(head_)] = x;
    size_ = std::min(size_ + 1, capacity());
}

double FilterQueue::operator[](int i) const
{
    const int cap = capacity();
    return ring_[static_cast<std::size_t>(((head_ - i) % cap + cap) % cap)];
}

Vector FilterQueue::samples() const
{
    Vector out(size_);
    for (int i = 0; i < size_; ++i) {
        out(i) = (*this)[i];
    }
    return out;
}

double filter(const FilterQueue& queue, FilterKind kind)
{
    if (queue.empty()) {
        throw ValidationError("filter: empty queue");
    }
    const Vector x = queue.samples();
    switch (kind) {
    case FilterKind::Mean:
        return x.mean();
    case FilterKind::Median: {
        std::vector<double> sorted(x.data(), x.data() + x.size());
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
    case FilterKind::Ewa: {
        // Weights follow the current length during warm-up.
        const Vector w = ewa_weights(static_cast<int>(x.size()));
        return w.dot(x) / w.sum();
    }
    }
    throw InvariantError("filter: unknown kind");
}

const char* to_string(GateMode mode)
{
    return mode == GateMode::Idle ? "idle" : "active";
}

const char* to_string(GateDecision decision)
{
    switch (decision) {
    case GateDecision::StayIdle: return "stay_idle";
    case GateDecision::Activate: return "activate";
    case GateDecision::StayActive: return "stay_active";
    case GateDecision::Deactivate: return "deactivate";
    }
    return "?";
}

GateStep gate_step(GateState state, double raw_gesture_prob, const PipelineConfig& cfg)
{
    if (!(raw_gesture_prob >= 0.0 && raw_gesture_prob <= 1.0)) {
        throw ValidationError("gate_step: gesture probability " + std::to_string(raw_gesture_prob) +
                              " outside [0, 1]");
    }
    state.queue.push(raw_gesture_prob);
    const double f = filter(state.queue, cfg.filter_kind);
    const bool gesture = f >= cfg.gate_threshold;

    GateDecision decision;
    if (state.mode == GateMode::Idle) {
        if (gesture) {
            state.mode = GateMode::Active;
            decision = GateDecision::Activate;
        } else {
            decision = GateDecision::StayIdle;
        }
        state.nogesture_run = 0;
    } else if (gesture) {
        state.nogesture_run = 0;
        decision = GateDecision::StayActive;
    } else if (++state.nogesture_run >= cfg.deactivate_count) {
        state.mode = GateMode::Idle;
        state.nogesture_run = 0;
        decision = GateDecision::Deactivate;
    } else {
        decision = GateDecision::StayActive;
    }
    return {std::move(state), decision, f};
}

} // namespace gestream
