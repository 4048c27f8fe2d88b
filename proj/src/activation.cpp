#include "gestream/activation.hpp"

#include <string>

namespace gestream {

int midpoint(double mean_duration, int stride)
{
    if (!(mean_duration > 0.0) || stride < 1) {
        throw ValidationError("midpoint: need mean_duration > 0 and stride >= 1");
    }
    return static_cast<int>(std::floor(mean_duration / (4.0 * stride)));
}

const char* to_string(EventKind kind)
{
    return kind == EventKind::Early ? "early" : "late";
}

EventKind parse_event_kind(std::string_view text)
{
    if (text == "early") return EventKind::Early;
    if (text == "late") return EventKind::Late;
    throw ValidationError("unknown event kind '" + std::string(text) + "'");
}

ActivationParams ActivationParams::from_config(const PipelineConfig& cfg)
{
    ActivationParams p;
    p.midpoint = cfg.midpoint_override ? *cfg.midpoint_override : gestream::midpoint(cfg.mean_duration, cfg.stride);
    p.slope = cfg.sigmoid_slope;
    p.tau_early = cfg.tau_early;
    p.tau_late = cfg.tau_late;
    return p;
}

ActivationState update_mean(ActivationState state, const Eigen::Ref<const Vector>& probs, double weight)
{
    auto& mean = state.mean;
    if (probs.size() != mean.values.size()) {
        throw ValidationError("update_mean: arity mismatch, mean has " + std::to_string(mean.values.size()) +
                              " classes, scores have " + std::to_string(probs.size()));
    }
    const int j = ++mean.count;
    mean.values = (mean.values * double(j - 1) + weight * probs) / double(j);
    return state;
}

ActivationResult try_early(ActivationState state, double tau_early, FrameIndex frame)
{
    if (!state.active || state.early_fired || state.mean.count == 0) {
        return {std::move(state), std::nullopt};
    }
    const auto best = top2(state.mean.values);
    const double margin = best.max1 - best.max2;
    if (margin < tau_early) {
        return {std::move(state), std::nullopt};
    }
    state.early_fired = true;
    ActivationEvent ev;
    ev.label = GestureLabel{static_cast<int>(best.argmax)};
    ev.emit_frame = frame;
    ev.kind = EventKind::Early;
    ev.score = margin;
    return {std::move(state), ev};
}

ActivationResult finalize_late(ActivationState state, double tau_late, FrameIndex frame)
{
    std::optional<ActivationEvent> ev;
    if (state.active && !state.early_fired && state.mean.count > 0) {
        const auto best = top2(state.mean.values);
        if (best.max1 >= tau_late) {
            ev = ActivationEvent{};
            ev->label = GestureLabel{static_cast<int>(best.argmax)};
            ev->emit_frame = frame;
            ev->kind = EventKind::Late;
            ev->score = best.max1;
        }
    }
    state.mean.values.setZero();
    state.mean.count = 0;
    state.early_fired = false;
    state.active = false;
    return {std::move(state), ev};
}

ActivationStep activation_step(ActivationState state, GateDecision decision, const ScoreStream& classifier,
                               const WindowPair& window, const ActivationParams& params)
{
    ActivationStep out;
    switch (decision) {
    case GateDecision::StayIdle:
        out.state = std::move(state);
        return out;
    case GateDecision::Deactivate: {
        auto late = finalize_late(std::move(state), params.tau_late, window.end);
        out.state = std::move(late.state);
        out.event = std::move(late.event);
        return out;
    }
    case GateDecision::Activate:
        state.mean.values.setZero();
        state.mean.count = 0;
        state.early_fired = false;
        state.active = true;
        break;
    case GateDecision::StayActive:
        if (!state.active) {
            throw InvariantError("activation_step: StayActive on an inactive state");
        }
        break;
    }

    const auto probs = classifier.score(window.classifier.hi);
    out.classifier_consulted = true;
    out.weight = sigmoid_weight(state.mean.count + 1, params.midpoint, params.slope);
    state = update_mean(std::move(state), probs, out.weight);

    auto early = try_early(std::move(state), params.tau_early, window.end);
    out.state = std::move(early.state);
    out.event = std::move(early.event);
    return out;
}

} // namespace gestream
