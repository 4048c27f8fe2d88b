#pragma once

#include "gestream/config.hpp"
#include "gestream/gate.hpp"
#include "gestream/prob.hpp"
#include "gestream/scoring.hpp"
#include "gestream/windowing.hpp"

#include <cmath>
#include <optional>

namespace gestream {

/// Sigmoid midpoint from mean gesture duration: floor(mu / (4 s)).
int midpoint(double mean_duration, int stride);

/// w_j = 1 / (1 + exp(-slope (j - t))).
template <class Scalar = double>
Scalar sigmoid_weight(int j, int t, Scalar slope = Scalar(0.2))
{
    return Scalar(1) / (Scalar(1) + std::exp(-slope * Scalar(j - t)));
}

/// Running mean of weighted class scores: (sum_j w_j p_j) / count.
struct WeightedMean {
    Vector values;
    int count = 0;

    static WeightedMean zeros(int arity) { return {Vector::Zero(arity), 0}; }
};

struct ActivationState {
    WeightedMean mean;
    bool early_fired = false;
    bool active = false;

    static ActivationState idle(int num_classes) { return {WeightedMean::zeros(num_classes), false, false}; }
};

enum class EventKind { Early, Late };
const char* to_string(EventKind kind);
EventKind parse_event_kind(std::string_view text);

struct ActivationEvent {
    std::string video_id;
    GestureLabel label;
    FrameIndex emit_frame = 0;
    EventKind kind = EventKind::Late;
    /// Top-2 margin for early events, max weighted score for late ones.
    double score = 0.0;

    friend bool operator==(const ActivationEvent&, const ActivationEvent&) = default;
};

/// Per-run constants derived from a PipelineConfig.
struct ActivationParams {
    int midpoint = 9;
    double slope = 0.2;
    double tau_early = 0.4;
    double tau_late = 0.15;

    static ActivationParams from_config(const PipelineConfig& cfg);
};

/// Folds probs into the running mean as update number count+1.
ActivationState update_mean(ActivationState state, const Eigen::Ref<const Vector>& probs, double weight);

struct ActivationResult {
    ActivationState state;
    std::optional<ActivationEvent> event;
};

/// Early emission when the top-2 margin of the running mean reaches tau_early.
ActivationResult try_early(ActivationState state, double tau_early, FrameIndex frame);

/// Called on deactivation: late emission unless early already fired, then full reset.
ActivationResult finalize_late(ActivationState state, double tau_late, FrameIndex frame);

struct ActivationStep {
    ActivationState state;
    std::optional<ActivationEvent> event;
    bool classifier_consulted = false;
    double weight = 0.0;  // w_j of this step, 0 when no update happened
};

/// Advances the single-time activation machine by one window given the gate's decision.
/// The classifier stream is read only while the gate is on.
ActivationStep activation_step(ActivationState state, GateDecision decision, const ScoreStream& classifier,
                               const WindowPair& window, const ActivationParams& params);

} // namespace gestream
