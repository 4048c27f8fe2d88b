#pragma once

#include "gestream/activation.hpp"
#include "gestream/config.hpp"
#include "gestream/evaluation.hpp"
#include "gestream/gate.hpp"
#include "gestream/scoring.hpp"

#include <map>
#include <string>
#include <vector>

namespace gestream {

/// Diagnostics for one processed window.
struct TraceRow {
    FrameIndex t = 0;
    double raw_detector = 0.0;
    double filtered = 0.0;
    GateMode mode = GateMode::Idle;   // after the step
    GateDecision decision = GateDecision::StayIdle;
    int j = 0;                        // weighted-mean update count after the step
    double weight = 0.0;              // w_j applied this step, 0 if none
    int top_class = -1;               // -1 when no mean is held
    double max1 = 0.0;
    double max2 = 0.0;
};

struct RunTrace {
    std::string video_id;
    std::vector<TraceRow> rows;  // only filled when requested
    std::vector<ActivationEvent> events;
    std::size_t windows = 0;
    std::size_t classifier_invocations = 0;
    std::vector<std::string> warnings;
};

struct RunOptions {
    bool keep_trace = false;
    /// Emit a late decision for a period still open when the stream ends.
    bool flush_at_end = true;
};

/// Runs one video through windowing, gate and activation in causal order.
RunTrace run_video(const ScoreStream& detector, const ScoreStream& classifier, const PipelineConfig& cfg,
                   const RunOptions& options = {});

struct CorpusRun {
    std::map<std::string, RunTrace> traces;
    EventLog events;
    EvaluationReport report;
    std::vector<std::string> skipped_videos;  // score streams without annotations
    std::vector<std::string> warnings;
};

/// Runs and evaluates every video that has detector scores, classifier scores and annotations.
CorpusRun run_corpus(const Corpus& corpus, const PipelineConfig& cfg, FrameIndex grace,
                     const RunOptions& options = {});

/// One corpus run per tau_early with everything else fixed.
std::vector<SweepRow> sweep(const Corpus& corpus, const PipelineConfig& cfg, const std::vector<double>& taus,
                            FrameIndex grace);

} // namespace gestream
