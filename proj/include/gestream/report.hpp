#pragma once

#include "gestream/config.hpp"
#include "gestream/evaluation.hpp"
#include "gestream/pipeline.hpp"
#include "gestream/synth.hpp"

#include <string>
#include <vector>

namespace gestream {

/// Corpus-level facts that go into a run or eval report next to the evaluation itself.
struct ReportContext {
    std::string command;
    std::optional<PipelineConfig> config;  // absent for eval
    std::size_t videos = 0;
    std::size_t windows = 0;
    std::size_t classifier_invocations = 0;
    std::vector<std::string> skipped_videos;
    std::vector<std::string> warnings;
};

/// Structured report: corpus summary, aggregate metrics, per-video results.
std::string format_report(const EvaluationReport& report, const ReportContext& context);

/// One line per video.
std::string format_video_results(const EvaluationReport& report);

/// Trace columns: t, raw_detector, filtered, mode, decision, j, weight, top_class, max1, max2.
std::string format_trace(const RunTrace& trace);

/// Columns: tau_early, levenshtein_accuracy, mean_early_frames, median_early_frames, matched, duplicates, misses.
std::string format_sweep(const std::vector<SweepRow>& rows);
std::string format_sweep_summary(const std::vector<SweepRow>& rows, const PipelineConfig& cfg, FrameIndex grace);

/// Flat key = value text, readable back as a config file.
std::string format_config(const PipelineConfig& cfg);
std::string format_config(const SynthConfig& cfg);

} // namespace gestream
