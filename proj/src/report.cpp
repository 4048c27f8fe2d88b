#include "gestream/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace gestream {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json optional_number(const std::optional<double>& x)
{
    return x ? ordered_json(*x) : ordered_json(nullptr);
}

ordered_json config_json(const PipelineConfig& cfg)
{
    ordered_json j;
    j["detector_window"] = cfg.detector_window;
    j["classifier_window"] = cfg.classifier_window;
    j["stride"] = cfg.stride;
    j["num_classes"] = cfg.num_classes;
    j["filter"] = std::string(to_string(cfg.filter_kind));
    j["filter_size"] = cfg.filter_size;
    j["gate_threshold"] = cfg.gate_threshold;
    j["deactivate_count"] = cfg.deactivate_count;
    j["tau_early"] = cfg.tau_early;
    j["tau_late"] = cfg.tau_late;
    j["mean_duration"] = cfg.mean_duration;
    j["sigmoid_slope"] = cfg.sigmoid_slope;
    j["alignment"] = std::string(to_string(cfg.alignment));
    j["midpoint"] = ActivationParams::from_config(cfg).midpoint;
    return j;
}

ordered_json early_json(const std::optional<EarlyStats>& s)
{
    if (!s) return nullptr;
    ordered_json j;
    j["count"] = s->count;
    j["mean_frames"] = s->mean;
    j["median_frames"] = s->median;
    return j;
}

ordered_json video_json(const VideoResult& r)
{
    ordered_json j;
    j["video"] = r.video_id;
    j["gt"] = r.gt_labels;
    j["pred"] = r.pred_labels;
    j["distance"] = r.distance;
    j["accuracy"] = optional_number(r.accuracy);
    j["early_events"] = r.early_events;
    j["late_events"] = r.late_events;
    j["correct"] = r.correct;
    j["wrong_label"] = r.wrong_label;
    j["duplicates"] = r.duplicates;
    j["unmatched"] = r.unmatched;
    j["misses"] = r.misses;
    return j;
}

// Fixed formatting keeps CSV output stable and readable.
std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string fmt(const std::optional<double>& x)
{
    return x ? fmt(*x) : std::string();
}

} // namespace

std::string format_report(const EvaluationReport& report, const ReportContext& context)
{
    ordered_json j;
    j["command"] = context.command;
    if (context.config) {
        j["config"] = config_json(*context.config);
    }
    j["grace"] = report.grace;

    ordered_json corpus;
    corpus["videos"] = context.videos;
    corpus["evaluated_videos"] = report.videos.size();
    corpus["scored_videos"] = report.scored_videos;
    corpus["windows"] = context.windows;
    corpus["classifier_invocations"] = context.classifier_invocations;
    corpus["skipped_videos"] = context.skipped_videos;
    j["corpus"] = corpus;

    ordered_json agg;
    agg["levenshtein_accuracy"] = optional_number(report.mean_accuracy);
    agg["events"] = {{"early", report.early_events}, {"late", report.late_events}};
    agg["correct"] = report.correct;
    agg["wrong_label"] = report.wrong_label;
    agg["duplicates"] = report.duplicates;
    agg["unmatched"] = report.unmatched;
    agg["misses"] = report.misses;
    agg["early_detection"] = early_json(report.early);
    agg["empty_gt_videos"] = report.empty_gt_videos;
    agg["negative_accuracy_videos"] = report.negative_accuracy_videos;
    agg["unannotated_event_videos"] = report.unannotated_event_videos;
    j["aggregate"] = agg;

    ordered_json videos = ordered_json::array();
    for (const auto& v : report.videos) videos.push_back(video_json(v));
    j["videos"] = videos;
    j["warnings"] = context.warnings;
    return j.dump(2) + "\n";
}

std::string format_video_results(const EvaluationReport& report)
{
    std::ostringstream out;
    for (const auto& v : report.videos) out << video_json(v).dump() << '\n';
    return out.str();
}

std::string format_trace(const RunTrace& trace)
{
    std::ostringstream out;
    out << "t,raw_detector,filtered,mode,decision,j,weight,top_class,max1,max2\n";
    for (const auto& r : trace.rows) {
        out << r.t << ',' << fmt(r.raw_detector) << ',' << fmt(r.filtered) << ',' << to_string(r.mode) << ','
            << to_string(r.decision) << ',' << r.j << ',' << fmt(r.weight) << ',' << r.top_class << ','
            << fmt(r.max1) << ',' << fmt(r.max2) << '\n';
    }
    return out.str();
}

std::string format_sweep(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "tau_early,levenshtein_accuracy,mean_early_frames,median_early_frames,matched,duplicates,misses\n";
    for (const auto& r : rows) {
        out << fmt(r.tau_early) << ',' << fmt(r.levenshtein_accuracy) << ',' << fmt(r.mean_early_frames) << ','
            << fmt(r.median_early_frames) << ',' << r.matched << ',' << r.duplicates << ',' << r.misses << '\n';
    }
    return out.str();
}

std::string format_sweep_summary(const std::vector<SweepRow>& rows, const PipelineConfig& cfg, FrameIndex grace)
{
    ordered_json j;
    j["config"] = config_json(cfg);
    j["grace"] = grace;
    j["rows"] = rows.size();

    bool early_monotone = true;
    std::optional<double> prev;
    for (const auto& r : rows) {
        if (r.mean_early_frames) {
            if (prev && *r.mean_early_frames > *prev) early_monotone = false;
            prev = r.mean_early_frames;
        }
    }
    j["mean_early_frames_non_increasing"] = early_monotone;
    if (!rows.empty()) {
        const auto& lo = rows.front();
        const auto& hi = rows.back();
        j["lowest_tau"] = {{"tau_early", lo.tau_early},
                           {"levenshtein_accuracy", optional_number(lo.levenshtein_accuracy)},
                           {"mean_early_frames", optional_number(lo.mean_early_frames)}};
        j["highest_tau"] = {{"tau_early", hi.tau_early},
                            {"levenshtein_accuracy", optional_number(hi.levenshtein_accuracy)},
                            {"mean_early_frames", optional_number(hi.mean_early_frames)}};
        if (lo.levenshtein_accuracy && hi.levenshtein_accuracy) {
            j["accuracy_gain"] = *hi.levenshtein_accuracy - *lo.levenshtein_accuracy;
        }
        if (lo.mean_early_frames && hi.mean_early_frames) {
            j["earliness_cost_frames"] = *lo.mean_early_frames - *hi.mean_early_frames;
        }
    }
    return j.dump(2) + "\n";
}

std::string format_config(const PipelineConfig& cfg)
{
    std::ostringstream out;
    out << "detector_window = " << cfg.detector_window << '\n'
        << "classifier_window = " << cfg.classifier_window << '\n'
        << "stride = " << cfg.stride << '\n'
        << "num_classes = " << cfg.num_classes << '\n'
        << "filter = " << to_string(cfg.filter_kind) << '\n'
        << "filter_size = " << cfg.filter_size << '\n'
        << "gate_threshold = " << ordered_json(cfg.gate_threshold).dump() << '\n'
        << "deactivate_count = " << cfg.deactivate_count << '\n'
        << "tau_early = " << ordered_json(cfg.tau_early).dump() << '\n'
        << "tau_late = " << ordered_json(cfg.tau_late).dump() << '\n'
        << "mean_duration = " << ordered_json(cfg.mean_duration).dump() << '\n'
        << "sigmoid_slope = " << ordered_json(cfg.sigmoid_slope).dump() << '\n'
        << "alignment = " << to_string(cfg.alignment) << '\n';
    if (cfg.midpoint_override) out << "midpoint = " << *cfg.midpoint_override << '\n';
    return out.str();
}

std::string format_config(const SynthConfig& cfg)
{
    const auto num = [](double x) { return ordered_json(x).dump(); };
    std::ostringstream out;
    out << "seed = " << cfg.seed << '\n'
        << "videos = " << cfg.num_videos << '\n'
        << "gestures = " << cfg.gestures_per_video << '\n'
        << "classes = " << cfg.num_classes << '\n'
        << "duration_mean = " << num(cfg.duration_mean) << '\n'
        << "duration_spread = " << num(cfg.duration_spread) << '\n'
        << "gap_mean = " << num(cfg.gap_mean) << '\n'
        << "gap_spread = " << num(cfg.gap_spread) << '\n'
        << "min_gap = " << cfg.min_gap << '\n'
        << "prep_fraction = " << num(cfg.prep_fraction) << '\n'
        << "nucleus_fraction = " << num(cfg.nucleus_fraction) << '\n'
        << "retract_fraction = " << num(cfg.retract_fraction) << '\n'
        << "detector_base = " << num(cfg.detector_base) << '\n'
        << "noise = " << num(cfg.noise) << '\n'
        << "prep_ambiguity = " << num(cfg.prep_ambiguity) << '\n'
        << "prep_leak = " << num(cfg.prep_leak) << '\n'
        << "nucleus_peak = " << num(cfg.nucleus_peak) << '\n'
        << "detector_window = " << cfg.detector_window << '\n'
        << "classifier_window = " << cfg.classifier_window << '\n'
        << "max_video_frames = " << cfg.max_video_frames << '\n';
    return out.str();
}

} // namespace gestream
