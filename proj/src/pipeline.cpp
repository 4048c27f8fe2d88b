#include "gestream/pipeline.hpp"

#include "gestream/windowing.hpp"

#include <algorithm>

namespace gestream {

namespace {

constexpr Eigen::Index kGestureClass = 1;

} // namespace

RunTrace run_video(const ScoreStream& detector, const ScoreStream& classifier, const PipelineConfig& raw_cfg,
                   const RunOptions& options)
{
    const PipelineConfig cfg = validate_config(raw_cfg);
    if (detector.arity() != 2) {
        throw ValidationError("detector stream for " + detector.video_id() + " has arity " +
                              std::to_string(detector.arity()) + ", expected 2");
    }
    if (classifier.arity() != cfg.num_classes) {
        throw ValidationError("classifier stream for " + classifier.video_id() + " has arity " +
                              std::to_string(classifier.arity()) + ", expected num_classes = " +
                              std::to_string(cfg.num_classes));
    }

    RunTrace trace;
    trace.video_id = classifier.video_id();
    const FrameIndex length = std::max(detector.frame_extent(), classifier.frame_extent());
    const WindowSchedule schedule(length, cfg);
    if (schedule.warmup_only()) {
        trace.warnings.push_back(trace.video_id + ": " + std::to_string(length) +
                                 " frames is shorter than one classifier window; no windows processed");
        return trace;
    }

    const auto params = ActivationParams::from_config(cfg);
    GateState gate = GateState::initial(cfg);
    ActivationState act = ActivationState::idle(cfg.num_classes);
    if (options.keep_trace) trace.rows.reserve(schedule.size());

    const auto emit = [&](std::optional<ActivationEvent>& ev) {
        if (ev) {
            ev->video_id = trace.video_id;
            trace.events.push_back(std::move(*ev));
        }
    };

    for (const WindowPair window : schedule) {
        const double raw = detector.score(window.detector.hi)(kGestureClass);
        auto gated = gate_step(std::move(gate), raw, cfg);
        gate = std::move(gated.state);

        auto step = activation_step(std::move(act), gated.decision, classifier, window, params);
        act = std::move(step.state);
        ++trace.windows;
        if (step.classifier_consulted) ++trace.classifier_invocations;
        emit(step.event);

        if (options.keep_trace) {
            TraceRow row;
            row.t = window.end;
            row.raw_detector = raw;
            row.filtered = gated.filtered;
            row.mode = gate.mode;
            row.decision = gated.decision;
            row.j = act.mean.count;
            row.weight = step.weight;
            if (act.mean.count > 0) {
                const auto best = top2(act.mean.values);
                row.top_class = static_cast<int>(best.argmax);
                row.max1 = best.max1;
                row.max2 = best.max2;
            }
            trace.rows.push_back(row);
        }
    }

    if (act.active && options.flush_at_end) {
        const FrameIndex last = schedule.end_frame(schedule.size() - 1);
        auto late = finalize_late(std::move(act), params.tau_late, last);
        emit(late.event);
        trace.warnings.push_back(trace.video_id + ": stream ended with the classifier active; closed at frame " +
                                 std::to_string(last));
    }

    if (trace.classifier_invocations > trace.windows) {
        throw InvariantError("classifier invocations exceed windows for " + trace.video_id);
    }
    return trace;
}

CorpusRun run_corpus(const Corpus& corpus, const PipelineConfig& cfg, FrameIndex grace, const RunOptions& options)
{
    if (corpus.classifier.empty() && corpus.detector.empty()) {
        throw ValidationError("no videos");
    }
    CorpusRun out;
    AnnotationSet evaluated;
    for (const auto& [video, classifier] : corpus.classifier) {
        const auto det = corpus.detector.find(video);
        if (det == corpus.detector.end()) {
            out.warnings.push_back(video + ": classifier scores without detector scores; skipped");
            out.skipped_videos.push_back(video);
            continue;
        }
        const auto ann = corpus.annotations.find(video);
        if (ann == corpus.annotations.end()) {
            out.warnings.push_back(video + ": no annotations; skipped");
            out.skipped_videos.push_back(video);
            continue;
        }
        auto trace = run_video(det->second, classifier, cfg, options);
        out.warnings.insert(out.warnings.end(), trace.warnings.begin(), trace.warnings.end());
        out.events[video] = trace.events;
        evaluated.emplace(video, ann->second);
        out.traces.emplace(video, std::move(trace));
    }
    for (const auto& [video, stream] : corpus.detector) {
        if (!corpus.classifier.contains(video)) {
            out.warnings.push_back(video + ": detector scores without classifier scores; skipped");
            out.skipped_videos.push_back(video);
        }
    }
    for (const auto& [video, segments] : corpus.annotations) {
        if (!corpus.classifier.contains(video) && !corpus.detector.contains(video)) {
            out.warnings.push_back(video + ": annotations without score streams; not evaluated");
        }
    }
    if (out.traces.empty()) {
        throw ValidationError("no videos with detector scores, classifier scores and annotations");
    }
    std::sort(out.skipped_videos.begin(), out.skipped_videos.end());
    out.report = evaluate(out.events, evaluated, grace);
    return out;
}

std::vector<SweepRow> sweep(const Corpus& corpus, const PipelineConfig& cfg, const std::vector<double>& taus,
                            FrameIndex grace)
{
    if (taus.empty()) {
        throw ValidationError("sweep: no tau_early values");
    }
    auto sorted = taus;
    std::sort(sorted.begin(), sorted.end());
    if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        throw ValidationError("sweep: duplicate tau_early " + std::to_string(*dup));
    }
    std::vector<SweepRow> rows;
    for (double tau : sorted) {
        PipelineConfig run_cfg = cfg;
        run_cfg.tau_early = tau;
        const auto run = run_corpus(corpus, run_cfg, grace);
        rows.push_back(sweep_row(tau, run.report));
    }
    return rows;
}

} // namespace gestream
