// gestream: generate synthetic score corpora, run the streaming activation pipeline,
// evaluate stored events and sweep the early-detection threshold.

#include "gestream/io.hpp"
#include "gestream/pipeline.hpp"
#include "gestream/report.hpp"
#include "gestream/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace gestream;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

/// Flat `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::map<std::string, std::string> out;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

/// Applies config-file values to options the command line left unset.
void apply_config_file(CLI::App& cmd, const std::string& config_path)
{
    if (config_path.empty()) return;
    for (const auto& [key, value] : read_config_file(config_path)) {
        CLI::Option* opt = cmd.get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw ValidationError("config " + config_path + ": unknown key '" + key + "'");
        }
        if (opt->count() > 0) continue;
        opt->add_result(value);
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw ValidationError("config " + config_path + ": bad value for '" + key + "': " + e.what());
        }
    }
}

struct PipelineFlags {
    PipelineConfig cfg;
    std::string filter = "median";
    std::string alignment = "newest";
    int midpoint = -1;
    int grace = -1;
    CLI::Option* num_classes = nullptr;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--detector_window", cfg.detector_window, "Detector window n (frames)")->capture_default_str();
        cmd.add_option("--classifier_window", cfg.classifier_window, "Classifier window m (frames)")
            ->capture_default_str();
        cmd.add_option("--stride", cfg.stride, "Window stride s (frames)")->capture_default_str();
        num_classes = cmd.add_option("--num_classes", cfg.num_classes,
                                     "Classifier classes C (default: taken from the classifier file)");
        cmd.add_option("--filter", filter, "Detector filter: mean, median or ewa")->capture_default_str();
        cmd.add_option("--filter_size", cfg.filter_size, "Detector filter queue size k")->capture_default_str();
        cmd.add_option("--gate_threshold", cfg.gate_threshold, "Filtered detector threshold for switching on")
            ->capture_default_str();
        cmd.add_option("--deactivate_count", cfg.deactivate_count,
                       "Consecutive sub-threshold windows before switching off")
            ->capture_default_str();
        cmd.add_option("--tau_early", cfg.tau_early, "Top-2 margin threshold for early detection")
            ->capture_default_str();
        cmd.add_option("--tau_late", cfg.tau_late, "Minimum score for late detection")->capture_default_str();
        cmd.add_option("--mean_duration", cfg.mean_duration, "Mean gesture duration (frames)")->capture_default_str();
        cmd.add_option("--sigmoid_slope", cfg.sigmoid_slope, "Slope of the activation weight sigmoid")
            ->capture_default_str();
        cmd.add_option("--alignment", alignment, "Detector window placement: newest or oldest")->capture_default_str();
        cmd.add_option("--midpoint", midpoint, "Sigmoid midpoint; overrides the value derived from mean_duration");
        cmd.add_option("--grace", grace, "Frames after a gesture end still attributed to it (default: classifier_window)");
    }

    PipelineConfig resolve()
    {
        cfg.filter_kind = parse_filter_kind(filter);
        cfg.alignment = parse_alignment(alignment);
        if (midpoint >= 0) cfg.midpoint_override = midpoint;
        return validate_config(cfg);
    }

    std::optional<int> explicit_classes() const
    {
        return num_classes->count() > 0 ? std::optional<int>(cfg.num_classes) : std::nullopt;
    }

    FrameIndex resolved_grace(const PipelineConfig& resolved) const
    {
        return grace >= 0 ? grace : resolved.classifier_window;
    }
};

struct CorpusFlags {
    std::string data;
    std::string detector;
    std::string classifier;
    std::string annotations;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--data", data, "Directory holding detector.jsonl, classifier.jsonl, annotations.jsonl");
        cmd.add_option("--detector", detector, "Detector score file (overrides --data)");
        cmd.add_option("--classifier", classifier, "Classifier score file (overrides --data)");
        cmd.add_option("--annotations", annotations, "Annotation file (overrides --data)");
    }

    CorpusPaths resolve() const
    {
        CorpusPaths paths = data.empty() ? CorpusPaths{} : CorpusPaths::in_directory(data);
        if (!detector.empty()) paths.detector = detector;
        if (!classifier.empty()) paths.classifier = classifier;
        if (!annotations.empty()) paths.annotations = annotations;
        for (const auto& p : {paths.detector, paths.classifier, paths.annotations}) {
            if (p.empty()) throw ValidationError("corpus files not specified; use --data or the per-file flags");
            if (!fs::exists(p)) throw IoError("missing input file " + p.string());
        }
        return paths;
    }
};

fs::path prepare_out(const std::string& out)
{
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out + ": " + ec.message());
    }
    return out;
}

Corpus load_for_run(const CorpusFlags& corpus_flags, PipelineFlags& flags, PipelineConfig& cfg)
{
    const auto paths = corpus_flags.resolve();
    Corpus corpus = load_corpus(paths, flags.explicit_classes());
    if (!flags.explicit_classes() && !corpus.classifier.empty()) {
        cfg.num_classes = corpus.classifier.begin()->second.arity();
        cfg = validate_config(cfg);
    }
    return corpus;
}

void print_summary(const std::string& what, const EvaluationReport& report)
{
    std::cerr << what << ": " << report.videos.size() << " videos, Levenshtein accuracy ";
    if (report.mean_accuracy) {
        std::cerr << *report.mean_accuracy << "%";
    } else {
        std::cerr << "n/a";
    }
    std::cerr << ", events early/late " << report.early_events << "/" << report.late_events << ", correct "
              << report.correct << ", duplicates " << report.duplicates << ", misses " << report.misses << "\n";
    if (report.early) {
        std::cerr << "  early detection: mean " << report.early->mean << " frames, median " << report.early->median
                  << " frames over " << report.early->count << " correct matches\n";
    }
    for (const auto& v : report.negative_accuracy_videos) {
        std::cerr << "  warning: negative accuracy on " << v << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Streaming single-time gesture activation over detector/classifier score streams"};
    app.require_subcommand(1);

    // gen
    SynthConfig synth;
    std::string gen_out, gen_config;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic score corpus with annotations");
    gen->add_option("--config", gen_config, "Flat key = value config file (e.g. a previous manifest.ini)");
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
    gen->add_option("--videos,--num_videos", synth.num_videos, "Number of videos")->capture_default_str();
    gen->add_option("--gestures,--gestures_per_video", synth.gestures_per_video, "Gestures per video")
        ->capture_default_str();
    gen->add_option("--classes,--num_classes", synth.num_classes, "Classifier classes C")->capture_default_str();
    gen->add_option("--duration_mean", synth.duration_mean, "Mean gesture duration (frames)")->capture_default_str();
    gen->add_option("--duration_spread", synth.duration_spread, "Gesture duration spread (frames)")
        ->capture_default_str();
    gen->add_option("--gap_mean", synth.gap_mean, "Mean gap between gestures (frames)")->capture_default_str();
    gen->add_option("--gap_spread", synth.gap_spread, "Gap spread (frames)")->capture_default_str();
    gen->add_option("--min_gap", synth.min_gap, "Minimum gap (frames)")->capture_default_str();
    gen->add_option("--prep_fraction", synth.prep_fraction, "Preparation share of a gesture")->capture_default_str();
    gen->add_option("--nucleus_fraction", synth.nucleus_fraction, "Nucleus share of a gesture")->capture_default_str();
    gen->add_option("--retract_fraction", synth.retract_fraction, "Retraction share of a gesture")
        ->capture_default_str();
    gen->add_option("--detector_base", synth.detector_base, "Detector gesture probability inside gestures")
        ->capture_default_str();
    gen->add_option("--noise", synth.noise, "Gaussian noise sigma")->capture_default_str();
    gen->add_option("--prep_ambiguity", synth.prep_ambiguity, "Confusable-class share during preparation")
        ->capture_default_str();
    gen->add_option("--prep_leak", synth.prep_leak, "Uniform mass during preparation")->capture_default_str();
    gen->add_option("--nucleus_peak", synth.nucleus_peak, "True-class probability in the nucleus")
        ->capture_default_str();
    gen->add_option("--detector_window", synth.detector_window, "Detector window n (edge ramp length)")
        ->capture_default_str();
    gen->add_option("--classifier_window", synth.classifier_window, "Classifier window m (warm-up length)")
        ->capture_default_str();
    gen->add_option("--max_video_frames", synth.max_video_frames, "Frame budget per video")->capture_default_str();

    // run
    PipelineFlags run_flags;
    CorpusFlags run_corpus_flags;
    std::string run_out, run_config;
    bool run_trace = false;
    auto* run = app.add_subcommand("run", "Run the pipeline over a corpus and evaluate it");
    run->add_option("--config", run_config, "Flat key = value config file");
    run->add_option("--out", run_out, "Output directory")->required();
    run->add_flag("--trace", run_trace, "Write one per-window trace file per video");
    run_corpus_flags.attach(*run);
    run_flags.attach(*run);

    // eval
    std::string eval_events, eval_annotations, eval_out;
    int eval_grace = 32;
    auto* eval = app.add_subcommand("eval", "Evaluate stored events against annotations");
    eval->add_option("--events", eval_events, "Events file")->required();
    eval->add_option("--annotations", eval_annotations, "Annotation file")->required();
    eval->add_option("--out", eval_out, "Output directory")->required();
    eval->add_option("--grace", eval_grace, "Frames after a gesture end still attributed to it")
        ->capture_default_str();

    // sweep
    PipelineFlags sweep_flags;
    CorpusFlags sweep_corpus_flags;
    std::string sweep_out, sweep_config;
    std::vector<double> taus;
    auto* sw = app.add_subcommand("sweep", "Run the pipeline once per tau_early value");
    sw->add_option("--config", sweep_config, "Flat key = value config file");
    sw->add_option("--out", sweep_out, "Output directory")->required();
    sw->add_option("--taus", taus, "tau_early values (default 0.2,0.3,...,1.0)")->delimiter(',');
    sweep_corpus_flags.attach(*sw);
    sweep_flags.attach(*sw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (gen->parsed()) {
            apply_config_file(*gen, gen_config);
            const SynthConfig cfg = validate_synth_config(synth);
            const auto out = prepare_out(gen_out);
            const Corpus corpus = generate_synthetic(cfg);
            write_corpus(out, corpus);
            write_file_atomic(out / "manifest.ini", format_config(cfg));
            std::size_t segments = 0;
            for (const auto& [video, segs] : corpus.annotations) segments += segs.size();
            std::cerr << "gen: " << corpus.classifier.size() << " videos, " << segments << " gestures -> " << out.string()
                      << "\n";
        } else if (run->parsed()) {
            apply_config_file(*run, run_config);
            PipelineConfig cfg = run_flags.resolve();
            const Corpus corpus = load_for_run(run_corpus_flags, run_flags, cfg);
            const auto out = prepare_out(run_out);
            const FrameIndex grace = run_flags.resolved_grace(cfg);

            RunOptions options;
            options.keep_trace = run_trace;
            const CorpusRun result = run_corpus(corpus, cfg, grace, options);

            ReportContext ctx;
            ctx.command = "run";
            ctx.config = cfg;
            ctx.videos = corpus.classifier.size();
            for (const auto& [video, trace] : result.traces) {
                ctx.windows += trace.windows;
                ctx.classifier_invocations += trace.classifier_invocations;
            }
            ctx.skipped_videos = result.skipped_videos;
            ctx.warnings = result.warnings;

            write_file_atomic(out / "events.jsonl", format_events(result.events));
            write_file_atomic(out / "results.jsonl", format_video_results(result.report));
            write_file_atomic(out / "report.json", format_report(result.report, ctx));
            if (run_trace) {
                const auto dir = prepare_out((out / "traces").string());
                for (const auto& [video, trace] : result.traces) {
                    write_file_atomic(dir / (video + ".csv"), format_trace(trace));
                }
            }
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            print_summary("run", result.report);
        } else if (eval->parsed()) {
            if (eval_grace < 0) throw ValidationError("--grace must be >= 0");
            for (const auto& p : {eval_events, eval_annotations}) {
                if (!fs::exists(p)) throw IoError("missing input file " + p);
            }
            const EventLog events = load_events(eval_events);
            const AnnotationSet annotations = load_annotations(eval_annotations);
            const auto out = prepare_out(eval_out);
            const EvaluationReport report = evaluate(events, annotations, eval_grace);

            ReportContext ctx;
            ctx.command = "eval";
            ctx.videos = annotations.size();
            for (const auto& v : report.unannotated_event_videos) {
                ctx.warnings.push_back(v + ": events without annotations; ignored");
            }
            write_file_atomic(out / "results.jsonl", format_video_results(report));
            write_file_atomic(out / "report.json", format_report(report, ctx));
            for (const auto& w : ctx.warnings) std::cerr << "warning: " << w << "\n";
            print_summary("eval", report);
        } else if (sw->parsed()) {
            apply_config_file(*sw, sweep_config);
            PipelineConfig cfg = sweep_flags.resolve();
            const Corpus corpus = load_for_run(sweep_corpus_flags, sweep_flags, cfg);
            const auto out = prepare_out(sweep_out);
            const FrameIndex grace = sweep_flags.resolved_grace(cfg);
            const auto rows = sweep(corpus, cfg, taus.empty() ? default_taus() : taus, grace);
            write_file_atomic(out / "sweep.csv", format_sweep(rows));
            write_file_atomic(out / "sweep_summary.json", format_sweep_summary(rows, cfg, grace));
            std::cerr << format_sweep(rows);
            if (rows.size() > 1 && rows.front().mean_early_frames && rows.back().mean_early_frames) {
                std::cerr << "tau_early " << rows.front().tau_early << " -> " << rows.back().tau_early
                          << ": mean early frames " << *rows.front().mean_early_frames << " -> "
                          << *rows.back().mean_early_frames << "\n";
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
