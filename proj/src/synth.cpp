#include "gestream/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gestream {

std::vector<std::string> synth_config_violations(const SynthConfig& cfg)
{
    std::vector<std::string> out;
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };

    if (cfg.num_videos < 1) out.emplace_back("num_videos must be >= 1");
    if (cfg.gestures_per_video < 0) out.emplace_back("gestures_per_video must be >= 0");
    if (cfg.num_classes < 2) out.emplace_back("num_classes must be >= 2");
    if (!(cfg.duration_mean > 0.0)) out.emplace_back("duration_mean must be > 0");
    if (!(cfg.duration_spread >= 0.0)) out.emplace_back("duration_spread must be >= 0");
    if (!(cfg.gap_mean >= 0.0)) out.emplace_back("gap_mean must be >= 0");
    if (!(cfg.gap_spread >= 0.0)) out.emplace_back("gap_spread must be >= 0");
    if (cfg.min_gap < 0) out.emplace_back("min_gap must be >= 0");
    if (!(cfg.prep_fraction > 0.0 && cfg.nucleus_fraction > 0.0 && cfg.retract_fraction > 0.0)) {
        out.emplace_back("phase fractions must be > 0");
    }
    if (std::abs(cfg.prep_fraction + cfg.nucleus_fraction + cfg.retract_fraction - 1.0) > 1e-9) {
        out.emplace_back("phase fractions must sum to 1");
    }
    if (!in_unit(cfg.detector_base)) out.emplace_back("detector_base must lie in [0, 1]");
    if (!(cfg.noise >= 0.0)) out.emplace_back("noise must be >= 0");
    if (!in_unit(cfg.prep_ambiguity)) out.emplace_back("prep_ambiguity must lie in [0, 1]");
    if (!in_unit(cfg.prep_leak)) out.emplace_back("prep_leak must lie in [0, 1]");
    if (!in_unit(cfg.nucleus_peak)) out.emplace_back("nucleus_peak must lie in [0, 1]");
    if (cfg.detector_window < 1) out.emplace_back("detector_window must be >= 1");
    if (cfg.detector_window > cfg.classifier_window) out.emplace_back("detector_window must be <= classifier_window");
    if (cfg.max_video_frames < 1) out.emplace_back("max_video_frames must be >= 1");
    return out;
}

SynthConfig validate_synth_config(const SynthConfig& cfg)
{
    const auto violations = synth_config_violations(cfg);
    if (violations.empty()) {
        return cfg;
    }
    std::ostringstream msg;
    msg << "invalid synthetic config:";
    for (const auto& v : violations) msg << "\n  - " << v;
    throw ValidationError(msg.str());
}

PhaseLengths phase_lengths(int duration, const SynthConfig& cfg)
{
    if (duration < 3) {
        throw ValidationError("gesture duration must be >= 3 frames");
    }
    PhaseLengths p;
    p.prep = std::max(1, static_cast<int>(std::lround(cfg.prep_fraction * duration)));
    p.nucleus = std::max(1, static_cast<int>(std::lround(cfg.nucleus_fraction * duration)));
    // Keep at least one frame of retraction; take it from the larger of the other two phases.
    while (p.prep + p.nucleus > duration - 1) {
        (p.nucleus >= p.prep ? p.nucleus : p.prep) -= 1;
    }
    p.retract = duration - p.prep - p.nucleus;
    return p;
}

namespace {

struct PlannedGesture {
    FrameIndex start = 0;
    FrameIndex end = 0;
    int label = 0;
    int confusable = 0;
};

struct VideoPlan {
    FrameIndex length = 0;
    std::vector<PlannedGesture> gestures;
};

constexpr int kMaxPlanAttempts = 100;

VideoPlan plan_video(const SynthConfig& cfg, std::mt19937_64& rng)
{
    std::normal_distribution<double> duration_draw(cfg.duration_mean, cfg.duration_spread);
    std::normal_distribution<double> gap_draw(cfg.gap_mean, cfg.gap_spread);
    std::uniform_int_distribution<int> label_draw(0, cfg.num_classes - 1);
    std::uniform_int_distribution<int> other_draw(0, cfg.num_classes - 2);

    // Symmetric truncation keeps the duration mean at duration_mean.
    const double lo = std::max(3.0, cfg.duration_mean - 2.0 * cfg.duration_spread);
    const double hi = std::max(lo, cfg.duration_mean + 2.0 * cfg.duration_spread);
    const auto draw_duration = [&] {
        const double d = cfg.duration_spread > 0.0 ? duration_draw(rng) : cfg.duration_mean;
        return static_cast<FrameIndex>(std::lround(std::clamp(d, lo, hi)));
    };
    const auto draw_gap = [&] {
        const double g = cfg.gap_spread > 0.0 ? gap_draw(rng) : cfg.gap_mean;
        return std::max<FrameIndex>(cfg.min_gap, std::lround(std::max(0.0, g)));
    };

    for (int attempt = 0; attempt < kMaxPlanAttempts; ++attempt) {
        VideoPlan plan;
        // The lead-in covers the classifier warm-up so the first gesture is observable.
        FrameIndex cursor = cfg.classifier_window + draw_gap();
        for (int g = 0; g < cfg.gestures_per_video; ++g) {
            PlannedGesture pg;
            pg.start = cursor;
            pg.end = cursor + draw_duration() - 1;
            pg.label = label_draw(rng);
            const int other = other_draw(rng);
            pg.confusable = other >= pg.label ? other + 1 : other;
            plan.gestures.push_back(pg);
            cursor = pg.end + 1 + draw_gap();
        }
        plan.length = cursor;
        if (plan.length <= cfg.max_video_frames) {
            return plan;
        }
    }
    throw ValidationError("synthetic timing infeasible: videos exceed max_video_frames = " +
                          std::to_string(cfg.max_video_frames) + " after " + std::to_string(kMaxPlanAttempts) +
                          " attempts");
}

/// Noise-free classifier scores at frame t given the gesture containing it (if any).
Vector classifier_shape(const SynthConfig& cfg, const PlannedGesture* g, FrameIndex t)
{
    const int c = cfg.num_classes;
    const Vector uniform = Vector::Constant(c, 1.0 / c);
    if (g == nullptr) {
        return uniform;
    }
    const auto phases = phase_lengths(static_cast<int>(g->end - g->start + 1), cfg);
    const FrameIndex offset = t - g->start;

    Vector nucleus = Vector::Constant(c, (1.0 - cfg.nucleus_peak) / (c - 1));
    nucleus(g->label) = cfg.nucleus_peak;

    if (offset < phases.prep) {
        Vector v = Vector::Constant(c, cfg.prep_leak / c);
        v(g->label) += (1.0 - cfg.prep_leak) * (1.0 - cfg.prep_ambiguity);
        v(g->confusable) += (1.0 - cfg.prep_leak) * cfg.prep_ambiguity;
        return v;
    }
    if (offset < phases.prep + phases.nucleus) {
        return nucleus;
    }
    const double into = static_cast<double>(offset - phases.prep - phases.nucleus + 1) / (phases.retract + 1);
    return (1.0 - into) * nucleus + into * uniform;
}

ProbVector add_noise(Vector v, double sigma, std::mt19937_64& rng)
{
    if (sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = std::clamp(v(i) + noise(rng), 0.0, 1.0);
        }
        if (!(v.sum() > 0.0)) {
            v.setConstant(1.0);
        }
    }
    return ProbVector::from_weights(v);
}

std::string video_name(int ordinal, int count)
{
    const int width = std::max<int>(3, static_cast<int>(std::to_string(count - 1).size()));
    std::string digits = std::to_string(ordinal);
    return "v" + std::string(static_cast<std::size_t>(width) - std::min<std::size_t>(width, digits.size()), '0') +
           digits;
}

} // namespace

Corpus generate_synthetic(const SynthConfig& raw_cfg)
{
    const SynthConfig cfg = validate_synth_config(raw_cfg);
    Corpus corpus;
    const FrameIndex n = cfg.detector_window;
    const double background = 1.0 - cfg.detector_base;

    for (int ordinal = 0; ordinal < cfg.num_videos; ++ordinal) {
        std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(ordinal));
        const std::string id = video_name(ordinal, cfg.num_videos);
        const VideoPlan plan = plan_video(cfg, rng);

        auto& segments = corpus.annotations[id];
        for (const auto& g : plan.gestures) {
            segments.push_back({id, GestureLabel{g.label}, g.start, g.end});
        }

        ScoreStream detector(id, 2);
        ScoreStream classifier(id, cfg.num_classes);
        std::normal_distribution<double> det_noise(0.0, cfg.noise > 0.0 ? cfg.noise : 1.0);

        std::size_t current = 0;  // first gesture that has not ended before t
        for (FrameIndex t = n - 1; t < plan.length; ++t) {
            while (current < plan.gestures.size() && plan.gestures[current].end < t - n + 1) {
                ++current;
            }
            FrameIndex overlap = 0;
            for (std::size_t g = current; g < plan.gestures.size() && plan.gestures[g].start <= t; ++g) {
                overlap += std::min(t, plan.gestures[g].end) - std::max(t - n + 1, plan.gestures[g].start) + 1;
            }
            double p = std::lerp(background, cfg.detector_base, static_cast<double>(overlap) / static_cast<double>(n));
            if (cfg.noise > 0.0) {
                p = std::clamp(p + det_noise(rng), 0.0, 1.0);
            }
            Vector dv(2);
            dv << 1.0 - p, p;
            detector.insert(t, ProbVector::ingest(std::move(dv)));

            if (t >= cfg.classifier_window - 1) {
                const PlannedGesture* inside = nullptr;
                for (std::size_t g = current; g < plan.gestures.size() && plan.gestures[g].start <= t; ++g) {
                    if (plan.gestures[g].end >= t) inside = &plan.gestures[g];
                }
                classifier.insert(t, add_noise(classifier_shape(cfg, inside, t), cfg.noise, rng));
            }
        }
        corpus.detector.emplace(id, std::move(detector));
        corpus.classifier.emplace(id, std::move(classifier));
    }
    return corpus;
}

} // namespace gestream
