#include "gestream/config.hpp"

#include <cmath>
#include <sstream>

namespace gestream {

std::string_view to_string(FilterKind kind)
{
    switch (kind) {
    case FilterKind::Mean: return "mean";
    case FilterKind::Median: return "median";
    case FilterKind::Ewa: return "ewa";
    }
    return "?";
}

std::string_view to_string(Alignment alignment)
{
    return alignment == Alignment::Newest ? "newest" : "oldest";
}

FilterKind parse_filter_kind(std::string_view text)
{
    if (text == "mean") return FilterKind::Mean;
    if (text == "median") return FilterKind::Median;
    if (text == "ewa") return FilterKind::Ewa;
    throw ValidationError("unknown filter kind '" + std::string(text) + "' (expected mean, median or ewa)");
}

Alignment parse_alignment(std::string_view text)
{
    if (text == "newest") return Alignment::Newest;
    if (text == "oldest") return Alignment::Oldest;
    throw ValidationError("unknown alignment '" + std::string(text) + "' (expected newest or oldest)");
}

std::vector<std::string> config_violations(const PipelineConfig& cfg)
{
    std::vector<std::string> out;
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };

    if (cfg.detector_window < 1) out.emplace_back("detector_window must be >= 1");
    if (cfg.classifier_window < 1) out.emplace_back("classifier_window must be >= 1");
    if (cfg.detector_window > cfg.classifier_window) {
        out.emplace_back("n <= m violated: detector_window " + std::to_string(cfg.detector_window) +
                         " > classifier_window " + std::to_string(cfg.classifier_window));
    }
    if (cfg.stride < 1) out.emplace_back("stride must be >= 1");
    if (cfg.filter_size < 1) out.emplace_back("filter_size must be >= 1");
    if (cfg.deactivate_count < 1) out.emplace_back("deactivate_count must be >= 1");
    if (cfg.num_classes < 2) out.emplace_back("num_classes must be >= 2");
    if (!in_unit(cfg.gate_threshold)) out.emplace_back("gate_threshold must lie in [0, 1]");
    if (!in_unit(cfg.tau_late)) out.emplace_back("tau_late must lie in [0, 1]");
    if (!in_unit(cfg.tau_early)) out.emplace_back("tau_early must lie in [0, 1]");
    if (!(cfg.mean_duration > 0.0)) out.emplace_back("mean_duration must be > 0");
    if (!std::isfinite(cfg.sigmoid_slope)) out.emplace_back("sigmoid_slope must be finite");
    if (cfg.midpoint_override && *cfg.midpoint_override < 0) out.emplace_back("midpoint must be >= 0");
    return out;
}

PipelineConfig validate_config(const PipelineConfig& cfg)
{
    const auto violations = config_violations(cfg);
    if (violations.empty()) {
        return cfg;
    }
    std::ostringstream msg;
    msg << "invalid pipeline config:";
    for (const auto& v : violations) {
        msg << "\n  - " << v;
    }
    throw ValidationError(msg.str());
}

} // namespace gestream
