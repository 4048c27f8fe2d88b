#pragma once

#include "gestream/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gestream {

enum class FilterKind { Mean, Median, Ewa };
enum class Alignment { Newest, Oldest };

std::string_view to_string(FilterKind kind);
std::string_view to_string(Alignment alignment);
FilterKind parse_filter_kind(std::string_view text);
Alignment parse_alignment(std::string_view text);

/// Every tunable of one pipeline run. Defaults are the reference operating point.
struct PipelineConfig {
    int detector_window = 8;      // n
    int classifier_window = 32;   // m
    int stride = 1;               // s
    int num_classes = 83;         // C
    FilterKind filter_kind = FilterKind::Median;
    int filter_size = 4;          // k
    double gate_threshold = 0.5;  // detector switch-on threshold
    int deactivate_count = 4;     // consecutive sub-threshold windows before switching off
    double tau_early = 0.4;
    double tau_late = 0.15;
    double mean_duration = 38.4;  // frames
    double sigmoid_slope = 0.2;
    Alignment alignment = Alignment::Newest;
    /// Replaces the midpoint derived from mean_duration and stride when set.
    std::optional<int> midpoint_override;
};

/// Human-readable description of every violated invariant; empty when valid.
std::vector<std::string> config_violations(const PipelineConfig& cfg);

/// Returns cfg unchanged, or throws ValidationError listing all violations.
PipelineConfig validate_config(const PipelineConfig& cfg);

} // namespace gestream
