#pragma once

#include "gestream/scoring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gestream {

/// Parameters of the seeded phase-structured score generator.
///
/// Each video is a lead-in gap followed by alternating gestures and gaps. A gesture is
/// split into preparation, nucleus and retraction phases. During preparation the
/// classifier mass is shared between the true class and one confusable class
/// (prep_ambiguity is the confusable share); in the nucleus it concentrates on the true
/// class; during retraction it decays linearly toward uniform. The detector ramps
/// between 1 - detector_base and detector_base over one detector window at each edge.
struct SynthConfig {
    int num_videos = 10;
    int gestures_per_video = 8;
    int num_classes = 83;
    double duration_mean = 38.4;
    double duration_spread = 8.0;
    double gap_mean = 40.0;
    double gap_spread = 10.0;
    int min_gap = 24;
    double prep_fraction = 0.25;
    double nucleus_fraction = 0.5;
    double retract_fraction = 0.25;
    double detector_base = 0.9;
    double noise = 0.05;
    double prep_ambiguity = 0.3;
    double prep_leak = 0.1;
    double nucleus_peak = 0.85;
    int detector_window = 8;
    int classifier_window = 32;
    std::int64_t max_video_frames = 1'000'000;
    std::uint64_t seed = 42;
};

std::vector<std::string> synth_config_violations(const SynthConfig& cfg);
SynthConfig validate_synth_config(const SynthConfig& cfg);

/// Deterministic in cfg. Video ids are "v" plus a zero-padded ordinal.
Corpus generate_synthetic(const SynthConfig& cfg);

/// Frames per phase for a gesture of `duration` frames; each phase gets at least one frame.
struct PhaseLengths {
    int prep = 1;
    int nucleus = 1;
    int retract = 1;
};
PhaseLengths phase_lengths(int duration, const SynthConfig& cfg);

} // namespace gestream
