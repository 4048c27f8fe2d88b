#pragma once

#include "gestream/activation.hpp"
#include "gestream/scoring.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gestream {

/// Unit-cost edit distance (insert, delete, substitute). Two rolling rows sized by the shorter input.
template <class T>
std::size_t levenshtein_distance(std::span<const T> a, std::span<const T> b)
{
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

template <class T>
std::size_t levenshtein_distance(const std::vector<T>& a, const std::vector<T>& b)
{
    return levenshtein_distance(std::span<const T>(a), std::span<const T>(b));
}

/// (1 - distance / len(gt)) * 100, unclamped. Throws ValidationError on empty gt.
double levenshtein_accuracy(std::span<const int> gt, std::span<const int> pred);
inline double levenshtein_accuracy(const std::vector<int>& gt, const std::vector<int>& pred)
{
    return levenshtein_accuracy(std::span<const int>(gt), std::span<const int>(pred));
}

enum class MatchStatus { Correct, WrongLabel, Duplicate, Unmatched };
const char* to_string(MatchStatus status);

struct Match {
    std::size_t event = 0;
    std::optional<std::size_t> segment;
    MatchStatus status = MatchStatus::Unmatched;
};

struct MatchResult {
    std::vector<Match> matches;                // one per event, in event order
    std::vector<std::size_t> missed_segments;  // segments no event was attributed to
    std::size_t correct = 0;
    std::size_t wrong_label = 0;
    std::size_t duplicates = 0;
    std::size_t unmatched = 0;
};

/// Attributes each event to the segment whose span [start, end + grace] holds its emit frame,
/// preferring the latest-starting one. Only the first event on a segment can be correct.
MatchResult match_activations(std::span<const ActivationEvent> events, std::span<const GroundTruthSegment> segments,
                              FrameIndex grace);

struct EarlyStats {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
};

/// segment.end - emit_frame over correct matches. Empty when there are none.
std::vector<double> early_frames(const MatchResult& matches, std::span<const ActivationEvent> events,
                                 std::span<const GroundTruthSegment> segments);
std::optional<EarlyStats> early_detection_stats(std::span<const double> early);
std::optional<EarlyStats> early_detection_stats(const MatchResult& matches, std::span<const ActivationEvent> events,
                                                std::span<const GroundTruthSegment> segments);

struct VideoResult {
    std::string video_id;
    std::vector<int> gt_labels;
    std::vector<int> pred_labels;
    std::size_t distance = 0;
    std::optional<double> accuracy;  // absent when gt is empty
    std::size_t early_events = 0;
    std::size_t late_events = 0;
    std::size_t correct = 0;
    std::size_t wrong_label = 0;
    std::size_t duplicates = 0;
    std::size_t unmatched = 0;
    std::size_t misses = 0;
    std::vector<double> early_frames;
};

/// Scores one video's events (any order; sorted by emit frame here) against its segments.
VideoResult evaluate_video(const std::string& video_id, std::vector<ActivationEvent> events,
                           std::span<const GroundTruthSegment> segments, FrameIndex grace);

struct EvaluationReport {
    std::vector<VideoResult> videos;  // sorted by video id
    std::optional<double> mean_accuracy;  // over videos with non-empty gt
    std::size_t scored_videos = 0;
    std::vector<std::string> empty_gt_videos;
    std::vector<std::string> negative_accuracy_videos;
    std::vector<std::string> unannotated_event_videos;  // events present, no annotations
    std::size_t early_events = 0;
    std::size_t late_events = 0;
    std::size_t correct = 0;
    std::size_t wrong_label = 0;
    std::size_t duplicates = 0;
    std::size_t unmatched = 0;
    std::size_t misses = 0;
    std::optional<EarlyStats> early;
    FrameIndex grace = 0;
};

using EventLog = std::map<std::string, std::vector<ActivationEvent>>;

/// Evaluates every annotated video; videos without events count as empty predictions.
EvaluationReport evaluate(const EventLog& events, const AnnotationSet& annotations, FrameIndex grace);

struct SweepRow {
    double tau_early = 0.0;
    std::optional<double> levenshtein_accuracy;
    std::optional<double> mean_early_frames;
    std::optional<double> median_early_frames;
    std::size_t matched = 0;
    std::size_t duplicates = 0;
    std::size_t misses = 0;
};

/// 0.2, 0.3, ..., 1.0
std::vector<double> default_taus();

SweepRow sweep_row(double tau_early, const EvaluationReport& report);

} // namespace gestream
