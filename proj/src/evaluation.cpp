#include "gestream/evaluation.hpp"

#include <iterator>
#include <numeric>
#include <set>

namespace gestream {

double levenshtein_accuracy(std::span<const int> gt, std::span<const int> pred)
{
    if (gt.empty()) {
        throw ValidationError("levenshtein_accuracy: empty ground truth");
    }
    const auto d = levenshtein_distance(gt, pred);
    return (1.0 - static_cast<double>(d) / static_cast<double>(gt.size())) * 100.0;
}

const char* to_string(MatchStatus status)
{
    switch (status) {
    case MatchStatus::Correct: return "correct";
    case MatchStatus::WrongLabel: return "wrong_label";
    case MatchStatus::Duplicate: return "duplicate";
    case MatchStatus::Unmatched: return "unmatched";
    }
    return "?";
}

MatchResult match_activations(std::span<const ActivationEvent> events, std::span<const GroundTruthSegment> segments,
                              FrameIndex grace)
{
    MatchResult out;
    std::vector<bool> claimed(segments.size(), false);
    out.matches.reserve(events.size());

    for (std::size_t e = 0; e < events.size(); ++e) {
        const FrameIndex f = events[e].emit_frame;
        // Latest segment starting at or before f. Any earlier segment ends before this one starts,
        // so its extended span cannot reach f when this one's does not.
        auto it = std::upper_bound(segments.begin(), segments.end(), f,
                                   [](FrameIndex frame, const GroundTruthSegment& s) { return frame < s.start; });
        std::optional<std::size_t> hit;
        if (it != segments.begin() && f <= std::prev(it)->end + grace) {
            hit = static_cast<std::size_t>(std::prev(it) - segments.begin());
        }

        Match m{e, hit, MatchStatus::Unmatched};
        if (!hit) {
            ++out.unmatched;
        } else if (claimed[*hit]) {
            m.status = MatchStatus::Duplicate;
            ++out.duplicates;
        } else {
            claimed[*hit] = true;
            if (events[e].label == segments[*hit].label) {
                m.status = MatchStatus::Correct;
                ++out.correct;
            } else {
                m.status = MatchStatus::WrongLabel;
                ++out.wrong_label;
            }
        }
        out.matches.push_back(m);
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!claimed[s]) out.missed_segments.push_back(s);
    }
    return out;
}

std::vector<double> early_frames(const MatchResult& matches, std::span<const ActivationEvent> events,
                                 std::span<const GroundTruthSegment> segments)
{
    std::vector<double> out;
    for (const auto& m : matches.matches) {
        if (m.status == MatchStatus::Correct) {
            out.push_back(static_cast<double>(segments[*m.segment].end - events[m.event].emit_frame));
        }
    }
    return out;
}

std::optional<EarlyStats> early_detection_stats(std::span<const double> early)
{
    if (early.empty()) {
        return std::nullopt;
    }
    std::vector<double> sorted(early.begin(), early.end());
    std::sort(sorted.begin(), sorted.end());
    EarlyStats s;
    s.count = sorted.size();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    const std::size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

std::optional<EarlyStats> early_detection_stats(const MatchResult& matches, std::span<const ActivationEvent> events,
                                                std::span<const GroundTruthSegment> segments)
{
    const auto early = early_frames(matches, events, segments);
    return early_detection_stats(std::span<const double>(early));
}

VideoResult evaluate_video(const std::string& video_id, std::vector<ActivationEvent> events,
                           std::span<const GroundTruthSegment> segments, FrameIndex grace)
{
    std::stable_sort(events.begin(), events.end(),
                     [](const auto& a, const auto& b) { return a.emit_frame < b.emit_frame; });

    VideoResult r;
    r.video_id = video_id;
    for (const auto& s : segments) r.gt_labels.push_back(s.label.class_id);
    for (const auto& e : events) {
        r.pred_labels.push_back(e.label.class_id);
        (e.kind == EventKind::Early ? r.early_events : r.late_events) += 1;
    }
    r.distance = levenshtein_distance(r.gt_labels, r.pred_labels);
    if (!r.gt_labels.empty()) {
        r.accuracy = levenshtein_accuracy(r.gt_labels, r.pred_labels);
    }

    const auto matches = match_activations(events, segments, grace);
    r.correct = matches.correct;
    r.wrong_label = matches.wrong_label;
    r.duplicates = matches.duplicates;
    r.unmatched = matches.unmatched;
    r.misses = matches.missed_segments.size();
    r.early_frames = early_frames(matches, events, segments);
    return r;
}

EvaluationReport evaluate(const EventLog& events, const AnnotationSet& annotations, FrameIndex grace)
{
    EvaluationReport report;
    report.grace = grace;
    std::vector<double> all_early;
    double accuracy_sum = 0.0;

    for (const auto& [video, segments] : annotations) {
        const auto found = events.find(video);
        auto video_events = found == events.end() ? std::vector<ActivationEvent>{} : found->second;
        auto r = evaluate_video(video, std::move(video_events), segments, grace);

        if (r.accuracy) {
            accuracy_sum += *r.accuracy;
            ++report.scored_videos;
            if (*r.accuracy < 0.0) report.negative_accuracy_videos.push_back(video);
        } else {
            report.empty_gt_videos.push_back(video);
        }
        report.early_events += r.early_events;
        report.late_events += r.late_events;
        report.correct += r.correct;
        report.wrong_label += r.wrong_label;
        report.duplicates += r.duplicates;
        report.unmatched += r.unmatched;
        report.misses += r.misses;
        all_early.insert(all_early.end(), r.early_frames.begin(), r.early_frames.end());
        report.videos.push_back(std::move(r));
    }
    for (const auto& [video, evs] : events) {
        if (!annotations.contains(video) && !evs.empty()) report.unannotated_event_videos.push_back(video);
    }
    if (report.scored_videos > 0) {
        report.mean_accuracy = accuracy_sum / static_cast<double>(report.scored_videos);
    }
    report.early = early_detection_stats(std::span<const double>(all_early));
    return report;
}

std::vector<double> default_taus()
{
    std::vector<double> out;
    for (int i = 2; i <= 10; ++i) out.push_back(i / 10.0);
    return out;
}

SweepRow sweep_row(double tau_early, const EvaluationReport& report)
{
    SweepRow row;
    row.tau_early = tau_early;
    row.levenshtein_accuracy = report.mean_accuracy;
    if (report.early) {
        row.mean_early_frames = report.early->mean;
        row.median_early_frames = report.early->median;
    }
    row.matched = report.correct;
    row.duplicates = report.duplicates;
    row.misses = report.misses;
    return row;
}

} // namespace gestream
