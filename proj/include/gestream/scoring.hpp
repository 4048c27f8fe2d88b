#pragma once

#include "gestream/prob.hpp"
#include "gestream/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace gestream {

/// Per-window probability vectors of one video, keyed by window end frame.
///
/// Storage is dense from frame 0 to the largest inserted key; lookups are O(1).
/// Both file-backed and synthetic scores materialize into this type.
class ScoreStream {
public:
    ScoreStream() = default;
    ScoreStream(std::string video_id, int arity);

    const std::string& video_id() const noexcept { return video_id_; }
    int arity() const noexcept { return arity_; }
    std::size_t entry_count() const noexcept { return entries_; }
    /// One past the largest key, or 0 when empty.
    FrameIndex frame_extent() const noexcept { return static_cast<FrameIndex>(present_.size()); }

    bool contains(FrameIndex t) const noexcept
    {
        return t >= 0 && t < frame_extent() && present_[static_cast<std::size_t>(t)] != 0;
    }

    /// Throws ValidationError on arity mismatch or an existing key.
    void insert(FrameIndex t, const ProbVector& p);

    /// The stored vector for window end t. Throws ValidationError "no score for <video>@<t>".
    Eigen::Map<const Vector> score(FrameIndex t) const;

    /// Ascending keys.
    std::vector<FrameIndex> keys() const;

private:
    std::string video_id_;
    int arity_ = 0;
    std::size_t entries_ = 0;
    std::vector<double> data_;          // column-major, arity_ values per frame
    std::vector<unsigned char> present_;
};

/// Streams of one model, keyed by video id.
using StreamSet = std::map<std::string, ScoreStream>;

/// Free-function form of ScoreStream::score.
inline Eigen::Map<const Vector> score(const ScoreStream& stream, FrameIndex t) { return stream.score(t); }

/// Annotated gesture span, end inclusive.
struct GroundTruthSegment {
    std::string video_id;
    GestureLabel label;
    FrameIndex start = 0;
    FrameIndex end = 0;

    FrameIndex duration() const noexcept { return end - start + 1; }
    friend bool operator==(const GroundTruthSegment&, const GroundTruthSegment&) = default;
};

using AnnotationSet = std::map<std::string, std::vector<GroundTruthSegment>>;

/// Sorts each video's segments by start and rejects inverted or overlapping spans.
void check_annotations(AnnotationSet& annotations);

/// Detector scores, classifier scores and annotations of a set of videos.
struct Corpus {
    StreamSet detector;
    StreamSet classifier;
    AnnotationSet annotations;
};

} // namespace gestream
