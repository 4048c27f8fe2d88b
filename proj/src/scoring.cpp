#include "gestream/scoring.hpp"

#include <algorithm>

namespace gestream {

ScoreStream::ScoreStream(std::string video_id, int arity) : video_id_(std::move(video_id)), arity_(arity)
{
    if (arity_ < 2) {
        throw ValidationError("score stream arity must be >= 2, got " + std::to_string(arity_));
    }
}

void ScoreStream::insert(FrameIndex t, const ProbVector& p)
{
    if (t < 0) {
        throw ValidationError("negative frame index " + std::to_string(t) + " for " + video_id_);
    }
    if (p.size() != arity_) {
        throw ValidationError("arity mismatch for " + video_id_ + "@" + std::to_string(t) + ": expected " +
                              std::to_string(arity_) + ", got " + std::to_string(p.size()));
    }
    const auto idx = static_cast<std::size_t>(t);
    if (idx >= present_.size()) {
        present_.resize(idx + 1, 0);
        data_.resize((idx + 1) * static_cast<std::size_t>(arity_), 0.0);
    }
    if (present_[idx] != 0) {
        throw ValidationError("duplicate score for " + video_id_ + "@" + std::to_string(t));
    }
    present_[idx] = 1;
    Eigen::Map<Vector>(data_.data() + idx * static_cast<std::size_t>(arity_), arity_) = p.values();
    ++entries_;
}

Eigen::Map<const Vector> ScoreStream::score(FrameIndex t) const
{
    if (!contains(t)) {
        throw ValidationError("no score for " + video_id_ + "@" + std::to_string(t));
    }
    return Eigen::Map<const Vector>(data_.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(arity_),
                                    arity_);
}

std::vector<FrameIndex> ScoreStream::keys() const
{
    std::vector<FrameIndex> out;
    out.reserve(entries_);
    for (std::size_t i = 0; i < present_.size(); ++i) {
        if (present_[i] != 0) out.push_back(static_cast<FrameIndex>(i));
    }
    return out;
}

void check_annotations(AnnotationSet& annotations)
{
    for (auto& [video, segments] : annotations) {
        std::stable_sort(segments.begin(), segments.end(),
                         [](const auto& a, const auto& b) { return a.start < b.start; });
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const auto& seg = segments[i];
            if (seg.start < 0 || seg.start > seg.end) {
                throw ValidationError("invalid segment [" + std::to_string(seg.start) + ", " +
                                      std::to_string(seg.end) + "] in " + video);
            }
            if (i > 0 && segments[i - 1].end >= seg.start) {
                throw ValidationError("overlapping segments in " + video + " at frame " + std::to_string(seg.start));
            }
        }
    }
}

} // namespace gestream
