#pragma once

#include "gestream/config.hpp"
#include "gestream/types.hpp"

#include <cstddef>
#include <iterator>
#include <vector>

namespace gestream {

/// Inclusive frame range.
struct Span {
    FrameIndex lo = 0;
    FrameIndex hi = 0;

    FrameIndex length() const noexcept { return hi - lo + 1; }
    bool contains(FrameIndex t) const noexcept { return lo <= t && t <= hi; }
    bool contains(const Span& other) const noexcept { return lo <= other.lo && other.hi <= hi; }

    friend bool operator==(const Span&, const Span&) = default;
};

/// Detector and classifier spans for the window ending at frame `end`.
struct WindowPair {
    FrameIndex end = 0;
    Span detector;
    Span classifier;

    friend bool operator==(const WindowPair&, const WindowPair&) = default;
};

/// Thrown by window_bounds when the classifier window is not yet full.
class WarmupError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

WindowPair window_bounds(FrameIndex t, const PipelineConfig& cfg);

/// Position in a stream of `length` frames, stepping by `stride`.
struct StreamCursor {
    FrameIndex end = 0;
    FrameIndex stride = 1;
    FrameIndex length = 0;
};

/// The window schedule of one stream: end frames m-1, m-1+s, ... <= L-1.
///
/// Lazy random-access view; iterating yields WindowPair values.
class WindowSchedule {
public:
    WindowSchedule(FrameIndex length, const PipelineConfig& cfg);

    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    /// True when the stream is shorter than one classifier window.
    bool warmup_only() const noexcept { return count_ == 0; }
    FrameIndex end_frame(std::size_t i) const noexcept { return first_end_ + static_cast<FrameIndex>(i) * stride_; }
    WindowPair operator[](std::size_t i) const { return window_bounds(end_frame(i), cfg_); }

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = WindowPair;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const WindowSchedule* owner, std::size_t i) : owner_(owner), i_(i) {}
        WindowPair operator*() const { return (*owner_)[i_]; }
        iterator& operator++() { ++i_; return *this; }
        iterator operator++(int) { auto tmp = *this; ++i_; return tmp; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

    private:
        const WindowSchedule* owner_ = nullptr;
        std::size_t i_ = 0;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, count_}; }

private:
    PipelineConfig cfg_;
    FrameIndex first_end_ = 0;
    FrameIndex stride_ = 1;
    std::size_t count_ = 0;
};

/// All windows from the cursor position (clamped to the first full window) to the stream end.
std::vector<WindowPair> advance(const StreamCursor& cursor, const PipelineConfig& cfg);

} // namespace gestream
