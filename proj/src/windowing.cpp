#include "gestream/windowing.hpp"

#include <algorithm>
#include <string>

namespace gestream {

WindowPair window_bounds(FrameIndex t, const PipelineConfig& cfg)
{
    const FrameIndex n = cfg.detector_window;
    const FrameIndex m = cfg.classifier_window;
    if (t < m - 1) {
        throw WarmupError("window ending at " + std::to_string(t) + " precedes the first full classifier window (" +
                          std::to_string(m - 1) + ")");
    }
    WindowPair w;
    w.end = t;
    w.classifier = {t - m + 1, t};
    if (cfg.alignment == Alignment::Newest) {
        w.detector = {t - n + 1, t};
    } else {
        w.detector = {t - m + 1, t - m + n};
    }
    return w;
}

WindowSchedule::WindowSchedule(FrameIndex length, const PipelineConfig& cfg)
    : cfg_(cfg), first_end_(cfg.classifier_window - 1), stride_(cfg.stride)
{
    if (stride_ < 1) {
        throw ValidationError("stride must be >= 1");
    }
    if (length >= cfg.classifier_window) {
        count_ = static_cast<std::size_t>((length - cfg.classifier_window) / stride_ + 1);
    }
}

std::vector<WindowPair> advance(const StreamCursor& cursor, const PipelineConfig& cfg)
{
    if (cursor.stride < 1) {
        throw ValidationError("stride must be >= 1");
    }
    std::vector<WindowPair> out;
    const FrameIndex first = cfg.classifier_window - 1;
    FrameIndex t = cursor.end;
    if (t < first) {
        // Snap onto the schedule grid that starts at the first full window.
        t = first;
    }
    for (; t <= cursor.length - 1; t += cursor.stride) {
        out.push_back(window_bounds(t, cfg));
    }
    return out;
}

} // namespace gestream
