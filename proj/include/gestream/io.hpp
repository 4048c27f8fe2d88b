#pragma once

#include "gestream/evaluation.hpp"
#include "gestream/scoring.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace gestream {

struct LoadedStreams {
    StreamSet streams;
    std::size_t entries = 0;
    int arity = 0;
};

/// Reads a line-delimited score file: one {"video", "t", "p"} record per line.
/// Without expected_arity, the first record fixes it.
LoadedStreams load_score_streams(const std::filesystem::path& path, std::optional<int> expected_arity);
std::string format_score_streams(const StreamSet& streams);

/// Reads {"video", "class", "start", "end"} records; segments come back sorted per video.
AnnotationSet load_annotations(const std::filesystem::path& path);
std::string format_annotations(const AnnotationSet& annotations);

/// Reads {"video", "class", "frame", "kind", "score"} records.
EventLog load_events(const std::filesystem::path& path);
std::string format_events(const EventLog& events);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Detector, classifier and annotation files under one directory.
struct CorpusPaths {
    std::filesystem::path detector;
    std::filesystem::path classifier;
    std::filesystem::path annotations;

    static CorpusPaths in_directory(const std::filesystem::path& dir);
};

Corpus load_corpus(const CorpusPaths& paths, std::optional<int> num_classes);
void write_corpus(const std::filesystem::path& dir, const Corpus& corpus);

} // namespace gestream
