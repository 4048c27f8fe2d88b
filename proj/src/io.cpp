#include "gestream/io.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace gestream {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string located(const fs::path& path, std::size_t line, const std::string& what)
{
    return path.string() + ":" + std::to_string(line) + ": " + what;
}

/// Calls fn(record, line_number) for every non-blank line.
void for_each_record(const fs::path& path, const std::function<void(const nlohmann::json&, std::size_t)>& fn)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(located(path, number, std::string("malformed record: ") + e.what()));
        }
        if (!record.is_object()) {
            throw ValidationError(located(path, number, "record is not an object"));
        }
        try {
            fn(record, number);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(located(path, number, std::string("bad field: ") + e.what()));
        } catch (const ValidationError& e) {
            throw ValidationError(located(path, number, e.what()));
        }
    }
    if (in.bad()) {
        throw IoError("read error on " + path.string());
    }
}

template <class T>
T required(const nlohmann::json& record, const char* key)
{
    const auto it = record.find(key);
    if (it == record.end()) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    return it->get<T>();
}

FrameIndex required_frame(const nlohmann::json& record, const char* key)
{
    const auto it = record.find(key);
    if (it == record.end()) {
        throw ValidationError(std::string("missing field '") + key + "'");
    }
    if (!it->is_number_integer()) {
        throw ValidationError(std::string("field '") + key + "' must be an integer");
    }
    return it->get<FrameIndex>();
}

} // namespace

LoadedStreams load_score_streams(const fs::path& path, std::optional<int> expected_arity)
{
    LoadedStreams out;
    for_each_record(path, [&](const nlohmann::json& record, std::size_t) {
        const auto video = required<std::string>(record, "video");
        const FrameIndex t = required_frame(record, "t");
        const auto& p = record.at("p");
        if (!p.is_array()) {
            throw ValidationError("field 'p' must be an array");
        }
        const int arity = static_cast<int>(p.size());
        if (!expected_arity) {
            expected_arity = arity;
        }
        if (arity != *expected_arity) {
            throw ValidationError("arity mismatch: expected " + std::to_string(*expected_arity) + " probabilities, got " +
                                  std::to_string(arity));
        }
        Vector values(arity);
        for (int i = 0; i < arity; ++i) {
            values(i) = p[static_cast<std::size_t>(i)].get<double>();
        }
        auto it = out.streams.find(video);
        if (it == out.streams.end()) {
            it = out.streams.emplace(video, ScoreStream(video, arity)).first;
        }
        it->second.insert(t, ProbVector::ingest(std::move(values)));
        ++out.entries;
    });
    out.arity = expected_arity.value_or(0);
    return out;
}

std::string format_score_streams(const StreamSet& streams)
{
    std::ostringstream out;
    for (const auto& [video, stream] : streams) {
        for (const FrameIndex t : stream.keys()) {
            const auto p = stream.score(t);
            ordered_json record;
            record["video"] = video;
            record["t"] = t;
            record["p"] = std::vector<double>(p.data(), p.data() + p.size());
            out << record.dump() << '\n';
        }
    }
    return out.str();
}

AnnotationSet load_annotations(const fs::path& path)
{
    AnnotationSet out;
    for_each_record(path, [&](const nlohmann::json& record, std::size_t) {
        GroundTruthSegment seg;
        seg.video_id = required<std::string>(record, "video");
        seg.label = GestureLabel{static_cast<int>(required_frame(record, "class"))};
        seg.start = required_frame(record, "start");
        seg.end = required_frame(record, "end");
        if (seg.label.class_id < 0) {
            throw ValidationError("negative class id");
        }
        out[seg.video_id].push_back(std::move(seg));
    });
    check_annotations(out);
    return out;
}

std::string format_annotations(const AnnotationSet& annotations)
{
    std::ostringstream out;
    for (const auto& [video, segments] : annotations) {
        for (const auto& seg : segments) {
            ordered_json record;
            record["video"] = video;
            record["class"] = seg.label.class_id;
            record["start"] = seg.start;
            record["end"] = seg.end;
            out << record.dump() << '\n';
        }
    }
    return out.str();
}

EventLog load_events(const fs::path& path)
{
    EventLog out;
    for_each_record(path, [&](const nlohmann::json& record, std::size_t) {
        ActivationEvent ev;
        ev.video_id = required<std::string>(record, "video");
        ev.label = GestureLabel{static_cast<int>(required_frame(record, "class"))};
        ev.emit_frame = required_frame(record, "frame");
        ev.kind = parse_event_kind(required<std::string>(record, "kind"));
        ev.score = required<double>(record, "score");
        out[ev.video_id].push_back(std::move(ev));
    });
    return out;
}

std::string format_events(const EventLog& events)
{
    std::ostringstream out;
    for (const auto& [video, evs] : events) {
        for (const auto& ev : evs) {
            ordered_json record;
            record["video"] = video;
            record["class"] = ev.label.class_id;
            record["frame"] = ev.emit_frame;
            record["kind"] = to_string(ev.kind);
            record["score"] = ev.score;
            out << record.dump() << '\n';
        }
    }
    return out.str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IoError("write failed on " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

CorpusPaths CorpusPaths::in_directory(const fs::path& dir)
{
    return {dir / "detector.jsonl", dir / "classifier.jsonl", dir / "annotations.jsonl"};
}

Corpus load_corpus(const CorpusPaths& paths, std::optional<int> num_classes)
{
    Corpus corpus;
    corpus.detector = load_score_streams(paths.detector, 2).streams;
    corpus.classifier = load_score_streams(paths.classifier, num_classes).streams;
    corpus.annotations = load_annotations(paths.annotations);
    return corpus;
}

void write_corpus(const fs::path& dir, const Corpus& corpus)
{
    const auto paths = CorpusPaths::in_directory(dir);
    write_file_atomic(paths.detector, format_score_streams(corpus.detector));
    write_file_atomic(paths.classifier, format_score_streams(corpus.classifier));
    write_file_atomic(paths.annotations, format_annotations(corpus.annotations));
}

} // namespace gestream
