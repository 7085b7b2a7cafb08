#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hvh/matcher.hpp"
#include "hvh/video_hash.hpp"

namespace hvh {

struct QueryHit {
    std::string source_id;
    MatchResult result;
};

/// On-disk collection of video hashes keyed by source_id: an append-only
/// run of serialized hashes with a rewritten offset trailer (layout in
/// docs/FORMATS.md). Single writer; concurrent readers are fine since
/// loaded entries are immutable values.
class HashIndex {
public:
    /// Creates an empty index file (fails if it exists).
    static HashIndex create(const std::filesystem::path& path);

    /// Loads an existing index into memory.
    static HashIndex open(const std::filesystem::path& path);

    /// Opens if present, creates otherwise.
    static HashIndex open_or_create(const std::filesystem::path& path);

    /// Adds a hash; duplicate source_id is an error. Persists immediately.
    void add(const VideoHash& h);

    /// Compares the query against every entry and returns those with
    /// score >= min_score, sorted by descending score; ties broken by
    /// ascending source_id.
    std::vector<QueryHit> query(const VideoHash& query_hash, std::int64_t min_score,
                                const MatchParams& params) const;

    const std::map<std::string, VideoHash>& entries() const { return entries_; }
    const std::filesystem::path& storage_path() const { return path_; }

private:
    HashIndex(std::filesystem::path path, std::map<std::string, VideoHash> entries)
        : path_(std::move(path)), entries_(std::move(entries)) {}

    void rewrite_trailer_with(const std::vector<std::uint8_t>& new_blob);

    std::filesystem::path path_;
    std::map<std::string, VideoHash> entries_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> blob_spans_;  // offset, length
};

}  // namespace hvh
