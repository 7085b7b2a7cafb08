#include "hvh/hash_index.hpp"

#include <algorithm>
#include <fstream>

#include "hvh/errors.hpp"
#include "hvh/io_util.hpp"

namespace hvh {

namespace {

constexpr std::string_view kHeadMagic = "HVX1";
constexpr std::string_view kFootMagic = "HVXE";
// footer = u64 trailer offset + foot magic
constexpr std::size_t kFooterBytes = 8 + 4;

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read index " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

HashIndex HashIndex::create(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) {
        throw IoError("index already exists: " + path.string());
    }
    HashIndex idx(path, {});
    std::vector<std::uint8_t> bytes;
    bytes.insert(bytes.end(), kHeadMagic.begin(), kHeadMagic.end());
    const std::uint64_t trailer_offset = bytes.size();
    io::put_u32(bytes, 0);  // entry count
    io::put_u64(bytes, trailer_offset);
    bytes.insert(bytes.end(), kFootMagic.begin(), kFootMagic.end());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create index " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing index " + path.string());
    return idx;
}

HashIndex HashIndex::open(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    const std::span<const std::uint8_t> all(bytes);
    io::Reader head(all, "index " + path.string());
    head.expect_magic(kHeadMagic);
    if (bytes.size() < kHeadMagic.size() + kFooterBytes) {
        throw ParseError("index " + path.string() + ": too short", bytes.size());
    }

    io::Reader foot(all.subspan(bytes.size() - kFooterBytes),
                    "index footer " + path.string());
    const std::uint64_t trailer_offset = foot.u64();
    foot.expect_magic(kFootMagic);
    if (trailer_offset >= bytes.size()) {
        throw ParseError("index " + path.string() + ": trailer offset out of range",
                         bytes.size() - kFooterBytes);
    }

    io::Reader trailer(all.subspan(trailer_offset),
                       "index trailer " + path.string());
    const std::uint32_t count = trailer.u32();
    HashIndex idx(path, {});
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint64_t offset = trailer.u64();
        const std::uint64_t length = trailer.u64();
        if (offset + length > trailer_offset) {
            throw ParseError("index " + path.string() + ": entry span out of range",
                             trailer_offset);
        }
        VideoHash h = deserialize(all.subspan(offset, length));
        auto [it, inserted] = idx.entries_.emplace(h.header.source_id, std::move(h));
        if (!inserted) {
            throw ParseError("index " + path.string() + ": duplicate source_id \"" + it->first +
                             "\"");
        }
        idx.blob_spans_.emplace_back(offset, length);
    }
    return idx;
}

HashIndex HashIndex::open_or_create(const std::filesystem::path& path) {
    return std::filesystem::exists(path) ? open(path) : create(path);
}

void HashIndex::add(const VideoHash& h) {
    if (h.header.source_id.empty()) {
        throw Error("cannot index a hash with an empty source_id");
    }
    if (entries_.contains(h.header.source_id)) {
        throw Error("duplicate source_id in index: \"" + h.header.source_id + "\"");
    }
    rewrite_trailer_with(serialize(h));
    entries_.emplace(h.header.source_id, h);
}

void HashIndex::rewrite_trailer_with(const std::vector<std::uint8_t>& new_blob) {
    // Blobs are append-only; the trailer after them is rewritten in place.
    const std::uint64_t blob_offset =
        blob_spans_.empty() ? kHeadMagic.size() : blob_spans_.back().first + blob_spans_.back().second;

    std::fstream file(path_, std::ios::binary | std::ios::in | std::ios::out);
    if (!file) throw IoError("cannot open index for writing: " + path_.string());
    file.seekp(static_cast<std::streamoff>(blob_offset));
    file.write(reinterpret_cast<const char*>(new_blob.data()),
               static_cast<std::streamsize>(new_blob.size()));

    blob_spans_.emplace_back(blob_offset, new_blob.size());

    std::vector<std::uint8_t> tail;
    io::put_u32(tail, static_cast<std::uint32_t>(blob_spans_.size()));
    for (const auto& [off, len] : blob_spans_) {
        io::put_u64(tail, off);
        io::put_u64(tail, len);
    }
    io::put_u64(tail, blob_offset + new_blob.size());  // trailer offset
    tail.insert(tail.end(), kFootMagic.begin(), kFootMagic.end());
    file.write(reinterpret_cast<const char*>(tail.data()),
               static_cast<std::streamsize>(tail.size()));
    if (!file) throw IoError("failed writing index " + path_.string());
    file.flush();
    const auto end = file.tellp();
    file.close();
    std::filesystem::resize_file(path_, static_cast<std::uintmax_t>(end));
}

std::vector<QueryHit> HashIndex::query(const VideoHash& query_hash, std::int64_t min_score,
                                       const MatchParams& params) const {
    std::vector<QueryHit> hits;
    for (const auto& [id, entry] : entries_) {
        MatchResult r = compare(query_hash, entry, params);
        if (r.score >= min_score) hits.push_back({id, std::move(r)});
    }
    std::stable_sort(hits.begin(), hits.end(), [](const QueryHit& x, const QueryHit& y) {
        if (x.result.score != y.result.score) return x.result.score > y.result.score;
        return x.source_id < y.source_id;
    });
    return hits;
}

}  // namespace hvh
