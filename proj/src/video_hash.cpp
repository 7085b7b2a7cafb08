#include "hvh/video_hash.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "hvh/errors.hpp"
#include "hvh/io_util.hpp"
#include "hvh/media_ingest.hpp"

namespace hvh {

namespace {

constexpr std::string_view kMagic = "HVH1";
constexpr std::uint16_t kFormatVersion = 1;
constexpr std::size_t kRecordBytes = 8 + 2 + 4;

}  // namespace

double keyframe_percentage_of(std::size_t keyframes, std::uint32_t total_frames,
                              std::uint32_t blank_count) {
    const std::uint32_t content = total_frames - blank_count;
    if (content == 0) return 0.0;
    return 100.0 * static_cast<double>(keyframes) / static_cast<double>(content);
}

VideoHash build_video_hash(const VideoStream& stream, const SelectionParams& params) {
    params.validate();
    if (stream.frames.empty()) throw Error("cannot hash an empty stream");
    if (stream.frame_rate <= 0) throw Error("stream frame rate must be positive");

    std::vector<PreprocessedFrame> prepped;
    prepped.reserve(stream.frames.size());
    for (const Frame& f : stream.frames) prepped.push_back(preprocess(f, params.resolution));

    SelectionResult sel = select_keyframes(prepped, params);

    VideoHash h;
    h.header.source_id = stream.source_id;
    h.header.total_frames = static_cast<std::uint32_t>(stream.frames.size());
    h.header.frame_rate = stream.frame_rate;
    h.header.blank_count = sel.blank_count;
    h.header.trailing_drops = sel.trailing_drops;
    h.header.keyframe_percentage = keyframe_percentage_of(
        sel.records.size(), h.header.total_frames, sel.blank_count);
    h.header.resolution = static_cast<std::uint16_t>(params.resolution);
    h.header.block_grid = static_cast<std::uint16_t>(params.block_grid);
    h.header.format_version = kFormatVersion;
    h.records = std::move(sel.records);
    check_frame_count_identity(h);
    return h;
}

void check_frame_count_identity(const VideoHash& h) {
    std::uint64_t accounted = h.header.blank_count;
    accounted += h.records.size();
    accounted += h.header.trailing_drops;
    for (const KeyframeRecord& r : h.records) accounted += r.dropped_before;
    if (accounted != h.header.total_frames) {
        throw Error("frame-count identity violated: header says " +
                    std::to_string(h.header.total_frames) + " frames but records account for " +
                    std::to_string(accounted));
    }
}

std::vector<std::uint8_t> serialize(const VideoHash& h) {
    if (h.header.source_id.size() > 0xffff) {
        throw Error("source_id longer than 65535 bytes cannot be serialized");
    }
    std::vector<std::uint8_t> out;
    out.reserve(44 + h.header.source_id.size() + h.records.size() * kRecordBytes);
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    io::put_u16(out, h.header.format_version);
    io::put_u16(out, h.header.resolution);
    io::put_u16(out, h.header.block_grid);
    io::put_u32(out, h.header.total_frames);
    io::put_u32(out, h.header.blank_count);
    io::put_u32(out, h.header.trailing_drops);
    io::put_f64(out, h.header.frame_rate);
    io::put_f64(out, h.header.keyframe_percentage);
    io::put_u16(out, static_cast<std::uint16_t>(h.header.source_id.size()));
    out.insert(out.end(), h.header.source_id.begin(), h.header.source_id.end());
    io::put_u32(out, static_cast<std::uint32_t>(h.records.size()));
    for (const KeyframeRecord& r : h.records) {
        io::put_u64(out, r.hash.bits);
        io::put_u16(out, static_cast<std::uint16_t>(std::min<std::uint32_t>(r.dropped_before,
                                                                            0xffff)));
        io::put_u32(out, r.source_index);
    }
    return out;
}

VideoHash deserialize(std::span<const std::uint8_t> bytes) {
    io::Reader rd(bytes, "video hash");
    rd.expect_magic(kMagic);

    VideoHash h;
    h.header.format_version = rd.u16();
    if (h.header.format_version != kFormatVersion) {
        throw ParseError("video hash: unsupported format version " +
                             std::to_string(h.header.format_version),
                         4);
    }
    h.header.resolution = rd.u16();
    h.header.block_grid = rd.u16();
    h.header.total_frames = rd.u32();
    h.header.blank_count = rd.u32();
    h.header.trailing_drops = rd.u32();
    h.header.frame_rate = rd.f64();
    h.header.keyframe_percentage = rd.f64();
    const std::uint16_t id_len = rd.u16();
    auto id_bytes = rd.take(id_len);
    h.header.source_id.assign(id_bytes.begin(), id_bytes.end());

    if (h.header.block_grid < 1 || h.header.block_grid > 8) {
        throw ParseError("video hash: block grid out of range", rd.offset());
    }
    const std::uint32_t record_count = rd.u32();
    if (rd.remaining() != static_cast<std::size_t>(record_count) * kRecordBytes) {
        throw ParseError("video hash: record payload is " + std::to_string(rd.remaining()) +
                             " bytes but " + std::to_string(record_count) + " records need " +
                             std::to_string(static_cast<std::size_t>(record_count) * kRecordBytes),
                         rd.offset());
    }
    const auto block_count =
        static_cast<std::uint8_t>(h.header.block_grid * h.header.block_grid);
    h.records.reserve(record_count);
    for (std::uint32_t i = 0; i < record_count; ++i) {
        KeyframeRecord r;
        r.hash.bits = rd.u64();
        r.hash.block_count = block_count;
        r.dropped_before = rd.u16();
        r.source_index = rd.u32();
        h.records.push_back(r);
    }
    return h;
}

void save_video_hash(const std::filesystem::path& path, const VideoHash& h) {
    const auto bytes = serialize(h);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

VideoHash load_video_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace hvh
