#include "pyra/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "pyra/error.hpp"

namespace pyra {

namespace {

struct Decoded {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 0;
    int bit_depth = 0;
    std::vector<std::uint8_t> bytes;  // big-endian pairs when bit_depth == 16
};

// libpng reports errors through longjmp; everything with a destructor lives in
// this context, which is constructed before setjmp and outlives the jump.
struct CodecContext {
    std::span<const std::uint8_t> input;
    std::size_t offset = 0;
    std::vector<std::uint8_t>* output = nullptr;
    std::string message;
    IoError::Kind kind = IoError::Kind::corrupt_stream;
};

void on_error(png_structp png, png_const_charp msg) {
    auto* ctx = static_cast<CodecContext*>(png_get_error_ptr(png));
    ctx->message = msg ? msg : "unknown libpng error";
    png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void read_from_memory(png_structp png, png_bytep out, png_size_t length) {
    auto* ctx = static_cast<CodecContext*>(png_get_io_ptr(png));
    if (ctx->input.size() - ctx->offset < length)
        png_error(png, "truncated stream");
    std::memcpy(out, ctx->input.data() + ctx->offset, length);
    ctx->offset += length;
}

void write_to_memory(png_structp png, png_bytep data, png_size_t length) {
    auto* ctx = static_cast<CodecContext*>(png_get_io_ptr(png));
    ctx->output->insert(ctx->output->end(), data, data + length);
}

void flush_noop(png_structp) {}

struct ReadGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~ReadGuard() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct WriteGuard {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~WriteGuard() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

// Returns false with ctx.message/kind set on failure.
bool decode_impl(CodecContext& ctx, Decoded& out) {
    static constexpr std::size_t sig_len = 8;
    if (ctx.input.size() < sig_len || png_sig_cmp(ctx.input.data(), 0, sig_len) != 0) {
        ctx.message = "not a PNG stream (bad signature)";
        return false;
    }
    ReadGuard guard;
    guard.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, on_error, on_warning);
    if (!guard.png) {
        ctx.message = "png_create_read_struct failed";
        return false;
    }
    guard.info = png_create_info_struct(guard.png);
    if (!guard.info) {
        ctx.message = "png_create_info_struct failed";
        return false;
    }
    if (setjmp(png_jmpbuf(guard.png)))
        return false;

    png_set_read_fn(guard.png, &ctx, read_from_memory);
    png_read_info(guard.png, guard.info);

    png_uint_32 w = 0, h = 0;
    int depth = 0, color = 0, interlace = 0;
    png_get_IHDR(guard.png, guard.info, &w, &h, &depth, &color, &interlace, nullptr, nullptr);
    std::size_t channels = 0;
    switch (color) {
        case PNG_COLOR_TYPE_GRAY: channels = 1; break;
        case PNG_COLOR_TYPE_RGB: channels = 3; break;
        case PNG_COLOR_TYPE_RGB_ALPHA: channels = 4; break;
        default:
            ctx.kind = IoError::Kind::unsupported_format;
            ctx.message = "unsupported PNG color type " + std::to_string(color) +
                          " (expected gray, RGB or RGBA)";
            return false;
    }
    if (depth != 8 && depth != 16) {
        ctx.kind = IoError::Kind::unsupported_format;
        ctx.message = "unsupported PNG bit depth " + std::to_string(depth);
        return false;
    }
    png_set_interlace_handling(guard.png);
    png_read_update_info(guard.png, guard.info);

    const std::size_t row_bytes = png_get_rowbytes(guard.png, guard.info);
    out.width = w;
    out.height = h;
    out.channels = channels;
    out.bit_depth = depth;
    out.bytes.assign(row_bytes * h, 0);
    std::vector<png_bytep> rows(h);
    for (std::size_t r = 0; r < h; ++r)
        rows[r] = out.bytes.data() + r * row_bytes;
    png_read_image(guard.png, rows.data());
    png_read_end(guard.png, nullptr);
    return true;
}

Decoded decode(std::span<const std::uint8_t> bytes, const std::string& origin) {
    CodecContext ctx;
    ctx.input = bytes;
    Decoded out;
    if (!decode_impl(ctx, out))
        throw IoError(ctx.kind, origin + ": " + ctx.message);
    return out;
}

struct EncodeRequest {
    std::size_t width;
    std::size_t height;
    int color_type;
    int bit_depth;
    std::span<const std::uint8_t> bytes;  // packed rows
};

bool encode_impl(CodecContext& ctx, const EncodeRequest& req) {
    WriteGuard guard;
    guard.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, on_error, on_warning);
    if (!guard.png) {
        ctx.message = "png_create_write_struct failed";
        return false;
    }
    guard.info = png_create_info_struct(guard.png);
    if (!guard.info) {
        ctx.message = "png_create_info_struct failed";
        return false;
    }
    if (setjmp(png_jmpbuf(guard.png)))
        return false;

    png_set_write_fn(guard.png, &ctx, write_to_memory, flush_noop);
    png_set_compression_level(guard.png, 1);
    png_set_IHDR(guard.png, guard.info, static_cast<png_uint_32>(req.width),
                 static_cast<png_uint_32>(req.height), req.bit_depth, req.color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(guard.png, guard.info);
    const std::size_t row_bytes = req.height ? req.bytes.size() / req.height : 0;
    for (std::size_t r = 0; r < req.height; ++r)
        png_write_row(guard.png, const_cast<png_bytep>(req.bytes.data() + r * row_bytes));
    png_write_end(guard.png, nullptr);
    return true;
}

std::vector<std::uint8_t> encode(const EncodeRequest& req) {
    if (req.width == 0 || req.height == 0)
        throw ValidationError("cannot encode an empty image as PNG");
    std::vector<std::uint8_t> out;
    CodecContext ctx;
    ctx.output = &out;
    if (!encode_impl(ctx, req))
        throw IoError(IoError::Kind::write_failed, "PNG encode failed: " + ctx.message);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::error_code ec;
        if (!std::filesystem::exists(path, ec))
            throw IoError(IoError::Kind::missing_file, path.string() + ": no such file");
        throw IoError(IoError::Kind::missing_file, path.string() + ": cannot open");
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

ImageRaster to_raster(Decoded d, const std::string& origin) {
    if (d.bit_depth != 8)
        throw IoError(IoError::Kind::unsupported_format,
                      origin + ": expected an 8-bit PNG, got " + std::to_string(d.bit_depth) +
                          "-bit");
    return ImageRaster(d.width, d.height, d.channels, std::move(d.bytes));
}

std::vector<double> to_unit_values(const Decoded& d, const std::string& origin) {
    if (d.channels != 1)
        throw IoError(IoError::Kind::unsupported_format,
                      origin + ": maps must be single-channel PNGs");
    const std::size_t n = d.width * d.height;
    std::vector<double> values(n);
    if (d.bit_depth == 16) {
        for (std::size_t i = 0; i < n; ++i)
            values[i] = decode_unit(static_cast<std::uint16_t>((d.bytes[2 * i] << 8) |
                                                               d.bytes[2 * i + 1]));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            values[i] = d.bytes[i] / 255.0;
    }
    return values;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const ImageRaster& image) {
    int color = PNG_COLOR_TYPE_GRAY;
    if (image.channels() == 3)
        color = PNG_COLOR_TYPE_RGB;
    else if (image.channels() == 4)
        color = PNG_COLOR_TYPE_RGB_ALPHA;
    return encode({image.width(), image.height(), color, 8, image.data()});
}

ImageRaster decode_png(std::span<const std::uint8_t> bytes) {
    return to_raster(decode(bytes, "<memory>"), "<memory>");
}

ImageRaster load_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return to_raster(decode(bytes, path.string()), path.string());
}

void save_image(const ImageRaster& image, const std::filesystem::path& path) {
    write_file_atomic(path, encode_png(image));
}

BinaryMask load_mask(const std::filesystem::path& path, std::uint8_t threshold) {
    return mask_from_raster(load_image(path), threshold);
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    save_image(mask.to_raster(), path);
}

std::uint16_t encode_unit(double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw ValidationError("encode_unit: value outside [0,1]");
    return static_cast<std::uint16_t>(std::floor(value * 65535.0 + 0.5));
}

std::vector<std::uint8_t> encode_map_png(const RealMap& map) {
    const auto values = map.data();
    std::vector<std::uint8_t> bytes(values.size() * 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint16_t u = encode_unit(values[i]);
        bytes[2 * i] = static_cast<std::uint8_t>(u >> 8);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(u & 0xFF);
    }
    return encode({map.width(), map.height(), PNG_COLOR_TYPE_GRAY, 16, bytes});
}

void save_map(const RealMap& map, const std::filesystem::path& path) {
    write_file_atomic(path, encode_map_png(map));
}

ProbabilityMap load_probability_map(const std::filesystem::path& path) {
    const auto d = decode(read_file(path), path.string());
    return ProbabilityMap(d.width, d.height, to_unit_values(d, path.string()));
}

UncertaintyMap load_uncertainty_map(const std::filesystem::path& path) {
    const auto d = decode(read_file(path), path.string());
    auto values = to_unit_values(d, path.string());
    // 0.5 encodes half-up to 32768, which decodes just above the std bound.
    for (auto& v : values)
        v = std::min(v, UncertaintyMap::upper_bound);
    return UncertaintyMap(d.width, d.height, std::move(values));
}

int png_bit_depth(const std::filesystem::path& path) {
    return decode(read_file(path), path.string()).bit_depth;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError(IoError::Kind::write_failed, tmp.string() + ": cannot open for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError(IoError::Kind::write_failed, tmp.string() + ": write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError(IoError::Kind::write_failed,
                      path.string() + ": rename failed: " + ec.message());
}

}  // namespace pyra
