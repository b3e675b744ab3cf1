#pragma once

#include <png.h>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "morphlat/error.hpp"
#include "morphlat/image.hpp"

namespace morphlat {

enum class ImageFormat { Auto, Png, Pnm };

namespace detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline VectorImage from_bytes(std::size_t width, std::size_t height, std::size_t channels,
                              const std::uint8_t* bytes) {
    std::vector<double> data(width * height * channels);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = bytes[i] / 255.0;
    return VectorImage(width, height, channels, std::move(data));
}

inline std::vector<std::uint8_t> to_bytes(const VectorImage& image) {
    std::vector<std::uint8_t> bytes(image.data().size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const double v = image.data()[i];
        if (v < 0.0 || v > 1.0) {
            throw Error(ErrorCode::InvalidArgument, "pixel sample outside [0,1] cannot be saved");
        }
        bytes[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    return bytes;
}

inline VectorImage decode_png(const std::vector<std::uint8_t>& file, const std::string& name) {
    // Signature (8) + IHDR length/type (8) + IHDR payload (13).
    if (file.size() < 29 || std::string(file.begin() + 12, file.begin() + 16) != "IHDR") {
        throw Error(ErrorCode::Io, "truncated or malformed PNG '" + name + "'");
    }
    const std::uint8_t* ihdr = file.data() + 16;
    const int bit_depth = ihdr[8];
    const int color_type = ihdr[9];
    const int interlace = ihdr[12];
    if (color_type == 4 || color_type == 6) {
        throw Error(ErrorCode::UnsupportedFormat, "PNG with alpha channel is not supported: '" + name + "'");
    }
    if (color_type != 3 && bit_depth != 8) {
        throw Error(ErrorCode::UnsupportedFormat,
                    "only 8-bit PNG is supported ('" + name + "' has depth " + std::to_string(bit_depth) + ")");
    }
    if (interlace != 0) {
        throw Error(ErrorCode::UnsupportedFormat, "interlaced PNG is not supported: '" + name + "'");
    }

    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, file.data(), file.size())) {
        throw Error(ErrorCode::Io, "cannot decode PNG '" + name + "': " + png.message);
    }
    if (png.format & PNG_FORMAT_FLAG_ALPHA) {
        png_image_free(&png);
        throw Error(ErrorCode::UnsupportedFormat, "PNG with transparency is not supported: '" + name + "'");
    }
    const std::size_t channels = (png.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
    png.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw Error(ErrorCode::Io, "cannot decode PNG '" + name + "': " + msg);
    }
    return from_bytes(png.width, png.height, channels, buffer.data());
}

inline VectorImage decode_pnm(const std::vector<std::uint8_t>& file, const std::string& name) {
    std::size_t pos = 2;
    auto skip_space = [&] {
        while (pos < file.size()) {
            if (file[pos] == '#') {
                while (pos < file.size() && file[pos] != '\n') ++pos;
            } else if (std::isspace(file[pos])) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&]() -> std::size_t {
        skip_space();
        if (pos >= file.size() || !std::isdigit(file[pos])) {
            throw Error(ErrorCode::Io, "malformed PNM header in '" + name + "'");
        }
        std::size_t v = 0;
        while (pos < file.size() && std::isdigit(file[pos])) {
            v = v * 10 + (file[pos++] - '0');
            if (v > (1u << 24)) throw Error(ErrorCode::Io, "PNM header value too large in '" + name + "'");
        }
        return v;
    };

    const std::size_t channels = file[1] == '6' ? 3 : 1;
    const std::size_t width = read_uint();
    const std::size_t height = read_uint();
    const std::size_t maxval = read_uint();
    if (maxval != 255) {
        throw Error(ErrorCode::UnsupportedFormat,
                    "only maxval 255 is supported ('" + name + "' has " + std::to_string(maxval) + ")");
    }
    if (pos >= file.size() || !std::isspace(file[pos])) {
        throw Error(ErrorCode::Io, "malformed PNM header in '" + name + "'");
    }
    ++pos;
    const std::size_t need = width * height * channels;
    if (width == 0 || height == 0) throw Error(ErrorCode::Io, "empty PNM image '" + name + "'");
    if (file.size() - pos < need) throw Error(ErrorCode::Io, "truncated PNM file '" + name + "'");
    return from_bytes(width, height, channels, file.data() + pos);
}

} // namespace detail

/// Reads an 8-bit PNG or binary PGM/PPM; samples map to {0, 1/255, ..., 1}.
inline VectorImage load_image(const std::filesystem::path& path) {
    const auto file = detail::read_file(path);
    static constexpr std::array<std::uint8_t, 8> png_sig{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (file.size() >= 8 && std::equal(png_sig.begin(), png_sig.end(), file.begin())) {
        return detail::decode_png(file, path.string());
    }
    if (file.size() >= 2 && file[0] == 'P' && (file[1] == '5' || file[1] == '6')) {
        return detail::decode_pnm(file, path.string());
    }
    throw Error(ErrorCode::UnsupportedFormat, "unsupported image format: '" + path.string() + "'");
}

/// Writes a 1- or 3-channel image; samples are quantized as round(v * 255).
/// With ImageFormat::Auto the extension picks the format (.png, otherwise PNM).
inline void save_image(const VectorImage& image, const std::filesystem::path& path,
                       ImageFormat format = ImageFormat::Auto) {
    if (image.channels() != 1 && image.channels() != 3) {
        throw Error(ErrorCode::UnsupportedFormat, "only 1- or 3-channel images can be saved");
    }
    if (format == ImageFormat::Auto) {
        format = path.extension() == ".png" ? ImageFormat::Png : ImageFormat::Pnm;
    }
    const auto bytes = detail::to_bytes(image);

    if (format == ImageFormat::Png) {
        png_image png{};
        png.version = PNG_IMAGE_VERSION;
        png.width = static_cast<png_uint_32>(image.width());
        png.height = static_cast<png_uint_32>(image.height());
        png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&png, path.c_str(), 0, bytes.data(), 0, nullptr)) {
            throw Error(ErrorCode::Io, "cannot write PNG '" + path.string() + "': " + png.message);
        }
        return;
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out << (image.channels() == 3 ? "P6" : "P5") << '\n'
        << image.width() << ' ' << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
}

} // namespace morphlat
