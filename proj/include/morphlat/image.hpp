#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphlat/error.hpp"
#include "morphlat/orders.hpp"
#include "morphlat/value.hpp"

namespace morphlat {

/// Rectangular grid of m-channel pixels, stored row-major and interleaved.
class VectorImage {
public:
    VectorImage() = default;

    VectorImage(std::size_t width, std::size_t height, std::size_t channels, double fill = 0.0)
        : width_(width), height_(height), channels_(channels),
          data_(width * height * channels, fill) {
        check_shape();
    }

    VectorImage(std::size_t width, std::size_t height, std::size_t channels, std::vector<double> data)
        : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
        check_shape();
        if (data_.size() != width_ * height_ * channels_) {
            throw Error(ErrorCode::ShapeMismatch, "pixel buffer size does not match width*height*channels");
        }
        for (double c : data_) {
            if (!std::isfinite(c)) throw Error(ErrorCode::NonFiniteValue, "image has a non-finite sample");
        }
    }

    static VectorImage from_values(std::size_t width, std::size_t height,
                                   const std::vector<VectorValue>& pixels) {
        if (pixels.empty() || pixels.size() != width * height) {
            throw Error(ErrorCode::ShapeMismatch, "pixel count does not match width*height");
        }
        const std::size_t m = pixels.front().size();
        std::vector<double> data;
        data.reserve(pixels.size() * m);
        for (const auto& p : pixels) {
            require_same_dimension(p.view(), pixels.front().view());
            data.insert(data.end(), p.components().begin(), p.components().end());
        }
        return VectorImage(width, height, m, std::move(data));
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }
    const std::vector<double>& data() const noexcept { return data_; }

    ValueView pixel(std::size_t index) const {
        return ValueView(data_).subspan(index * channels_, channels_);
    }
    ValueView pixel(std::size_t row, std::size_t col) const { return pixel(row * width_ + col); }
    VectorValue value(std::size_t index) const { return VectorValue(pixel(index)); }

    void set_pixel(std::size_t index, ValueView v) {
        if (v.size() != channels_) {
            throw Error(ErrorCode::DimensionMismatch, "pixel dimension does not match image channels");
        }
        std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(index * channels_));
    }

    bool same_shape(const VectorImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

    friend bool operator==(const VectorImage&, const VectorImage&) = default;

private:
    void check_shape() const {
        if (width_ == 0 || height_ == 0 || channels_ == 0) {
            throw Error(ErrorCode::InvalidArgument, "image dimensions and channel count must be positive");
        }
    }

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::size_t channels_ = 0;
    std::vector<double> data_;
};

inline void require_same_shape(const VectorImage& a, const VectorImage& b) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::ShapeMismatch, "images differ in size or channel count");
    }
}

/// V(I): the distinct pixel values, in lexicographic order.
inline std::vector<VectorValue> distinct_values(const VectorImage& image) {
    std::set<VectorValue> seen;
    for (std::size_t i = 0; i < image.pixel_count(); ++i) seen.insert(image.value(i));
    return {seen.begin(), seen.end()};
}

struct Offset {
    int dy = 0;
    int dx = 0;
    friend auto operator<=>(const Offset&, const Offset&) = default;
};

enum class SeShape { Square, Cross, Custom };

/// Flat structuring element: a non-empty set of distinct pixel offsets.
class StructuringElement {
public:
    explicit StructuringElement(std::vector<Offset> offsets, SeShape shape = SeShape::Custom,
                                int size = 0)
        : offsets_(std::move(offsets)), shape_(shape), size_(size) {
        if (offsets_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "structuring element must be non-empty");
        }
        auto sorted = offsets_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorCode::InvalidArgument, "structuring element has duplicate offsets");
        }
    }

    static StructuringElement square(int size) {
        check_size(size);
        const int r = size / 2;
        std::vector<Offset> off;
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx) off.push_back({dy, dx});
        return StructuringElement(std::move(off), SeShape::Square, size);
    }

    static StructuringElement cross(int size) {
        check_size(size);
        const int r = size / 2;
        std::vector<Offset> off;
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx)
                if (dy == 0 || dx == 0) off.push_back({dy, dx});
        return StructuringElement(std::move(off), SeShape::Cross, size);
    }

    /// Parses "square:3" or "cross:5".
    static StructuringElement parse(std::string_view text) {
        const auto colon = text.find(':');
        const auto shape = text.substr(0, colon);
        int size = 3;
        if (colon != std::string_view::npos) {
            const std::string digits(text.substr(colon + 1));
            std::size_t used = 0;
            try {
                size = std::stoi(digits, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != digits.size()) {
                throw Error(ErrorCode::InvalidArgument, "bad structuring element size in '" + std::string(text) + "'");
            }
        }
        if (shape == "square") return square(size);
        if (shape == "cross") return cross(size);
        throw Error(ErrorCode::InvalidArgument, "unknown structuring element shape '" + std::string(shape) + "'");
    }

    const std::vector<Offset>& offsets() const noexcept { return offsets_; }

    bool contains_origin() const {
        return std::find(offsets_.begin(), offsets_.end(), Offset{0, 0}) != offsets_.end();
    }

    std::string descriptor() const {
        switch (shape_) {
        case SeShape::Square: return "square:" + std::to_string(size_);
        case SeShape::Cross: return "cross:" + std::to_string(size_);
        case SeShape::Custom: break;
        }
        return "custom:" + std::to_string(offsets_.size());
    }

private:
    static void check_size(int size) {
        if (size <= 0 || size % 2 == 0) {
            throw Error(ErrorCode::InvalidArgument, "structuring element size must be odd and positive");
        }
    }

    std::vector<Offset> offsets_;
    SeShape shape_;
    int size_;
};

} // namespace morphlat
