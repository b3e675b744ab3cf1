#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphlat/error.hpp"
#include "morphlat/image.hpp"
#include "morphlat/orders.hpp"

namespace morphlat {

enum class Operator { Dilate, Erode, Open, Close };

constexpr std::string_view operator_name(Operator op) noexcept {
    switch (op) {
    case Operator::Dilate: return "dilate";
    case Operator::Erode: return "erode";
    case Operator::Open: return "open";
    case Operator::Close: return "close";
    }
    return "unknown";
}

namespace detail {

// Visits the in-domain neighbours q = p + sign*s of pixel (row, col).
// Windows are truncated at the border; nothing is padded.
template <typename Visit>
void for_each_in_window(const VectorImage& image, const StructuringElement& se, int sign,
                        std::size_t row, std::size_t col, Visit&& visit) {
    const auto h = static_cast<long>(image.height());
    const auto w = static_cast<long>(image.width());
    for (const auto& s : se.offsets()) {
        const long r = static_cast<long>(row) + sign * s.dy;
        const long c = static_cast<long>(col) + sign * s.dx;
        if (r < 0 || r >= h || c < 0 || c >= w) continue;
        visit(static_cast<std::size_t>(r * w + c));
    }
}

[[noreturn]] inline void throw_empty_window(std::size_t row, std::size_t col) {
    throw Error(ErrorCode::EmptyWindow, "empty structuring window at pixel (" + std::to_string(row) +
                                            "," + std::to_string(col) + ")");
}

inline VectorImage flat_total(const VectorImage& image, const StructuringElement& se,
                              const OrderScheme& order, Extremum which, int sign) {
    const auto distinct = distinct_values(image);
    const auto keys = order.keys_for(distinct);

    std::unordered_map<VectorValue, std::size_t> slot;
    slot.reserve(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) slot.emplace(distinct[i], i);

    // Per-pixel index into `distinct`.
    std::vector<std::size_t> pixel_slot(image.pixel_count());
    for (std::size_t i = 0; i < image.pixel_count(); ++i) pixel_slot[i] = slot.at(image.value(i));

    VectorImage out(image.width(), image.height(), image.channels());
    for (std::size_t row = 0; row < image.height(); ++row) {
        for (std::size_t col = 0; col < image.width(); ++col) {
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for_each_in_window(image, se, sign, row, col, [&](std::size_t q) {
                const std::size_t cand = pixel_slot[q];
                if (best == std::numeric_limits<std::size_t>::max() ||
                    (which == Extremum::Sup ? keys[cand] > keys[best] : keys[cand] < keys[best])) {
                    best = cand;
                }
            });
            if (best == std::numeric_limits<std::size_t>::max()) throw_empty_window(row, col);
            out.set_pixel(row * image.width() + col, distinct[best].view());
        }
    }
    return out;
}

inline VectorImage flat_marginal(const VectorImage& image, const StructuringElement& se,
                                 Extremum which, int sign) {
    const std::size_t m = image.channels();
    VectorImage out(image.width(), image.height(), m);
    std::vector<double> acc(m);
    for (std::size_t row = 0; row < image.height(); ++row) {
        for (std::size_t col = 0; col < image.width(); ++col) {
            bool any = false;
            for_each_in_window(image, se, sign, row, col, [&](std::size_t q) {
                const auto v = image.pixel(q);
                for (std::size_t k = 0; k < m; ++k) {
                    if (!any) acc[k] = v[k];
                    else acc[k] = which == Extremum::Sup ? std::max(acc[k], v[k]) : std::min(acc[k], v[k]);
                }
                any = true;
            });
            if (!any) throw_empty_window(row, col);
            out.set_pixel(row * image.width() + col, acc);
        }
    }
    return out;
}

inline VectorImage flat(const VectorImage& image, const StructuringElement& se,
                        const OrderScheme& order, Extremum which, int sign) {
    if (order.is_marginal()) return flat_marginal(image, se, which, sign);
    return flat_total(image, se, order, which, sign);
}

} // namespace detail

/// Dilation: output(p) = sup { I(p - s) : s in S, p - s in D }.
inline VectorImage dilate(const VectorImage& image, const StructuringElement& se,
                          const OrderScheme& order) {
    return detail::flat(image, se, order, Extremum::Sup, -1);
}

/// Erosion: output(p) = inf { I(p + s) : s in S, p + s in D }.
inline VectorImage erode(const VectorImage& image, const StructuringElement& se,
                         const OrderScheme& order) {
    return detail::flat(image, se, order, Extremum::Inf, +1);
}

/// Opening: erosion followed by dilation with the same structuring element.
inline VectorImage opening(const VectorImage& image, const StructuringElement& se,
                           const OrderScheme& order) {
    return dilate(erode(image, se, order), se, order);
}

/// Closing: dilation followed by erosion.
inline VectorImage closing(const VectorImage& image, const StructuringElement& se,
                           const OrderScheme& order) {
    return erode(dilate(image, se, order), se, order);
}

inline VectorImage apply(Operator op, const VectorImage& image, const StructuringElement& se,
                         const OrderScheme& order) {
    switch (op) {
    case Operator::Dilate: return dilate(image, se, order);
    case Operator::Erode: return erode(image, se, order);
    case Operator::Open: return opening(image, se, order);
    case Operator::Close: return closing(image, se, order);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown operator");
}

} // namespace morphlat
