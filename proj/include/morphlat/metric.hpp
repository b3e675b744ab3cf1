#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "morphlat/value.hpp"

namespace morphlat {

enum class MetricKind { Euclidean, Manhattan, Chebyshev };

/// Distance on the value space.
class Metric {
public:
    constexpr Metric() = default;
    constexpr explicit Metric(MetricKind kind) : kind_(kind) {}

    constexpr MetricKind kind() const noexcept { return kind_; }

    double operator()(ValueView a, ValueView b) const {
        require_same_dimension(a, b);
        double acc = 0.0;
        switch (kind_) {
        case MetricKind::Euclidean:
            for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
            return std::sqrt(acc);
        case MetricKind::Manhattan:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        case MetricKind::Chebyshev:
            for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
            return acc;
        }
        return acc;
    }

    double operator()(const VectorValue& a, const VectorValue& b) const {
        return (*this)(a.view(), b.view());
    }

    std::string_view name() const noexcept { return metric_name(kind_); }

    static constexpr std::string_view metric_name(MetricKind kind) noexcept {
        switch (kind) {
        case MetricKind::Euclidean: return "euclidean";
        case MetricKind::Manhattan: return "manhattan";
        case MetricKind::Chebyshev: return "chebyshev";
        }
        return "unknown";
    }

    static std::optional<Metric> parse(std::string_view name) {
        for (auto kind : {MetricKind::Euclidean, MetricKind::Manhattan, MetricKind::Chebyshev}) {
            if (name == metric_name(kind)) return Metric(kind);
        }
        return std::nullopt;
    }

private:
    MetricKind kind_ = MetricKind::Euclidean;
};

} // namespace morphlat
