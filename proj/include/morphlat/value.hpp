#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "morphlat/error.hpp"

namespace morphlat {

using ValueView = std::span<const double>;

/// A point of the value set: m finite real components.
///
/// Equality is exact component equality. Values decoded from 8-bit images
/// live on the grid {0, 1/255, ..., 1}, so no tolerance is needed.
class VectorValue {
public:
    VectorValue() = default;
    VectorValue(std::initializer_list<double> components)
        : components_(components) { validate(); }
    explicit VectorValue(std::vector<double> components)
        : components_(std::move(components)) { validate(); }
    explicit VectorValue(ValueView components)
        : components_(components.begin(), components.end()) { validate(); }

    std::size_t size() const noexcept { return components_.size(); }
    double operator[](std::size_t i) const { return components_[i]; }
    ValueView view() const noexcept { return components_; }
    const std::vector<double>& components() const noexcept { return components_; }

    friend bool operator==(const VectorValue&, const VectorValue&) = default;

    // Container ordering only (lexicographic on components). Morphology goes
    // through OrderScheme, never through this operator.
    friend std::weak_ordering operator<=>(const VectorValue& a, const VectorValue& b) {
        return std::lexicographical_compare_three_way(
            a.components_.begin(), a.components_.end(),
            b.components_.begin(), b.components_.end(),
            [](double x, double y) { return std::weak_order(x, y); });
    }

private:
    void validate() const {
        for (double c : components_) {
            if (!std::isfinite(c)) {
                throw Error(ErrorCode::NonFiniteValue, "vector value has a non-finite component");
            }
        }
    }

    std::vector<double> components_;
};

inline void require_same_dimension(ValueView a, ValueView b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "dimension mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
    }
}

/// Euclidean norm, used for orienting cut tours regardless of the metric.
inline double euclidean_norm(ValueView v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

inline std::string to_string(ValueView v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

} // namespace morphlat

template <>
struct std::hash<morphlat::VectorValue> {
    std::size_t operator()(const morphlat::VectorValue& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (double c : v.components()) {
            // +0.0 and -0.0 compare equal, so they must hash equal
            const double key = c == 0.0 ? 0.0 : c;
            h ^= std::hash<double>{}(key) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};
