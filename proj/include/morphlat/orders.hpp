#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "morphlat/error.hpp"
#include "morphlat/value.hpp"

namespace morphlat {

enum class Extremum { Sup, Inf };

/// Lexicographic comparison: the first differing component decides.
inline std::strong_ordering lex_compare(ValueView x, ValueView y) {
    require_same_dimension(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return std::strong_ordering::less;
        if (x[i] > y[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

inline std::strong_ordering lex_compare(const VectorValue& x, const VectorValue& y) {
    return lex_compare(x.view(), y.view());
}

/// Component-wise supremum or infimum. The result may be a false value,
/// i.e. not a member of `values`.
inline VectorValue marginal_extrema(std::span<const VectorValue> values, Extremum which) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptySet, "extrema of empty set undefined");
    }
    std::vector<double> out = values.front().components();
    for (const auto& v : values.subspan(1)) {
        require_same_dimension(v.view(), out);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = which == Extremum::Sup ? std::max(out[i], v[i]) : std::min(out[i], v[i]);
        }
    }
    return VectorValue(std::move(out));
}

/// A total order given as an explicit list: values()[r] has rank r.
class RankOrder {
public:
    RankOrder() = default;

    explicit RankOrder(std::vector<VectorValue> values) : values_(std::move(values)) {
        rank_.reserve(values_.size());
        for (std::size_t r = 0; r < values_.size(); ++r) {
            if (r > 0) require_same_dimension(values_[r].view(), values_[0].view());
            if (!rank_.emplace(values_[r], r).second) {
                throw Error(ErrorCode::InvalidArgument,
                            "rank order values must be distinct: " + to_string(values_[r].view()));
            }
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<VectorValue>& values() const noexcept { return values_; }
    bool contains(const VectorValue& v) const { return rank_.contains(v); }

    std::size_t rank(const VectorValue& v) const {
        auto it = rank_.find(v);
        if (it == rank_.end()) {
            throw Error(ErrorCode::OutsideOrderSupport,
                        "value outside order support: " + to_string(v.view()));
        }
        return it->second;
    }

    const VectorValue& value_at(std::size_t r) const { return values_.at(r); }

private:
    std::vector<VectorValue> values_;
    std::unordered_map<VectorValue, std::size_t> rank_;
};

struct MarginalOrder {};
struct LexicographicOrder {};

/// One of the supported orderings. Marginal is partial and only provides
/// extrema; lexicographic and rank orders are total.
class OrderScheme {
public:
    static OrderScheme marginal() { return OrderScheme(MarginalOrder{}); }
    static OrderScheme lexicographic() { return OrderScheme(LexicographicOrder{}); }
    static OrderScheme rank(RankOrder order, std::string name = "rank") {
        OrderScheme s(std::make_shared<const RankOrder>(std::move(order)));
        s.name_ = std::move(name);
        return s;
    }

    bool is_total() const noexcept { return !std::holds_alternative<MarginalOrder>(kind_); }
    bool is_marginal() const noexcept { return std::holds_alternative<MarginalOrder>(kind_); }
    bool is_lexicographic() const noexcept { return std::holds_alternative<LexicographicOrder>(kind_); }
    bool is_rank() const noexcept { return std::holds_alternative<RankPtr>(kind_); }

    const std::string& name() const noexcept { return name_; }

    const RankOrder& rank_order() const {
        if (!is_rank()) throw Error(ErrorCode::InvalidArgument, "order is not a rank order");
        return *std::get<RankPtr>(kind_);
    }

    /// Three-way comparison; only defined for total orders.
    std::strong_ordering compare(const VectorValue& x, const VectorValue& y) const {
        if (is_marginal()) {
            throw Error(ErrorCode::PartialOrder, "marginal order has no total comparator");
        }
        if (is_lexicographic()) return lex_compare(x, y);
        const auto& r = rank_order();
        return r.rank(x) <=> r.rank(y);
    }

    /// Supremum or infimum of a finite non-empty set. For total orders the
    /// result is always a member of `values`.
    VectorValue extrema(std::span<const VectorValue> values, Extremum which) const {
        if (is_marginal()) return marginal_extrema(values, which);
        if (values.empty()) {
            throw Error(ErrorCode::EmptySet, "extrema of empty set undefined");
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            const auto c = compare(values[i], values[best]);
            if (which == Extremum::Sup ? c > 0 : c < 0) best = i;
        }
        if (values.size() == 1) compare(values[0], values[0]);  // support check
        return values[best];
    }

    /// Integer keys realising this total order on `distinct` (which must hold
    /// distinct values): keys[i] < keys[j] iff distinct[i] < distinct[j].
    std::vector<std::size_t> keys_for(std::span<const VectorValue> distinct) const {
        std::vector<std::size_t> keys(distinct.size());
        if (is_marginal()) {
            throw Error(ErrorCode::PartialOrder, "marginal order has no total comparator");
        }
        if (is_rank()) {
            const auto& r = rank_order();
            for (std::size_t i = 0; i < distinct.size(); ++i) keys[i] = r.rank(distinct[i]);
            return keys;
        }
        std::vector<std::size_t> idx(distinct.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return lex_compare(distinct[a], distinct[b]) < 0;
        });
        for (std::size_t pos = 0; pos < idx.size(); ++pos) keys[idx[pos]] = pos;
        return keys;
    }

private:
    using RankPtr = std::shared_ptr<const RankOrder>;
    using Kind = std::variant<MarginalOrder, LexicographicOrder, RankPtr>;

    explicit OrderScheme(Kind kind) : kind_(std::move(kind)) {
        if (std::holds_alternative<MarginalOrder>(kind_)) name_ = "marginal";
        else if (std::holds_alternative<LexicographicOrder>(kind_)) name_ = "lex";
    }

    Kind kind_;
    std::string name_;
};

/// Extremum under a total order; rejects the marginal order.
inline VectorValue order_extrema(std::span<const VectorValue> values, const OrderScheme& order,
                                 Extremum which) {
    if (!order.is_total()) {
        throw Error(ErrorCode::PartialOrder, "order_extrema requires a total order");
    }
    return order.extrema(values, which);
}

} // namespace morphlat
