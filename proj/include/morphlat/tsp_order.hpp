#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "morphlat/error.hpp"
#include "morphlat/image.hpp"
#include "morphlat/metric.hpp"
#include "morphlat/orders.hpp"

namespace morphlat {

/// Cyclic visit order over distinct values; `cost` includes the closing edge.
struct Tour {
    std::vector<VectorValue> sequence;
    double cost = 0.0;
};

enum class Heuristic { NearestNeighbor, FarthestInsertion };

constexpr std::string_view heuristic_name(Heuristic h) noexcept {
    return h == Heuristic::NearestNeighbor ? "nearest_neighbor" : "farthest_insertion";
}

/// Open path length: sum of the k-1 consecutive distances.
inline double path_length(std::span<const VectorValue> list, const Metric& metric) {
    double total = 0.0;
    for (std::size_t i = 1; i < list.size(); ++i) total += metric(list[i - 1], list[i]);
    return total;
}

/// Cyclic tour length: path length plus the closing edge back to the first value.
inline double total_variation(std::span<const VectorValue> list, const Metric& metric) {
    if (list.empty()) throw Error(ErrorCode::EmptySet, "total variation of an empty list");
    return path_length(list, metric) + metric(list.back(), list.front());
}

namespace detail {

inline void require_distinct(std::span<const VectorValue> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySet, "tour over an empty value set");
    std::unordered_set<VectorValue> seen;
    for (const auto& v : values) {
        require_same_dimension(v.view(), values.front().view());
        if (!seen.insert(v).second) {
            throw Error(ErrorCode::InvalidArgument, "tour values must be distinct: " + to_string(v.view()));
        }
    }
}

inline Tour make_tour(std::span<const VectorValue> values, const std::vector<std::size_t>& order,
                      const Metric& metric) {
    Tour t;
    t.sequence.reserve(order.size());
    for (std::size_t i : order) t.sequence.push_back(values[i]);
    t.cost = total_variation(t.sequence, metric);
    return t;
}

} // namespace detail

/// Greedy tour: from `start`, repeatedly move to the closest unvisited value.
/// Equally close candidates are resolved towards the lexicographically smaller value.
inline Tour nearest_neighbor_tour(std::span<const VectorValue> values, const Metric& metric,
                                  std::size_t start) {
    detail::require_distinct(values);
    const std::size_t k = values.size();
    if (start >= k) throw Error(ErrorCode::InvalidArgument, "start index out of range");

    std::vector<bool> visited(k, false);
    std::vector<std::size_t> order{start};
    visited[start] = true;
    std::size_t current = start;
    for (std::size_t step = 1; step < k; ++step) {
        std::size_t best = k;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            if (visited[j]) continue;
            const double d = metric(values[current], values[j]);
            if (d < best_d || (d == best_d && lex_compare(values[j], values[best]) < 0)) {
                best = j;
                best_d = d;
            }
        }
        visited[best] = true;
        order.push_back(best);
        current = best;
    }
    return detail::make_tour(values, order, metric);
}

/// Farthest insertion: seed with the two mutually farthest values, then
/// repeatedly take the unrouted value farthest from the tour and insert it
/// where the tour grows least. Ties go to the lexicographically smaller value
/// and to the earliest slot.
inline Tour farthest_insertion_tour(std::span<const VectorValue> values, const Metric& metric) {
    detail::require_distinct(values);
    const std::size_t k = values.size();
    if (k == 1) return detail::make_tour(values, {0}, metric);

    auto lex_less = [&](std::size_t a, std::size_t b) { return lex_compare(values[a], values[b]) < 0; };

    // Seed pair, stored as (lex smaller, lex larger).
    std::size_t sa = 0, sb = 1;
    double seed_d = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            std::size_t a = i, b = j;
            if (lex_less(b, a)) std::swap(a, b);
            const double d = metric(values[a], values[b]);
            const bool better = d > seed_d ||
                                (d == seed_d && (lex_less(a, sa) || (a == sa && lex_less(b, sb))));
            if (better) {
                sa = a;
                sb = b;
                seed_d = d;
            }
        }
    }

    std::vector<std::size_t> tour{sa, sb};
    std::vector<bool> routed(k, false);
    routed[sa] = routed[sb] = true;

    // Distance from each unrouted value to its nearest tour vertex.
    std::vector<double> to_tour(k);
    for (std::size_t i = 0; i < k; ++i) {
        to_tour[i] = std::min(metric(values[i], values[sa]), metric(values[i], values[sb]));
    }

    for (std::size_t added = 2; added < k; ++added) {
        std::size_t pick = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (routed[i]) continue;
            if (pick == k || to_tour[i] > to_tour[pick] ||
                (to_tour[i] == to_tour[pick] && lex_less(i, pick))) {
                pick = i;
            }
        }

        std::size_t slot = 0;
        double best_inc = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < tour.size(); ++s) {
            const auto& a = values[tour[s]];
            const auto& b = values[tour[(s + 1) % tour.size()]];
            const double inc = metric(a, values[pick]) + metric(values[pick], b) - metric(a, b);
            if (inc < best_inc) {
                best_inc = inc;
                slot = s;
            }
        }
        tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(slot + 1), pick);
        routed[pick] = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (!routed[i]) to_tour[i] = std::min(to_tour[i], metric(values[i], values[pick]));
        }
    }
    return detail::make_tour(values, tour, metric);
}

/// Opens a tour into a list by removing its longest edge (the first one on
/// ties), then orients it so the first value's Euclidean norm does not exceed
/// the last's. Equal norms keep the rotation's orientation.
inline std::vector<VectorValue> cut_tour(const Tour& tour, const Metric& metric) {
    const auto& seq = tour.sequence;
    if (seq.empty()) throw Error(ErrorCode::EmptySet, "cannot cut an empty tour");
    const std::size_t k = seq.size();
    if (k == 1) return seq;

    std::size_t longest = 0;
    double longest_d = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = metric(seq[i], seq[(i + 1) % k]);
        if (d > longest_d) {
            longest_d = d;
            longest = i;
        }
    }

    std::vector<VectorValue> list;
    list.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) list.push_back(seq[(longest + i) % k]);
    if (euclidean_norm(list.front().view()) > euclidean_norm(list.back().view())) {
        std::reverse(list.begin(), list.end());
    }
    return list;
}

struct TspOrder {
    RankOrder order;
    Heuristic heuristic = Heuristic::NearestNeighbor;
    double tour_cost = 0.0;    ///< cyclic length of the winning tour
    double path_length = 0.0;  ///< open length of the cut list
};

/// TSP order over V(image): runs nearest neighbour (from the lexicographically
/// smallest value) and farthest insertion, keeps the shorter tour (nearest
/// neighbour on an exact tie), cuts it and ranks values by list position.
inline TspOrder build_tsp_order(const VectorImage& image, const Metric& metric) {
    const auto values = distinct_values(image);  // lexicographic, so index 0 is the NN start
    const Tour nn = nearest_neighbor_tour(values, metric, 0);
    const Tour fi = farthest_insertion_tour(values, metric);
    const bool use_fi = fi.cost < nn.cost;
    const Tour& best = use_fi ? fi : nn;

    auto list = cut_tour(best, metric);
    TspOrder result;
    result.heuristic = use_fi ? Heuristic::FarthestInsertion : Heuristic::NearestNeighbor;
    result.tour_cost = best.cost;
    result.path_length = path_length(list, metric);
    result.order = RankOrder(std::move(list));
    return result;
}

} // namespace morphlat
