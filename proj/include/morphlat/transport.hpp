#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "morphlat/error.hpp"

namespace morphlat {

/// Dense row-major cost matrix.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> cost;

    double operator()(std::size_t i, std::size_t j) const { return cost[i * cols + j]; }
};

struct TransportSolution {
    double cost = 0.0;
    /// flow[i * cols + j]: integer mass moved from source i to sink j.
    std::vector<std::int64_t> flow;
    /// Dual potentials; the optimality certificate is
    /// cost(i,j) + row_potential[i] - col_potential[j] >= -tol everywhere, with
    /// equality (to tol) wherever flow > 0.
    std::vector<double> row_potential;
    std::vector<double> col_potential;
};

namespace detail {

inline double certificate_tolerance(const CostMatrix& c) {
    double scale = 1.0;
    for (double x : c.cost) scale = std::max(scale, std::abs(x));
    return 1e-9 * scale;
}

} // namespace detail

/// Checks primal feasibility, dual feasibility and complementary slackness.
/// Returns an empty string when the solution is certified optimal.
inline std::string check_transport_optimality(const CostMatrix& c, std::span<const std::int64_t> supply,
                                              std::span<const std::int64_t> demand,
                                              const TransportSolution& s) {
    const double tol = detail::certificate_tolerance(c);
    for (std::size_t i = 0; i < c.rows; ++i) {
        std::int64_t out = 0;
        for (std::size_t j = 0; j < c.cols; ++j) out += s.flow[i * c.cols + j];
        if (out != supply[i]) return "source " + std::to_string(i) + " not fully shipped";
    }
    for (std::size_t j = 0; j < c.cols; ++j) {
        std::int64_t in = 0;
        for (std::size_t i = 0; i < c.rows; ++i) in += s.flow[i * c.cols + j];
        if (in != demand[j]) return "sink " + std::to_string(j) + " not fully served";
    }
    for (std::size_t i = 0; i < c.rows; ++i) {
        for (std::size_t j = 0; j < c.cols; ++j) {
            const double reduced = c(i, j) + s.row_potential[i] - s.col_potential[j];
            if (reduced < -tol) return "dual infeasible at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (s.flow[i * c.cols + j] > 0 && reduced > tol) {
                return "complementary slackness violated at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    }
    return {};
}

/// Exact balanced transportation problem with integer masses and
/// non-negative costs, solved by successive shortest augmenting paths with
/// Johnson potentials (dense Dijkstra over the implicit residual graph).
/// The result is certified before it is returned.
inline TransportSolution solve_transport(const CostMatrix& c, std::span<const std::int64_t> supply,
                                         std::span<const std::int64_t> demand) {
    const std::size_t R = c.rows, C = c.cols;
    if (supply.size() != R || demand.size() != C || c.cost.size() != R * C) {
        throw Error(ErrorCode::ShapeMismatch, "transport instance dimensions disagree");
    }
    const auto total_supply = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
    const auto total_demand = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
    if (total_supply != total_demand) {
        throw Error(ErrorCode::InvalidArgument, "transport instance is unbalanced");
    }
    for (auto m : supply) if (m <= 0) throw Error(ErrorCode::InvalidArgument, "source masses must be positive");
    for (auto m : demand) if (m <= 0) throw Error(ErrorCode::InvalidArgument, "sink masses must be positive");
    for (double x : c.cost) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "costs must be finite and non-negative");
    }

    // Node layout: 0 = source, 1..R = rows, R+1..R+C = cols, R+C+1 = sink.
    const std::size_t S = 0, T = R + C + 1, N = R + C + 2;
    auto row_node = [](std::size_t i) { return 1 + i; };
    auto col_node = [R](std::size_t j) { return 1 + R + j; };

    TransportSolution sol;
    sol.flow.assign(R * C, 0);
    std::vector<std::int64_t> supply_left(supply.begin(), supply.end());
    std::vector<std::int64_t> demand_left(demand.begin(), demand.end());
    std::vector<double> pot(N, 0.0);

    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<double> dist(N);
    std::vector<std::size_t> parent(N);
    std::vector<bool> done(N);

    std::int64_t shipped = 0;
    while (shipped < total_supply) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent.begin(), parent.end(), none);
        std::fill(done.begin(), done.end(), false);
        dist[S] = 0.0;

        auto relax = [&](std::size_t u, std::size_t v, double cost) {
            if (done[v]) return;
            const double nd = dist[u] + cost + pot[u] - pot[v];
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
            }
        };

        for (;;) {
            std::size_t u = none;
            for (std::size_t v = 0; v < N; ++v) {
                if (!done[v] && dist[v] < inf && (u == none || dist[v] < dist[u])) u = v;
            }
            if (u == none) break;
            done[u] = true;
            if (u == S) {
                for (std::size_t i = 0; i < R; ++i)
                    if (supply_left[i] > 0) relax(S, row_node(i), 0.0);
            } else if (u <= R) {
                const std::size_t i = u - 1;
                for (std::size_t j = 0; j < C; ++j) relax(u, col_node(j), c(i, j));
                // Residual arc back to the source is never on a shortest S-path.
            } else if (u < T) {
                const std::size_t j = u - 1 - R;
                for (std::size_t i = 0; i < R; ++i)
                    if (sol.flow[i * C + j] > 0) relax(u, row_node(i), -c(i, j));
                if (demand_left[j] > 0) relax(u, T, 0.0);
            }
        }
        if (dist[T] == inf) {
            throw Error(ErrorCode::SolverFailure, "transport solver found no augmenting path");
        }

        // Unreached nodes get the largest finite label so every residual
        // arc keeps a non-negative reduced cost.
        double max_dist = 0.0;
        for (std::size_t v = 0; v < N; ++v) if (dist[v] < inf) max_dist = std::max(max_dist, dist[v]);
        for (std::size_t v = 0; v < N; ++v) pot[v] += dist[v] < inf ? dist[v] : max_dist;

        // Bottleneck along S -> row -> col -> (row -> col)* -> T.
        std::int64_t push = std::numeric_limits<std::int64_t>::max();
        for (std::size_t v = T; v != S; v = parent[v]) {
            const std::size_t u = parent[v];
            if (u == S) push = std::min(push, supply_left[v - 1]);
            else if (v == T) push = std::min(push, demand_left[u - 1 - R]);
            else if (u > R) push = std::min(push, sol.flow[(v - 1) * C + (u - 1 - R)]);
        }
        for (std::size_t v = T; v != S; v = parent[v]) {
            const std::size_t u = parent[v];
            if (u == S) supply_left[v - 1] -= push;
            else if (v == T) demand_left[u - 1 - R] -= push;
            else if (u <= R) sol.flow[(u - 1) * C + (v - 1 - R)] += push;
            else sol.flow[(v - 1) * C + (u - 1 - R)] -= push;
        }
        shipped += push;
    }

    sol.cost = 0.0;
    for (std::size_t k = 0; k < R * C; ++k) {
        if (sol.flow[k] > 0) sol.cost += static_cast<double>(sol.flow[k]) * c.cost[k];
    }
    sol.row_potential.resize(R);
    sol.col_potential.resize(C);
    for (std::size_t i = 0; i < R; ++i) sol.row_potential[i] = pot[row_node(i)];
    for (std::size_t j = 0; j < C; ++j) sol.col_potential[j] = pot[col_node(j)];

    if (auto why = check_transport_optimality(c, supply, demand, sol); !why.empty()) {
        throw Error(ErrorCode::SolverFailure, "transport optimality certificate failed: " + why);
    }
    return sol;
}

struct Assignment {
    double cost = 0.0;
    std::vector<std::size_t> row_to_col;
};

/// Square min-cost perfect matching (Hungarian method with potentials, O(n^3)).
inline Assignment solve_assignment(const CostMatrix& c) {
    if (c.rows != c.cols || c.cost.size() != c.rows * c.cols) {
        throw Error(ErrorCode::ShapeMismatch, "assignment requires a square cost matrix");
    }
    const std::size_t n = c.rows;
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; column 0 is a virtual column holding the row being added.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<bool> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment a;
    a.row_to_col.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        if (match[j] != 0) a.row_to_col[match[j] - 1] = j - 1;
    }
    for (std::size_t i = 0; i < n; ++i) a.cost += c(i, a.row_to_col[i]);
    return a;
}

} // namespace morphlat
