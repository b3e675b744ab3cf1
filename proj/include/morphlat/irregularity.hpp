#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "morphlat/image.hpp"
#include "morphlat/metric.hpp"
#include "morphlat/transport.hpp"

namespace morphlat {

/// Sum over pixels of d(I(x), J(x)).
inline double pixelwise_distance(const VectorImage& input, const VectorImage& output,
                                 const Metric& metric) {
    require_same_shape(input, output);
    double total = 0.0;
    for (std::size_t i = 0; i < input.pixel_count(); ++i) {
        total += metric(input.pixel(i), output.pixel(i));
    }
    return total;
}

/// Value multisets of two images as a transportation instance with unit mass
/// per pixel.
struct TransportInstance {
    std::vector<VectorValue> sources;
    std::vector<std::int64_t> source_mass;
    std::vector<VectorValue> sinks;
    std::vector<std::int64_t> sink_mass;

    CostMatrix costs(const Metric& metric) const {
        CostMatrix c{sources.size(), sinks.size(), {}};
        c.cost.reserve(c.rows * c.cols);
        for (const auto& s : sources)
            for (const auto& t : sinks) c.cost.push_back(metric(s, t));
        return c;
    }
};

/// Builds the compressed instance. With `cancel_shared_mass`, mass present at
/// the same value in both images is removed first; W1 under a metric cost
/// depends only on the difference of the two distributions, so the optimum is
/// unchanged.
inline TransportInstance make_transport_instance(const VectorImage& a, const VectorImage& b,
                                                 bool cancel_shared_mass = true) {
    require_same_shape(a, b);
    std::map<VectorValue, std::int64_t> balance;  // >0: surplus in a, <0: surplus in b
    std::map<VectorValue, std::int64_t> mass_a, mass_b;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        ++mass_a[a.value(i)];
        ++mass_b[b.value(i)];
    }
    TransportInstance inst;
    if (!cancel_shared_mass) {
        for (auto& [v, m] : mass_a) { inst.sources.push_back(v); inst.source_mass.push_back(m); }
        for (auto& [v, m] : mass_b) { inst.sinks.push_back(v); inst.sink_mass.push_back(m); }
        return inst;
    }
    for (auto& [v, m] : mass_a) balance[v] += m;
    for (auto& [v, m] : mass_b) balance[v] -= m;
    for (auto& [v, m] : balance) {
        if (m > 0) { inst.sources.push_back(v); inst.source_mass.push_back(m); }
        else if (m < 0) { inst.sinks.push_back(v); inst.sink_mass.push_back(-m); }
    }
    return inst;
}

/// Exact Wasserstein-1 distance between the pixel-value distributions of two
/// images, with unit mass per pixel (an unnormalized sum, like D1).
inline double wasserstein1(const VectorImage& a, const VectorImage& b, const Metric& metric) {
    const auto inst = make_transport_instance(a, b);
    if (inst.sources.empty()) return 0.0;
    return solve_transport(inst.costs(metric), inst.source_mass, inst.sink_mass).cost;
}

/// Same quantity through a dense pixel-level assignment. Cubic in the pixel
/// count, so meant for small images and cross-checks.
inline double wasserstein1_by_assignment(const VectorImage& a, const VectorImage& b,
                                         const Metric& metric) {
    require_same_shape(a, b);
    const std::size_t n = a.pixel_count();
    CostMatrix c{n, n, {}};
    c.cost.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.cost.push_back(metric(a.pixel(i), b.pixel(j)));
    return solve_assignment(c).cost;
}

struct IrregularityResult {
    double pixelwise = 0.0;    ///< D1
    double wasserstein = 0.0;  ///< W1
    double phi_percent = 0.0;  ///< 100 * (D1 - W1) / D1, or 0 when D1 == 0
};

/// Global irregularity index between an input image and an operator output.
inline IrregularityResult irregularity_index(const VectorImage& input, const VectorImage& output,
                                             const Metric& metric) {
    IrregularityResult r;
    r.pixelwise = pixelwise_distance(input, output, metric);
    r.wasserstein = wasserstein1(input, output, metric);
    // W1 <= D1 holds exactly; the clamp only absorbs rounding in the last ulp.
    if (r.pixelwise > 0.0) {
        r.phi_percent = std::clamp(100.0 * (1.0 - r.wasserstein / r.pixelwise), 0.0, 100.0);
    }
    return r;
}

} // namespace morphlat
