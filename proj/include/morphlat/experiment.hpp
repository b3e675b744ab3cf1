#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "morphlat/image.hpp"
#include "morphlat/image_io.hpp"
#include "morphlat/irregularity.hpp"
#include "morphlat/metric.hpp"
#include "morphlat/morphology.hpp"
#include "morphlat/orders.hpp"
#include "morphlat/tsp_order.hpp"

namespace morphlat {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Synthetic images

namespace detail {

// mt19937_64 output is fully specified by the standard; the std::
// distributions are not, so uniform draws are derived from raw bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double quantize8(double v) {
    return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
}

} // namespace detail

/// Deterministic RGB test image with at most `palette_size` distinct colors.
///
/// A smooth random field (correlated luminance plus weaker chroma, built from
/// a few low-frequency cosines and mild noise) is sampled at random pixels to
/// pick the palette; every pixel then takes its nearest palette color. The
/// result has flat regions and gradients rather than white noise.
inline VectorImage generate_synthetic(std::uint64_t seed, std::size_t width, std::size_t height,
                                      std::size_t palette_size) {
    if (palette_size == 0) throw Error(ErrorCode::InvalidArgument, "palette size must be at least 1");
    if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "image size must be positive");
    std::mt19937_64 rng(seed);
    auto u = [&] { return detail::uniform01(rng); };

    struct Wave { double amp, fx, fy, phase; };
    auto make_field = [&](double base, double amp, int waves) {
        std::vector<Wave> w;
        for (int k = 0; k < waves; ++k) {
            w.push_back({amp * (0.4 + 0.6 * u()), 2.5 * u(), 2.5 * u(), 6.283185307179586 * u()});
        }
        return std::pair{base, w};
    };
    auto eval = [&](const std::pair<double, std::vector<Wave>>& f, double x, double y) {
        double v = f.first;
        for (const auto& w : f.second) {
            v += w.amp * std::cos(6.283185307179586 * (w.fx * x + w.fy * y) + w.phase);
        }
        return v;
    };

    const auto luma = make_field(0.25 + 0.5 * u(), 0.25, 3);
    const std::array chroma{make_field(0.0, 0.12, 2), make_field(0.0, 0.12, 2), make_field(0.0, 0.12, 2)};

    const std::size_t n = width * height;
    std::vector<std::array<double, 3>> field(n);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const double x = static_cast<double>(c) / static_cast<double>(width);
            const double y = static_cast<double>(r) / static_cast<double>(height);
            const double l = eval(luma, x, y);
            for (std::size_t ch = 0; ch < 3; ++ch) {
                const double noise = 0.04 * (u() - 0.5);
                field[r * width + c][ch] = detail::quantize8(l + eval(chroma[ch], x, y) + noise);
            }
        }
    }

    std::vector<std::array<double, 3>> palette;
    for (std::size_t k = 0; k < palette_size; ++k) {
        palette.push_back(field[static_cast<std::size_t>(u() * static_cast<double>(n)) % n]);
    }

    std::vector<double> data;
    data.reserve(n * 3);
    for (const auto& px : field) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < palette.size(); ++k) {
            double d = 0.0;
            for (std::size_t ch = 0; ch < 3; ++ch) d += (px[ch] - palette[k][ch]) * (px[ch] - palette[k][ch]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        data.insert(data.end(), palette[best].begin(), palette[best].end());
    }
    return VectorImage(width, height, 3, std::move(data));
}

// ---------------------------------------------------------------------------
// Orders over an image and path export

enum class OrderKind { Tsp, Lex, Marginal };

constexpr std::string_view order_kind_name(OrderKind k) noexcept {
    switch (k) {
    case OrderKind::Tsp: return "tsp";
    case OrderKind::Lex: return "lex";
    case OrderKind::Marginal: return "marginal";
    }
    return "unknown";
}

/// V(image) listed in increasing order under a total order.
inline std::vector<VectorValue> ordered_values(const VectorImage& image, const OrderScheme& order) {
    auto values = distinct_values(image);
    const auto keys = order.keys_for(values);
    std::vector<VectorValue> out(values.size());
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = values[idx[i]];
    return out;
}

/// An order built for one image, with the length of its value path.
struct ImageOrder {
    OrderKind kind = OrderKind::Lex;
    OrderScheme scheme = OrderScheme::lexicographic();
    std::string heuristic = "none";
    std::optional<double> path_length;  ///< empty for the (partial) marginal order
    std::optional<double> tour_cost;
};

inline ImageOrder build_image_order(OrderKind kind, const VectorImage& image, const Metric& metric) {
    ImageOrder o;
    o.kind = kind;
    switch (kind) {
    case OrderKind::Tsp: {
        auto tsp = build_tsp_order(image, metric);
        o.heuristic = std::string(heuristic_name(tsp.heuristic));
        o.path_length = tsp.path_length;
        o.tour_cost = tsp.tour_cost;
        o.scheme = OrderScheme::rank(std::move(tsp.order), "tsp");
        break;
    }
    case OrderKind::Lex: {
        const auto values = distinct_values(image);
        o.path_length = path_length(values, metric);
        o.tour_cost = total_variation(values, metric);
        break;
    }
    case OrderKind::Marginal:
        o.scheme = OrderScheme::marginal();
        break;
    }
    return o;
}

/// Path-export document: the values of the image in increasing order.
inline json path_export_document(const VectorImage& image, const OrderScheme& order,
                                 const Metric& metric) {
    if (!order.is_total()) {
        throw Error(ErrorCode::PartialOrder, "path export requires a total order");
    }
    const auto values = ordered_values(image, order);
    json points = json::array();
    for (const auto& v : values) points.push_back(v.components());
    json doc;
    doc["order_name"] = order.name();
    doc["metric"] = std::string(metric.name());
    doc["points"] = std::move(points);
    doc["path_length"] = path_length(values, metric);
    doc["tour_cost"] = total_variation(values, metric);
    return doc;
}

inline void export_path(const VectorImage& image, const OrderScheme& order, const Metric& metric,
                        const std::filesystem::path& file) {
    const auto doc = path_export_document(image, order, metric);
    std::ofstream out(file);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + file.string() + "'");
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Experiment configuration

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SyntheticSpec {
    std::size_t count = 0;
    std::size_t width = 16;
    std::size_t height = 16;
    std::size_t palette = 64;
};

struct ExperimentConfig {
    std::vector<std::string> inputs;
    SyntheticSpec synthetic;
    std::vector<Operator> operators{Operator::Dilate, Operator::Erode, Operator::Open, Operator::Close};
    std::vector<OrderKind> orders{OrderKind::Tsp, OrderKind::Lex};
    std::string se = "square:3";
    Metric metric{};
    std::string out_dir = "morphlat-out";
    std::uint64_t seed = 0;
    bool emit_images = false;
    bool emit_paths = false;
};

inline std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        if (end > start) out.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

inline Operator parse_operator(std::string_view name) {
    for (auto op : {Operator::Dilate, Operator::Erode, Operator::Open, Operator::Close}) {
        if (name == operator_name(op)) return op;
    }
    throw ConfigError("unknown operator '" + std::string(name) + "'");
}

inline OrderKind parse_order(std::string_view name) {
    for (auto k : {OrderKind::Tsp, OrderKind::Lex, OrderKind::Marginal}) {
        if (name == order_kind_name(k)) return k;
    }
    throw ConfigError("unknown order '" + std::string(name) + "'");
}

/// Parses "16x16" (width x height).
inline std::pair<std::size_t, std::size_t> parse_size(std::string_view text) {
    const auto x = text.find('x');
    auto number = [&](std::string_view s) -> std::size_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            s.size() > 6) {
            throw ConfigError("bad image size '" + std::string(text) + "', expected WxH");
        }
        return std::stoul(std::string(s));
    };
    if (x == std::string_view::npos) throw ConfigError("bad image size '" + std::string(text) + "', expected WxH");
    const auto w = number(text.substr(0, x));
    const auto h = number(text.substr(x + 1));
    if (w == 0 || h == 0) throw ConfigError("image size must be positive");
    return {w, h};
}

/// Fills `cfg` from a JSON config document. Unknown keys are rejected.
inline void apply_config_json(ExperimentConfig& cfg, const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "inputs") {
                cfg.inputs = value.get<std::vector<std::string>>();
            } else if (key == "operators") {
                cfg.operators.clear();
                for (const auto& s : value.get<std::vector<std::string>>()) cfg.operators.push_back(parse_operator(s));
            } else if (key == "orders") {
                cfg.orders.clear();
                for (const auto& s : value.get<std::vector<std::string>>()) cfg.orders.push_back(parse_order(s));
            } else if (key == "se") {
                cfg.se = value.get<std::string>();
            } else if (key == "metric") {
                const auto m = Metric::parse(value.get<std::string>());
                if (!m) throw ConfigError("unknown metric '" + value.get<std::string>() + "'");
                cfg.metric = *m;
            } else if (key == "out") {
                cfg.out_dir = value.get<std::string>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "emit_images") {
                cfg.emit_images = value.get<bool>();
            } else if (key == "emit_paths") {
                cfg.emit_paths = value.get<bool>();
            } else if (key == "synthetic") {
                for (const auto& [skey, svalue] : value.items()) {
                    if (skey == "count") cfg.synthetic.count = svalue.get<std::size_t>();
                    else if (skey == "size") std::tie(cfg.synthetic.width, cfg.synthetic.height) = parse_size(svalue.get<std::string>());
                    else if (skey == "palette") cfg.synthetic.palette = svalue.get<std::size_t>();
                    else throw ConfigError("unknown synthetic config key '" + skey + "'");
                }
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.operators.empty()) throw ConfigError("at least one operator is required");
    if (cfg.orders.empty()) throw ConfigError("at least one order is required");
    if (cfg.inputs.empty() && cfg.synthetic.count == 0) {
        throw ConfigError("no input images: give --input paths or a synthetic image count");
    }
    if (cfg.synthetic.count > 0 && cfg.synthetic.palette == 0) throw ConfigError("palette must be at least 1");
    try {
        (void)StructuringElement::parse(cfg.se);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------------------
// Running

struct ResultRow {
    std::string image;
    std::string op;
    std::string order;
    double phi_percent = 0.0;
    double d1 = 0.0;
    double w1 = 0.0;
    std::optional<double> path_length;
    std::optional<double> tour_cost;
    std::string heuristic;
    std::string se;
    std::string metric;
    double wall_ms = 0.0;
};

struct RunError {
    std::string image;
    std::string op;
    std::string order;
    std::string message;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<RunError> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> image_ids;
};

inline std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

inline const char* csv_header() {
    return "image,operator,order,phi_percent,d1,w1,path_length,tour_cost,heuristic,se,metric,wall_ms";
}

inline std::string csv_line(const ResultRow& r) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v, 9) : std::string(); };
    std::ostringstream s;
    s << r.image << ',' << r.op << ',' << r.order << ',' << format_number(r.phi_percent, 6) << ','
      << format_number(r.d1, 9) << ',' << format_number(r.w1, 9) << ',' << opt(r.path_length) << ','
      << opt(r.tour_cost) << ',' << r.heuristic << ',' << r.se << ',' << r.metric << ','
      << format_number(r.wall_ms, 3);
    return s.str();
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = std::string(csv_header()) + "\n";
    for (const auto& r : rows) out += csv_line(r) + "\n";
    return out;
}

/// Per-order mean irregularity and path comparison across images.
inline json summarize(const ExperimentResult& result) {
    std::map<std::string, std::pair<double, std::size_t>> phi;
    for (const auto& r : result.rows) {
        auto& [sum, count] = phi[r.order];
        sum += r.phi_percent;
        ++count;
    }
    json mean = json::object();
    for (const auto& [order, acc] : phi) mean[order] = acc.second ? acc.first / static_cast<double>(acc.second) : 0.0;

    // Images where the TSP path is strictly shorter than the lex path, and
    // (image, operator) pairs where TSP is strictly more irregular.
    std::map<std::string, std::optional<double>> tsp_len, lex_len;
    std::map<std::pair<std::string, std::string>, std::pair<std::optional<double>, std::optional<double>>> pair_phi;
    for (const auto& r : result.rows) {
        if (r.order == "tsp") { tsp_len[r.image] = r.path_length; pair_phi[{r.image, r.op}].first = r.phi_percent; }
        if (r.order == "lex") { lex_len[r.image] = r.path_length; pair_phi[{r.image, r.op}].second = r.phi_percent; }
    }
    std::size_t compared = 0, tsp_shorter = 0, pairs = 0, tsp_more_irregular = 0;
    for (const auto& [img, t] : tsp_len) {
        auto it = lex_len.find(img);
        if (it == lex_len.end() || !t || !it->second) continue;
        ++compared;
        if (*t < *it->second) ++tsp_shorter;
    }
    for (const auto& [key, p] : pair_phi) {
        if (!p.first || !p.second) continue;
        ++pairs;
        if (*p.first > *p.second) ++tsp_more_irregular;
    }
    json s;
    s["mean_phi_percent"] = mean;
    s["images_compared"] = compared;
    s["tsp_path_shorter"] = tsp_shorter;
    s["pairs_compared"] = pairs;
    s["tsp_more_irregular_pairs"] = tsp_more_irregular;
    return s;
}

/// Runs every (image, operator, order) combination. Rows come out ordered by
/// image (input order), operator and order (canonical enumeration order).
/// A failing row is recorded in `errors` and the run continues.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    namespace fs = std::filesystem;
    const auto se = StructuringElement::parse(cfg.se);
    const std::string se_desc = se.descriptor();
    const std::string metric_name(cfg.metric.name());

    auto canonical_ops = cfg.operators;
    std::sort(canonical_ops.begin(), canonical_ops.end());
    canonical_ops.erase(std::unique(canonical_ops.begin(), canonical_ops.end()), canonical_ops.end());
    auto canonical_orders = cfg.orders;
    std::sort(canonical_orders.begin(), canonical_orders.end());
    canonical_orders.erase(std::unique(canonical_orders.begin(), canonical_orders.end()), canonical_orders.end());

    const fs::path out_dir(cfg.out_dir);
    if (cfg.emit_images) fs::create_directories(out_dir / "images");
    if (cfg.emit_paths) fs::create_directories(out_dir / "paths");

    ExperimentResult result;

    struct Source { std::string id; std::optional<std::string> path; std::uint64_t seed = 0; };
    std::vector<Source> sources;
    for (const auto& p : cfg.inputs) sources.push_back({fs::path(p).stem().string(), p, 0});
    for (std::size_t i = 0; i < cfg.synthetic.count; ++i) {
        const auto s = cfg.seed + i;
        sources.push_back({"synth-" + std::to_string(s), std::nullopt, s});
    }

    for (const auto& src : sources) {
        result.image_ids.push_back(src.id);
        VectorImage image;
        try {
            image = src.path ? load_image(*src.path)
                             : generate_synthetic(src.seed, cfg.synthetic.width, cfg.synthetic.height,
                                                  cfg.synthetic.palette);
        } catch (const std::exception& e) {
            result.errors.push_back({src.id, "", "", e.what()});
            continue;
        }

        std::map<OrderKind, ImageOrder> built;
        for (auto kind : canonical_orders) {
            try {
                built.emplace(kind, build_image_order(kind, image, cfg.metric));
                if (cfg.emit_paths && kind != OrderKind::Marginal) {
                    export_path(image, built.at(kind).scheme, cfg.metric,
                                out_dir / "paths" / (src.id + "_" + std::string(order_kind_name(kind)) + ".json"));
                }
            } catch (const std::exception& e) {
                result.errors.push_back({src.id, "", std::string(order_kind_name(kind)), e.what()});
            }
        }
        if (built.contains(OrderKind::Tsp) && built.contains(OrderKind::Lex)) {
            const double tsp_cost = *built.at(OrderKind::Tsp).tour_cost;
            const double lex_cost = *built.at(OrderKind::Lex).tour_cost;
            if (tsp_cost > lex_cost) {
                result.warnings.push_back("heuristic regression on " + src.id + ": tsp tour " +
                                          format_number(tsp_cost, 6) + " > lex tour " + format_number(lex_cost, 6));
            }
        }

        for (auto op : canonical_ops) {
            for (auto kind : canonical_orders) {
                auto it = built.find(kind);
                if (it == built.end()) continue;  // order construction already recorded an error
                const auto& order = it->second;
                try {
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto output = apply(op, image, se, order.scheme);
                    const auto irr = irregularity_index(image, output, cfg.metric);
                    const auto t1 = std::chrono::steady_clock::now();

                    ResultRow row;
                    row.image = src.id;
                    row.op = std::string(operator_name(op));
                    row.order = std::string(order_kind_name(kind));
                    row.phi_percent = irr.phi_percent;
                    row.d1 = irr.pixelwise;
                    row.w1 = irr.wasserstein;
                    row.path_length = order.path_length;
                    row.tour_cost = order.tour_cost;
                    row.heuristic = order.heuristic;
                    row.se = se_desc;
                    row.metric = metric_name;
                    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    result.rows.push_back(std::move(row));

                    if (cfg.emit_images && (output.channels() == 1 || output.channels() == 3)) {
                        save_image(output, out_dir / "images" /
                                               (src.id + "_" + std::string(operator_name(op)) + "_" +
                                                std::string(order_kind_name(kind)) + ".png"));
                    }
                } catch (const std::exception& e) {
                    result.errors.push_back({src.id, std::string(operator_name(op)),
                                             std::string(order_kind_name(kind)), e.what()});
                }
            }
        }
    }
    return result;
}

inline json to_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    json doc;
    json meta;
    meta["value_scale"] = "samples normalized to [0,1] (8-bit value / 255)";
    meta["phi_formula"] = "phi_percent = 100 * (d1 - w1) / d1, 0 when d1 == 0";
    meta["distance_sums"] = "d1 and w1 are unnormalized sums over pixels";
    meta["path_length"] = "open path over the ordered distinct values; tour_cost adds the closing edge";
    meta["boundary"] = "windows truncated at the image border";
    meta["se"] = StructuringElement::parse(cfg.se).descriptor();
    meta["metric"] = std::string(cfg.metric.name());
    doc["metadata"] = meta;

    json rows = json::array();
    for (const auto& r : result.rows) {
        json j;
        j["image"] = r.image;
        j["operator"] = r.op;
        j["order"] = r.order;
        j["phi_percent"] = r.phi_percent;
        j["d1"] = r.d1;
        j["w1"] = r.w1;
        j["path_length"] = r.path_length ? json(*r.path_length) : json(nullptr);
        j["tour_cost"] = r.tour_cost ? json(*r.tour_cost) : json(nullptr);
        j["heuristic"] = r.heuristic;
        j["se"] = r.se;
        j["metric"] = r.metric;
        j["wall_ms"] = r.wall_ms;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    doc["summary"] = summarize(result);

    json errors = json::array();
    for (const auto& e : result.errors) {
        errors.push_back({{"image", e.image}, {"operator", e.op}, {"order", e.order}, {"message", e.message}});
    }
    doc["errors"] = std::move(errors);
    doc["warnings"] = result.warnings;
    return doc;
}

/// Writes results.csv and results.json into the output directory.
inline void write_reports(const ExperimentConfig& cfg, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    {
        std::ofstream csv(fs::path(cfg.out_dir) / "results.csv");
        if (!csv) throw Error(ErrorCode::Io, "cannot write results.csv in '" + cfg.out_dir + "'");
        csv << to_csv(result.rows);
    }
    std::ofstream js(fs::path(cfg.out_dir) / "results.json");
    if (!js) throw Error(ErrorCode::Io, "cannot write results.json in '" + cfg.out_dir + "'");
    js << to_json(cfg, result).dump(2) << '\n';
}

} // namespace morphlat
