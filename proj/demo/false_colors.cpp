// Supremum and infimum of red and blue under the marginal and lexicographic
// orders, then the TSP order of a small synthetic image.

#include <iostream>
#include <vector>

#include "morphlat/morphlat.hpp"

int main() {
    using namespace morphlat;
    const std::vector<VectorValue> red_blue{{1, 0, 0}, {0, 0, 1}};

    const auto marginal = OrderScheme::marginal();
    const auto lex = OrderScheme::lexicographic();
    std::cout << "marginal sup " << to_string(marginal.extrema(red_blue, Extremum::Sup).view())
              << "  inf " << to_string(marginal.extrema(red_blue, Extremum::Inf).view()) << '\n';
    std::cout << "lex      sup " << to_string(lex.extrema(red_blue, Extremum::Sup).view())
              << "  inf " << to_string(lex.extrema(red_blue, Extremum::Inf).view()) << '\n';

    const auto image = generate_synthetic(7, 16, 16, 64);
    const Metric metric;
    const auto tsp = build_tsp_order(image, metric);
    const auto values = distinct_values(image);
    std::cout << values.size() << " distinct values; tsp path " << tsp.path_length << " ("
              << heuristic_name(tsp.heuristic) << "), lex path " << path_length(values, metric) << '\n';

    const auto se = StructuringElement::square(3);
    const auto tsp_order = OrderScheme::rank(tsp.order, "tsp");
    for (auto op : {Operator::Dilate, Operator::Erode, Operator::Open, Operator::Close}) {
        const auto a = irregularity_index(image, apply(op, image, se, tsp_order), metric);
        const auto b = irregularity_index(image, apply(op, image, se, lex), metric);
        std::cout << operator_name(op) << ": phi tsp " << a.phi_percent << "%, lex " << b.phi_percent << "%\n";
    }
}
