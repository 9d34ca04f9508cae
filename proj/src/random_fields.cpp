#include "sgeom/random_fields.hpp"

namespace sgeom {

namespace {

// One monomial: c * prod coord^e_i with total degree <= max_degree.
ExprPtr random_monomial(std::mt19937_64& rng, const Chart& chart, int max_degree, double range) {
    std::uniform_real_distribution<double> coeff(-range, range);
    std::uniform_int_distribution<int> deg(0, max_degree);
    ExprPtr m = make_number(coeff(rng));
    int budget = deg(rng);
    for (std::size_t i = 0; i < chart.dim() && budget > 0; ++i) {
        std::uniform_int_distribution<int> e(0, budget);
        const int ei = e(rng);
        budget -= ei;
        if (ei == 1)
            m = make_binary(Expr::Kind::Mul, m, make_coord(i));
        else if (ei > 1)
            m = make_binary(Expr::Kind::Mul, m,
                            make_binary(Expr::Kind::Pow, make_coord(i),
                                        make_number(static_cast<double>(ei))));
    }
    return m;
}

}  // namespace

ExprPtr random_polynomial(std::mt19937_64& rng, const Chart& chart, int max_degree,
                          double range) {
    std::uniform_int_distribution<int> terms(1, 3);
    const int t = terms(rng);
    ExprPtr e = random_monomial(rng, chart, max_degree, range);
    for (int i = 1; i < t; ++i)
        e = make_binary(Expr::Kind::Add, e, random_monomial(rng, chart, max_degree, range));
    return e;
}

VectorField random_vector_field(std::mt19937_64& rng, const Chart& chart, int max_degree,
                                double range) {
    std::vector<ExprPtr> comps;
    for (std::size_t i = 0; i < chart.dim(); ++i)
        comps.push_back(random_polynomial(rng, chart, max_degree, range));
    return VectorField(chart, std::move(comps));
}

Point random_point(std::mt19937_64& rng, const std::vector<std::pair<double, double>>& box) {
    Point p(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        std::uniform_real_distribution<double> d(box[i].first, box[i].second);
        p[i] = d(rng);
    }
    return p;
}

}  // namespace sgeom
