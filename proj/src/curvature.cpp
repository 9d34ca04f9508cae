#include "sgeom/curvature.hpp"

#include <cmath>

namespace sgeom {

double RiemannTable::scale() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return std::max(1.0, m);
}

double SymmetryReport::max_residual() const {
    return std::max({antisym_first_pair, antisym_second_pair, pair_symmetry, first_bianchi});
}

CurvatureForm::CurvatureForm(const RiemannEvaluator& eval, VectorField x, VectorField y)
    : eval_(&eval), x_(std::move(x)), y_(std::move(y)) {}

RiemannValue CurvatureForm::operator()(const VectorField& z, const VectorField& t,
                                       const Point& p) const {
    return eval_->riemann(x_, y_, z, t, p);
}

RiemannValue RiemannEvaluator::riemann(const VectorField& x, const VectorField& y,
                                       const VectorField& z, const VectorField& t,
                                       const Point& p) const {
    const MetricJets gj = k_.metric().jets(p);
    const std::size_t n = gj.n;
    const FieldJets fx = field_jets(x, p);
    const FieldJets fy = field_jets(y, p);
    const FieldJets fz = field_jets(z, p);
    const FieldJets ft = field_jets(t, p);

    // [X,Y] with first derivatives, enough for a value-only Koszul evaluation.
    FieldJets fb;
    fb.comp.assign(n, 0.0);
    fb.d = Mat(n, n);
    fb.d2.assign(n, Mat(n, n));
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i)
            fb.comp[m] += fx.comp[i] * fy.d(i, m) - fy.comp[i] * fx.d(i, m);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                fb.d(k, m) += fx.d(k, i) * fy.d(i, m) + fx.comp[i] * fy.d2[m](i, k) -
                              fy.d(k, i) * fx.d(i, m) - fy.comp[i] * fx.d2[m](i, k);
    }

    const J1 kyzt = kosz_j1(gj, fy, fz, ft);
    const J1 kxzt = kosz_j1(gj, fx, fz, ft);
    const double deriv_terms = dot(fx.comp, kyzt.g) - dot(fy.comp, kxzt.g);
    const double bracket_term = kosz_value(gj, fb, fz, ft);

    const RadicalDecomposition dec = decompose_matrix(gj.g, p, k_.rank_tol());
    const Vec axz = k_.kosz_covector(gj, fx, fz);
    const Vec ayt = k_.kosz_covector(gj, fy, ft);
    const Vec ayz = k_.kosz_covector(gj, fy, fz);
    const Vec axt = k_.kosz_covector(gj, fx, ft);
    const ContractionResult c1 = cocontract(dec, axz, ayt);
    const ContractionResult c2 = cocontract(dec, ayz, axt);

    RiemannValue r;
    r.value = deriv_terms - bracket_term + c1.value - c2.value;
    r.image_residual =
        std::max(c1.max_relative_residual(axz, ayt), c2.max_relative_residual(ayz, axt));
    r.on_locus = !dec.full_rank();
    return r;
}

RiemannTable RiemannEvaluator::riemann_table(const Point& p) const {
    const MetricJets gj = k_.metric().jets(p);
    const std::size_t n = gj.n;
    const ChristoffelFirst ch(gj, p);
    const RadicalDecomposition dec = decompose_matrix(gj.g, p, k_.rank_tol());

    RiemannTable t;
    t.point = p;
    t.n = n;
    t.values.assign(n * n * n * n, 0.0);
    t.on_locus = !dec.full_rank();

    // Contraction table and image diagnostics of the Christoffel covectors.
    std::vector<Vec> cov(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cov[i * n + j] = ch.covector(i, j);
            const ImageTest it = in_image(dec, cov[i * n + j], k_.rank_tol());
            t.image_residual = std::max(
                t.image_residual, it.residual / std::max(1.0, norm(cov[i * n + j])));
        }
    auto contract = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return dot(cov[a * n + b], dec.pinv * cov[c * n + d]);
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    t.values[((i * n + j) * n + k) * n + l] =
                        ch.dgamma(i, j, k, l) - ch.dgamma(j, i, k, l) + contract(i, k, j, l) -
                        contract(j, k, i, l);
    return t;
}

SymmetryReport symmetry_check(const RiemannTable& t) {
    SymmetryReport r;
    r.scale = t.scale();
    const std::size_t n = t.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const double v = t.entry(i, j, k, l);
                    r.antisym_first_pair =
                        std::max(r.antisym_first_pair, std::abs(v + t.entry(j, i, k, l)));
                    r.antisym_second_pair =
                        std::max(r.antisym_second_pair, std::abs(v + t.entry(i, j, l, k)));
                    r.pair_symmetry =
                        std::max(r.pair_symmetry, std::abs(v - t.entry(k, l, i, j)));
                    r.first_bianchi = std::max(
                        r.first_bianchi,
                        std::abs(v + t.entry(j, k, i, l) + t.entry(k, i, j, l)));
                }
    return r;
}

std::vector<double> ClassicalOracle::christoffel_second(const MetricJets& g) {
    const std::size_t n = g.n;
    const Mat ginv = invert(g.g);
    const ChristoffelFirst ch(g, Point(n, 0.0));
    std::vector<double> g2(n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m) {
                double v = 0.0;
                for (std::size_t l = 0; l < n; ++l) v += ginv(m, l) * ch.gamma(i, j, l);
                g2[(i * n + j) * n + m] = v;
            }
    return g2;
}

RiemannTable ClassicalOracle::riemann_table(const MetricField& g, const Point& p) {
    const MetricJets gj = g.jets(p);
    const std::size_t n = gj.n;
    const Mat ginv = invert(gj.g);
    const ChristoffelFirst ch(gj, p);

    // Gamma^m_ij and d_k Gamma^m_ij, with d(G^-1) = -G^-1 dG G^-1.
    auto g2 = [&](std::size_t i, std::size_t j, std::size_t m) {
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l) v += ginv(m, l) * ch.gamma(i, j, l);
        return v;
    };
    std::vector<Mat> dginv(n);
    for (std::size_t k = 0; k < n; ++k) dginv[k] = -1.0 * (ginv * gj.dg[k] * ginv);
    auto dg2 = [&](std::size_t k, std::size_t i, std::size_t j, std::size_t m) {
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            v += dginv[k](m, l) * ch.gamma(i, j, l) + ginv(m, l) * ch.dgamma(k, i, j, l);
        return v;
    };

    // R(d_i, d_j) d_k = (d_i G^m_jk - d_j G^m_ik + G^m_ia G^a_jk - G^m_ja G^a_ik) d_m,
    // lowered with g in the last slot.
    RiemannTable t;
    t.point = p;
    t.n = n;
    t.values.assign(n * n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec op(n, 0.0);
                for (std::size_t m = 0; m < n; ++m) {
                    double v = dg2(i, j, k, m) - dg2(j, i, k, m);
                    for (std::size_t a = 0; a < n; ++a)
                        v += g2(i, a, m) * g2(j, k, a) - g2(j, a, m) * g2(i, k, a);
                    op[m] = v;
                }
                for (std::size_t l = 0; l < n; ++l) {
                    double v = 0.0;
                    for (std::size_t m = 0; m < n; ++m) v += gj.g(l, m) * op[m];
                    t.values[((i * n + j) * n + k) * n + l] = v;
                }
            }
    return t;
}

}  // namespace sgeom
