#include "sgeom/koszul.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgeom {

namespace {

// J1 atoms over the precomputed jets.

J1 comp_j1(const FieldJets& x, std::size_t i, std::size_t n) {
    J1 r{x.comp[i], Vec(n, 0.0)};
    for (std::size_t k = 0; k < n; ++k) r.g[k] = x.d(k, i);
    return r;
}

J1 dcomp_j1(const FieldJets& x, std::size_t k, std::size_t i, std::size_t n) {
    J1 r{x.d(k, i), Vec(n, 0.0)};
    for (std::size_t l = 0; l < n; ++l) r.g[l] = x.d2[i](k, l);
    return r;
}

J1 metric_j1(const MetricJets& g, std::size_t i, std::size_t j) {
    J1 r{g.g(i, j), Vec(g.n, 0.0)};
    for (std::size_t k = 0; k < g.n; ++k) r.g[k] = g.dg[k](i, j);
    return r;
}

J1 dmetric_j1(const MetricJets& g, std::size_t k, std::size_t i, std::size_t j) {
    J1 r{g.dg[k](i, j), Vec(g.n, 0.0)};
    for (std::size_t l = 0; l < g.n; ++l) r.g[l] = g.d2(k, l)(i, j);
    return r;
}

// X <Y,Z> as a first-order jet: sum_k X^k d_k(g_ij Y^i Z^j).
J1 directional_pairing_j1(const MetricJets& g, const FieldJets& x, const FieldJets& y,
                          const FieldJets& z) {
    const std::size_t n = g.n;
    J1 acc = J1::constant(0.0, n);
    for (std::size_t k = 0; k < n; ++k) {
        J1 ds = J1::constant(0.0, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ds += dmetric_j1(g, k, i, j) * comp_j1(y, i, n) * comp_j1(z, j, n);
                ds += metric_j1(g, i, j) *
                      (dcomp_j1(y, k, i, n) * comp_j1(z, j, n) +
                       comp_j1(y, i, n) * dcomp_j1(z, k, j, n));
            }
        acc += comp_j1(x, k, n) * ds;
    }
    return acc;
}

// [Y,Z]^m as a first-order jet.
J1 bracket_comp_j1(const FieldJets& y, const FieldJets& z, std::size_t m, std::size_t n) {
    J1 acc = J1::constant(0.0, n);
    for (std::size_t i = 0; i < n; ++i)
        acc += comp_j1(y, i, n) * dcomp_j1(z, i, m, n) - comp_j1(z, i, n) * dcomp_j1(y, i, m, n);
    return acc;
}

// <A, [Y,Z]> as a first-order jet.
J1 pairing_with_bracket_j1(const MetricJets& g, const FieldJets& a, const FieldJets& y,
                           const FieldJets& z) {
    const std::size_t n = g.n;
    J1 acc = J1::constant(0.0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const J1 ai = comp_j1(a, i, n);
        for (std::size_t m = 0; m < n; ++m)
            acc += metric_j1(g, i, m) * ai * bracket_comp_j1(y, z, m, n);
    }
    return acc;
}

// Value-only counterparts (first derivatives of the fields suffice).

double directional_pairing(const MetricJets& g, const FieldJets& x, const FieldJets& y,
                           const FieldJets& z) {
    const std::size_t n = g.n;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double ds = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ds += g.dg[k](i, j) * y.comp[i] * z.comp[j] +
                      g.g(i, j) * (y.d(k, i) * z.comp[j] + y.comp[i] * z.d(k, j));
        acc += x.comp[k] * ds;
    }
    return acc;
}

double pairing_with_bracket(const MetricJets& g, const FieldJets& a, const FieldJets& y,
                            const FieldJets& z) {
    const std::size_t n = g.n;
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        double wm = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            wm += y.comp[i] * z.d(i, m) - z.comp[i] * y.d(i, m);
        for (std::size_t i = 0; i < n; ++i) acc += g.g(i, m) * a.comp[i] * wm;
    }
    return acc;
}

}  // namespace

J1 kosz_j1(const MetricJets& g, const FieldJets& x, const FieldJets& y, const FieldJets& z) {
    J1 r = directional_pairing_j1(g, x, y, z) + directional_pairing_j1(g, y, z, x) -
           directional_pairing_j1(g, z, x, y) - pairing_with_bracket_j1(g, x, y, z) +
           pairing_with_bracket_j1(g, y, z, x) + pairing_with_bracket_j1(g, z, x, y);
    return r * 0.5;
}

double kosz_value(const MetricJets& g, const FieldJets& x, const FieldJets& y,
                  const FieldJets& z) {
    return 0.5 * (directional_pairing(g, x, y, z) + directional_pairing(g, y, z, x) -
                  directional_pairing(g, z, x, y) - pairing_with_bracket(g, x, y, z) +
                  pairing_with_bracket(g, y, z, x) + pairing_with_bracket(g, z, x, y));
}

ChristoffelFirst::ChristoffelFirst(const MetricJets& g, Point p)
    : n_(g.n), p_(std::move(p)), gamma_(n_ * n_ * n_, 0.0), dgamma_(n_ * n_ * n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                gamma_[(i * n_ + j) * n_ + k] =
                    0.5 * (g.dg[i](j, k) + g.dg[j](i, k) - g.dg[k](i, j));
                for (std::size_t l = 0; l < n_; ++l)
                    dgamma_[((l * n_ + i) * n_ + j) * n_ + k] =
                        0.5 * (g.d2(i, l)(j, k) + g.d2(j, l)(i, k) - g.d2(k, l)(i, j));
            }
}

Vec ChristoffelFirst::covector(std::size_t i, std::size_t j) const {
    Vec v(n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = gamma(i, j, k);
    return v;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonDegenerate: return "non-degenerate";
        case Verdict::RadicalStationary: return "radical-stationary";
        case Verdict::NotRadicalStationary: return "not-radical-stationary";
        case Verdict::SemiRegularProbePassed: return "semi-regular-probe-passed";
    }
    return "?";
}

KoszulEvaluator::KoszulEvaluator(MetricField g, double rank_tol)
    : g_(std::move(g)), rank_tol_(rank_tol) {}

double KoszulEvaluator::kosz(const VectorField& x, const VectorField& y, const VectorField& z,
                             const Point& p) const {
    const MetricJets gj = g_.jets(p);
    return kosz_value(gj, field_jets(x, p), field_jets(y, p), field_jets(z, p));
}

J1 KoszulEvaluator::kosz_jet(const VectorField& x, const VectorField& y, const VectorField& z,
                             const Point& p) const {
    const MetricJets gj = g_.jets(p);
    return kosz_j1(gj, field_jets(x, p), field_jets(y, p), field_jets(z, p));
}

ChristoffelFirst KoszulEvaluator::christoffel_first(const Point& p) const {
    return ChristoffelFirst(g_.jets(p), p);
}

EvaluableOneForm KoszulEvaluator::connection_form(const VectorField& x,
                                                  const VectorField& y) const {
    const MetricField g = g_;
    return EvaluableOneForm([g, x, y](const Point& p) {
        const MetricJets gj = g.jets(p);
        const FieldJets fx = field_jets(x, p);
        const FieldJets fy = field_jets(y, p);
        const std::size_t n = gj.n;
        OneFormJet o;
        o.comps.assign(n, 0.0);
        o.grad = Mat(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const J1 ck = kosz_j1(gj, coordinate_field_jets(k, n), fx, fy);
            o.comps[k] = ck.v;
            for (std::size_t i = 0; i < n; ++i) o.grad(i, k) = ck.g[i];
        }
        return o;
    });
}

Vec KoszulEvaluator::kosz_covector(const MetricJets& gj, const FieldJets& x,
                                   const FieldJets& y) const {
    const std::size_t n = gj.n;
    Vec v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = kosz_value(gj, x, y, coordinate_field_jets(k, n));
    return v;
}

ContractionResult KoszulEvaluator::kosz_contract(const VectorField& x, const VectorField& y,
                                                 const VectorField& z, const VectorField& t,
                                                 const Point& p) const {
    const MetricJets gj = g_.jets(p);
    const Vec a = kosz_covector(gj, field_jets(x, p), field_jets(y, p));
    const Vec b = kosz_covector(gj, field_jets(z, p), field_jets(t, p));
    const RadicalDecomposition dec = decompose_matrix(gj.g, p, rank_tol_);
    return cocontract(dec, a, b);
}

ClassificationReport KoszulEvaluator::radical_stationary_check(const std::vector<Point>& points,
                                                               double tol) const {
    if (points.empty())
        throw std::invalid_argument("radical_stationary_check needs a nonempty sample set");
    ClassificationReport rep;
    rep.tol = tol;
    rep.reduction_note =
        "checked on coordinate pairs only: the Koszul form is function-linear in its first "
        "and third slots, and the Leibniz term in the second slot adds g(Y,Z) df, which is "
        "a flat covector and already lies in the image; so coordinate pairs decide the "
        "condition for all fields (verdict applies at the sampled points)";

    const std::size_t n = chart().dim();
    bool all_full_rank = true;
    for (const Point& p : points) {
        const MetricJets gj = g_.jets(p);
        const ChristoffelFirst ch(gj, p);
        const RadicalDecomposition dec = decompose_matrix(gj.g, p, rank_tol_);
        PointClassification pc;
        pc.point = p;
        pc.rank = dec.rank;
        if (!dec.full_rank()) all_full_rank = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const Vec gam = ch.covector(i, j);
                const ImageTest t2 = in_image(dec, gam, tol);
                pc.max_residual =
                    std::max(pc.max_residual, t2.residual / std::max(1.0, norm(gam)));
            }
        rep.max_residual = std::max(rep.max_residual, pc.max_residual);
        rep.points.push_back(std::move(pc));
    }

    if (all_full_rank)
        rep.verdict = Verdict::NonDegenerate;
    else if (rep.max_residual <= tol)
        rep.verdict = Verdict::RadicalStationary;
    else
        rep.verdict = Verdict::NotRadicalStationary;
    return rep;
}

namespace {

// Richardson extrapolation of f(h_k), h_k = h0 / 2^k, toward h -> 0.
// Returns the diagonal of the tableau.
std::vector<double> richardson_diagonal(const std::vector<double>& f) {
    std::vector<std::vector<double>> r(f.size());
    std::vector<double> diag;
    for (std::size_t k = 0; k < f.size(); ++k) {
        r[k].resize(k + 1);
        r[k][0] = f[k];
        double pow2 = 1.0;
        for (std::size_t j = 1; j <= k; ++j) {
            pow2 *= 2.0;
            r[k][j] = (pow2 * r[k][j - 1] - r[k - 1][j - 1]) / (pow2 - 1.0);
        }
        diag.push_back(r[k][k]);
    }
    return diag;
}

}  // namespace

ProbeReport KoszulEvaluator::semi_regular_probe(const VectorField& x, const VectorField& y,
                                                const VectorField& z, const VectorField& t,
                                                const Point& a, const Point& b, int samples,
                                                double tol) const {
    if (samples < 3) throw std::invalid_argument("semi_regular_probe needs at least 3 samples");
    const std::size_t n = a.size();
    auto at = [&](double s) {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = a[i] + s * (b[i] - a[i]);
        return p;
    };

    ProbeReport rep;
    for (int k = 0; k < samples; ++k) {
        const double h = 0.25 / static_cast<double>(1 << k);
        rep.samples_below.push_back(kosz_contract(x, y, z, t, at(0.5 - h)).value);
        rep.samples_above.push_back(kosz_contract(x, y, z, t, at(0.5 + h)).value);
        if (!std::isfinite(rep.samples_below.back()) || !std::isfinite(rep.samples_above.back()))
            rep.finite = false;
    }

    const Point mid = at(0.5);
    const MetricJets gj = g_.jets(mid);
    const Vec ca = kosz_covector(gj, field_jets(x, mid), field_jets(y, mid));
    const Vec cb = kosz_covector(gj, field_jets(z, mid), field_jets(t, mid));
    const RadicalDecomposition dec = decompose_matrix(gj.g, mid, rank_tol_);
    const ContractionResult mc = cocontract(dec, ca, cb);
    rep.midpoint_value = mc.value;
    rep.midpoint_image_residual = mc.max_relative_residual(ca, cb);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!rep.finite) {
        rep.converged = false;
        rep.limit_below = rep.limit_above = nan;
        return rep;
    }

    auto settle = [&](const std::vector<double>& f, double& limit) {
        const std::vector<double> diag = richardson_diagonal(f);
        const double last = diag[diag.size() - 1];
        const double prev = diag[diag.size() - 2];
        const bool ok = std::isfinite(last) &&
                        std::abs(last - prev) <= tol * std::max(1.0, std::abs(last));
        limit = ok ? last : nan;
        return ok;
    };
    const bool cb_ok = settle(rep.samples_below, rep.limit_below);
    const bool ca_ok = settle(rep.samples_above, rep.limit_above);
    rep.converged = cb_ok && ca_ok;
    if (rep.converged) {
        const double scale = std::max({1.0, std::abs(rep.limit_below), std::abs(rep.limit_above)});
        rep.limits_agree = std::abs(rep.limit_below - rep.limit_above) <= tol * scale;
        rep.matches_pointwise =
            rep.limits_agree &&
            std::abs(0.5 * (rep.limit_below + rep.limit_above) - rep.midpoint_value) <=
                tol * std::max(1.0, std::abs(rep.midpoint_value));
    }
    rep.passed = rep.finite && rep.converged && rep.limits_agree;
    return rep;
}

}  // namespace sgeom
