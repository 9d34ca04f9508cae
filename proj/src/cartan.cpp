#include "sgeom/cartan.hpp"

#include "sgeom/random_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace sgeom {

namespace {

double apply_bilinear(const Mat& m, const Vec& a, const Vec& b) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) v += m(i, j) * a[i] * b[j];
    return v;
}

double pairing(const Mat& g, const Vec& a, const Vec& b) { return apply_bilinear(g, a, b); }

bool rank_dropped(const KoszulEvaluator& k, const Point& p) {
    return !decompose(k.metric(), p, k.rank_tol()).full_rank();
}

}  // namespace

ResidualReport make_residual(std::string identity, const Point& p, std::string fields,
                             double left, double right) {
    ResidualReport r;
    r.identity = std::move(identity);
    r.point = p;
    r.fields = std::move(fields);
    r.left = left;
    r.right = right;
    r.abs_residual = std::abs(left - right);
    r.rel_residual = r.abs_residual / std::max({1.0, std::abs(left), std::abs(right)});
    return r;
}

ResidualReport koszul_decomposition_residual(const KoszulEvaluator& k, const VectorField& x,
                                             const VectorField& y, const VectorField& z,
                                             const Point& p) {
    const double left = 2.0 * k.kosz(x, y, z, p);

    const Mat dy = exterior_derivative_oneform(EvaluableOneForm::flat_of(k.metric(), y), p);
    const Mat ly = lie_derivative_metric(k.metric(), y, p);
    const Vec xv = x.eval(p);
    const Vec zv = z.eval(p);
    const double right = apply_bilinear(dy, xv, zv) + apply_bilinear(ly, xv, zv);

    ResidualReport r = make_residual("koszul-decomposition", p, "X,Y,Z", left, right);
    r.on_locus = rank_dropped(k, p);
    return r;
}

ResidualReport flat_derivative_residual(const KoszulEvaluator& k, const VectorField& x,
                                        const VectorField& y, const VectorField& z,
                                        const Point& p) {
    const Mat dy = exterior_derivative_oneform(EvaluableOneForm::flat_of(k.metric(), y), p);
    const double left = apply_bilinear(dy, x.eval(p), z.eval(p));
    const double right = k.kosz(x, y, z, p) - k.kosz(z, y, x, p);

    ResidualReport r = make_residual("flat-derivative", p, "X,Y,Z", left, right);
    r.on_locus = rank_dropped(k, p);
    return r;
}

ResidualReport first_structural_residual(const KoszulEvaluator& k, const VectorField& x,
                                         const VectorField& y, const VectorField& z,
                                         const Point& p) {
    const Mat dx = exterior_derivative_oneform(EvaluableOneForm::flat_of(k.metric(), x), p);
    const double left = apply_bilinear(dx, y.eval(p), z.eval(p));

    const MetricJets gj = k.metric().jets(p);
    const FieldJets fx = field_jets(x, p);
    const FieldJets fy = field_jets(y, p);
    const FieldJets fz = field_jets(z, p);
    const Vec kyx = k.kosz_covector(gj, fy, fx);
    const Vec kzx = k.kosz_covector(gj, fz, fx);
    const Vec yflat = gj.g * fy.comp;
    const Vec zflat = gj.g * fz.comp;
    const RadicalDecomposition dec = decompose_matrix(gj.g, p, k.rank_tol());
    const ContractionResult c1 = cocontract(dec, kyx, zflat);
    const ContractionResult c2 = cocontract(dec, kzx, yflat);
    const double right = c1.value - c2.value;

    ResidualReport r = make_residual("first-structural", p, "X;(Y,Z)", left, right);
    r.on_locus = !dec.full_rank();
    // The flat covectors are in the image by construction; only the Koszul
    // covectors can escape it.
    const double defect = std::max(c1.residual_left / std::max(1.0, norm(kyx)),
                                   c2.residual_left / std::max(1.0, norm(kzx)));
    r.out_of_image = defect > k.rank_tol() * 10.0;
    return r;
}

ResidualReport second_structural_residual(const RiemannEvaluator& r, const VectorField& x,
                                          const VectorField& y, const VectorField& z,
                                          const VectorField& t, const Point& p) {
    const KoszulEvaluator& k = r.koszul();
    const RiemannValue rv = r.riemann(x, y, z, t, p);

    const Mat dw = exterior_derivative_oneform(k.connection_form(x, y), p);
    const double dterm = apply_bilinear(dw, z.eval(p), t.eval(p));
    const ContractionResult c1 = k.kosz_contract(z, x, t, y, p);
    const ContractionResult c2 = k.kosz_contract(t, x, z, y, p);
    const double right = dterm + c1.value - c2.value;

    ResidualReport rep = make_residual("second-structural", p, "X,Y;(Z,T)", rv.value, right);
    rep.on_locus = rv.on_locus;
    rep.out_of_image = rv.image_residual > k.rank_tol() * 10.0;
    return rep;
}

std::vector<ResidualReport> frame_structural_check(const KoszulEvaluator& k,
                                                   const std::vector<VectorField>& frame,
                                                   const Point& p, double frame_tol) {
    const MetricJets gj = k.metric().jets(p);
    const std::size_t n = gj.n;
    if (frame.size() != n)
        throw std::invalid_argument("frame_structural_check: frame must have n fields");

    const RadicalDecomposition dec = decompose_matrix(gj.g, p, k.rank_tol());
    if (!dec.full_rank())
        throw std::invalid_argument(
            "frame_structural_check: metric is degenerate at the sample point");

    std::vector<FieldJets> fe;
    for (const VectorField& e : frame) fe.push_back(field_jets(e, p));

    // Orthonormality at p: <E_a,E_b> = eps_a delta_ab.
    std::vector<double> eps(n, 1.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const double ip = pairing(gj.g, fe[a].comp, fe[b].comp);
            if (a == b) {
                if (std::abs(std::abs(ip) - 1.0) > frame_tol)
                    throw std::invalid_argument(
                        "frame_structural_check: frame field " + std::to_string(a) +
                        " is not unit (|<E,E>| = " + std::to_string(std::abs(ip)) + ")");
                eps[a] = ip < 0.0 ? -1.0 : 1.0;
            } else if (std::abs(ip) > frame_tol) {
                throw std::invalid_argument("frame_structural_check: frame fields " +
                                            std::to_string(a) + "," + std::to_string(b) +
                                            " are not orthogonal");
            }
        }
    }

    // omega_{sa}(d_i) and the flats E_s-flat(d_j).
    std::vector<std::vector<Vec>> w(n, std::vector<Vec>(n));
    std::vector<Vec> eflat(n);
    for (std::size_t s = 0; s < n; ++s) {
        eflat[s] = gj.g * fe[s].comp;
        for (std::size_t a = 0; a < n; ++a) {
            w[s][a].resize(n);
            for (std::size_t i = 0; i < n; ++i)
                w[s][a][i] = kosz_value(gj, coordinate_field_jets(i, n), fe[s], fe[a]);
        }
    }

    std::vector<ResidualReport> out;
    for (std::size_t a = 0; a < n; ++a) {
        const Mat da = exterior_derivative_oneform(
            EvaluableOneForm::flat_of(k.metric(), frame[a]), p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double wedge = 0.0;
                for (std::size_t s = 0; s < n; ++s)
                    wedge += eps[s] * (w[s][a][i] * eflat[s][j] - w[s][a][j] * eflat[s][i]);
                ResidualReport r =
                    make_residual("frame-structural", p,
                                  "E" + std::to_string(a) + ";(d" + std::to_string(i) + ",d" +
                                      std::to_string(j) + ")",
                                  da(i, j), -wedge);
                out.push_back(std::move(r));
            }
    }

    // omega_ab = -omega_ba, componentwise.
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(w[a][b][i] + w[b][a][i]));
            ResidualReport r = make_residual(
                "frame-antisymmetry", p, "E" + std::to_string(a) + ",E" + std::to_string(b),
                worst, 0.0);
            out.push_back(std::move(r));
        }
    return out;
}

std::vector<ResidualReport> koszul_property_residuals(const KoszulEvaluator& k,
                                                      const VectorField& x,
                                                      const VectorField& y,
                                                      const VectorField& z, const ExprPtr& f,
                                                      const Point& p) {
    const MetricField& g = k.metric();
    const MetricJets gj = g.jets(p);
    const std::size_t n = gj.n;
    const bool locus = !decompose_matrix(gj.g, p, k.rank_tol()).full_rank();

    const double kxyz = k.kosz(x, y, z, p);
    const Jet2 fj = eval_jet2(*f, p);
    const Vec xv = x.eval(p);
    const Vec yv = y.eval(p);
    const Vec zv = z.eval(p);
    const double xf = dot(xv, fj.grad);

    std::vector<ResidualReport> out;
    auto push = [&](const char* name, const char* fields, double left, double right) {
        ResidualReport r = make_residual(name, p, fields, left, right);
        r.on_locus = locus;
        out.push_back(std::move(r));
    };

    // Additivity and R-linearity, exercised slot by slot with a fixed
    // combination a X + b Y.
    const double a = 1.5, b = -0.75;
    push("koszul-linearity-1", "aX+bY,Y,Z", k.kosz(combine(a, x, b, y), y, z, p),
         a * kxyz + b * k.kosz(y, y, z, p));
    push("koszul-linearity-2", "X,aY+bZ,Z", k.kosz(x, combine(a, y, b, z), z, p),
         a * kxyz + b * k.kosz(x, z, z, p));
    push("koszul-linearity-3", "X,Y,aZ+bX", k.kosz(x, y, combine(a, z, b, x), p),
         a * kxyz + b * k.kosz(x, y, x, p));

    // Function-linearity in the first slot.
    push("koszul-flinear-first", "fX,Y,Z", k.kosz(scaled(f, x), y, z, p), fj.value * kxyz);

    // Leibniz rule in the second slot: kosz(X,fY,Z) = f kosz + X(f)<Y,Z>.
    push("koszul-leibniz-second", "X,fY,Z", k.kosz(x, scaled(f, y), z, p),
         fj.value * kxyz + xf * pairing(gj.g, yv, zv));

    // Function-linearity in the third slot.
    push("koszul-flinear-third", "X,Y,fZ", k.kosz(x, y, scaled(f, z), p), fj.value * kxyz);

    // Metricity: kosz(X,Y,Z) + kosz(X,Z,Y) = X<Y,Z>.
    {
        double xyz_pair = 0.0;  // X<Y,Z> from the metric and field jets
        const FieldJets fxj = field_jets(x, p);
        const FieldJets fyj = field_jets(y, p);
        const FieldJets fzj = field_jets(z, p);
        for (std::size_t kk = 0; kk < n; ++kk) {
            double dk = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    dk += gj.dg[kk](i, j) * fyj.comp[i] * fzj.comp[j] +
                          gj.g(i, j) * (fyj.d(kk, i) * fzj.comp[j] + fyj.comp[i] * fzj.d(kk, j));
            xyz_pair += fxj.comp[kk] * dk;
        }
        push("koszul-metric", "X,Y,Z", kxyz + k.kosz(x, z, y, p), xyz_pair);

        // Cyclic relation: kosz(X,Y,Z) + kosz(Y,Z,X) = Y<Z,X> + <[X,Y],Z>.
        double yzx_pair = 0.0;
        for (std::size_t kk = 0; kk < n; ++kk) {
            double dk = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    dk += gj.dg[kk](i, j) * fzj.comp[i] * fxj.comp[j] +
                          gj.g(i, j) * (fzj.d(kk, i) * fxj.comp[j] + fzj.comp[i] * fxj.d(kk, j));
            yzx_pair += fyj.comp[kk] * dk;
        }
        const Vec br = lie_bracket(x, y, p);
        push("koszul-cyclic", "X,Y,Z", kxyz + k.kosz(y, z, x, p),
             yzx_pair + pairing(gj.g, br, zv));

        // Torsionlessness: kosz(X,Y,Z) - kosz(Y,X,Z) = <[X,Y],Z>.
        push("koszul-torsionless", "X,Y,Z", kxyz - k.kosz(y, x, z, p), pairing(gj.g, br, zv));
    }

    // Lie-derivative relation: kosz(X,Y,Z) + kosz(Z,Y,X) = (L_Y g)(Z,X).
    push("koszul-lie", "X,Y,Z", kxyz + k.kosz(z, y, x, p),
         apply_bilinear(lie_derivative_metric(g, y, p), zv, xv));

    return out;
}

void VerifySummary::add(ResidualReport r, double tol) {
    auto& m = max_residual[r.identity];
    m = std::max(m, r.rel_residual);
    if (r.rel_residual > tol) ++failures;
    reports.push_back(std::move(r));
}

VerifySummary verify_suite(const KoszulEvaluator& k, const std::vector<Point>& points,
                           const std::vector<VectorField>* frame, const VerifyOptions& opt) {
    VerifySummary sum;
    const Chart& chart = k.chart();
    std::mt19937_64 rng(opt.seed);
    const RiemannEvaluator rie(k);

    for (const Point& p : points) {
        for (int s = 0; s < opt.field_samples_per_point; ++s) {
            const VectorField x = random_vector_field(rng, chart, 2, 2.0);
            const VectorField y = random_vector_field(rng, chart, 2, 2.0);
            const VectorField z = random_vector_field(rng, chart, 2, 2.0);
            const VectorField t = random_vector_field(rng, chart, 2, 2.0);
            const ExprPtr f = random_polynomial(rng, chart, 2, 2.0);

            for (ResidualReport& r : koszul_property_residuals(k, x, y, z, f, p))
                sum.add(std::move(r), opt.tol);
            sum.add(koszul_decomposition_residual(k, x, y, z, p), opt.tol);
            sum.add(flat_derivative_residual(k, x, y, z, p), opt.tol);
            sum.add(first_structural_residual(k, x, y, z, p), opt.tol);
            sum.add(second_structural_residual(rie, x, y, z, t, p), opt.tol);
        }
        if (frame && decompose(k.metric(), p, k.rank_tol()).full_rank()) {
            for (ResidualReport& r : frame_structural_check(k, *frame, p))
                sum.add(std::move(r), opt.tol);
        }
    }
    return sum;
}

}  // namespace sgeom
