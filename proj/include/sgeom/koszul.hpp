#pragma once

#include "sgeom/chart.hpp"
#include "sgeom/radical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sgeom {

/// kosz(X,Y,Z) together with its coordinate gradient at the point, built from
/// the six-term formula pushed through first-order jets. The gradient needs
/// second derivatives of the metric and of the field components, nothing
/// higher.
J1 kosz_j1(const MetricJets& g, const FieldJets& x, const FieldJets& y, const FieldJets& z);

/// Value-only path; requires components and first derivatives of the fields,
/// so it also accepts bracket fields (whose second derivatives are unknown).
double kosz_value(const MetricJets& g, const FieldJets& x, const FieldJets& y,
                  const FieldJets& z);

/// Christoffel symbols of the first kind at a point: the Koszul form on
/// coordinate fields, Gamma[i][j][k] = (d_i g_jk + d_j g_ik - d_k g_ij)/2,
/// plus their coordinate derivatives from the metric Hessians.
class ChristoffelFirst {
public:
    ChristoffelFirst(const MetricJets& g, Point p);

    const Point& point() const { return p_; }
    std::size_t dim() const { return n_; }

    double gamma(std::size_t i, std::size_t j, std::size_t k) const {
        return gamma_[(i * n_ + j) * n_ + k];
    }
    /// d_l Gamma[i][j][k]
    double dgamma(std::size_t l, std::size_t i, std::size_t j, std::size_t k) const {
        return dgamma_[((l * n_ + i) * n_ + j) * n_ + k];
    }
    /// Gamma[i][j][.] as a covector.
    Vec covector(std::size_t i, std::size_t j) const;

private:
    std::size_t n_;
    Point p_;
    std::vector<double> gamma_, dgamma_;
};

enum class Verdict {
    NonDegenerate,
    RadicalStationary,
    NotRadicalStationary,
    SemiRegularProbePassed,
};

const char* verdict_name(Verdict v);

struct PointClassification {
    Point point;
    int rank = 0;
    double max_residual = 0.0;  // max over (i,j) of ||(I-P)Gamma_ij|| / max(1,||Gamma_ij||)
};

struct ClassificationReport {
    std::vector<PointClassification> points;
    Verdict verdict = Verdict::RadicalStationary;
    double tol = 0.0;
    double max_residual = 0.0;
    /// Why checking coordinate pairs suffices for the all-fields condition.
    std::string reduction_note;
};

/// One-sided limit probe of a contracted Koszul product across a degeneracy
/// point. Heuristic by construction: a passed probe is evidence, not proof.
struct ProbeReport {
    double limit_below = 0.0;   // Richardson limit approaching from t < 1/2
    double limit_above = 0.0;
    double midpoint_value = 0.0;          // pointwise contraction at the midpoint
    double midpoint_image_residual = 0.0;
    bool finite = true;         // all samples and extrapolants finite
    bool converged = true;      // extrapolation settled on both sides
    bool limits_agree = false;
    bool matches_pointwise = false;
    bool passed = false;
    std::vector<double> samples_below, samples_above;
};

class KoszulEvaluator {
public:
    explicit KoszulEvaluator(MetricField g, double rank_tol = kDefaultRankTol);

    const MetricField& metric() const { return g_; }
    const Chart& chart() const { return g_.chart(); }
    double rank_tol() const { return rank_tol_; }

    /// The six-term Koszul form.
    double kosz(const VectorField& x, const VectorField& y, const VectorField& z,
                const Point& p) const;

    /// kosz plus its coordinate gradient.
    J1 kosz_jet(const VectorField& x, const VectorField& y, const VectorField& z,
                const Point& p) const;

    ChristoffelFirst christoffel_first(const Point& p) const;

    /// One-form Z -> kosz(Z, x, y), jet-evaluable.
    EvaluableOneForm connection_form(const VectorField& x, const VectorField& y) const;

    /// Covariant contraction of kosz(x,y,.) with kosz(z,t,.) under the
    /// point's radical decomposition. Out-of-image residuals are reported,
    /// never swallowed: they are the radical-stationarity diagnostic.
    ContractionResult kosz_contract(const VectorField& x, const VectorField& y,
                                    const VectorField& z, const VectorField& t,
                                    const Point& p) const;

    /// Covectors kosz(x,y,coordinate_k) for k = 0..n-1, plus the shared
    /// decomposition, for callers that need the raw pieces.
    Vec kosz_covector(const MetricJets& gj, const FieldJets& x, const FieldJets& y) const;

    ClassificationReport radical_stationary_check(const std::vector<Point>& points,
                                                  double tol) const;

    /// Samples kosz_contract along the segment a -> b (midpoint on the
    /// degeneracy locus by convention), Richardson-extrapolates both
    /// one-sided limits and compares them with the pointwise value.
    ProbeReport semi_regular_probe(const VectorField& x, const VectorField& y,
                                   const VectorField& z, const VectorField& t,
                                   const Point& a, const Point& b, int samples = 8,
                                   double tol = 1e-6) const;

private:
    MetricField g_;
    double rank_tol_;
};

}  // namespace sgeom
