#pragma once

#include "sgeom/koszul.hpp"

namespace sgeom {

struct RiemannValue {
    double value = 0.0;
    double image_residual = 0.0;  // max relative out-of-image residual of the contractions
    bool on_locus = false;        // metric rank dropped at this point
};

/// Dense curvature table R[i][j][k][l] on coordinate fields.
struct RiemannTable {
    Point point;
    std::size_t n = 0;
    std::vector<double> values;   // n^4, index ((i n + j) n + k) n + l
    double image_residual = 0.0;  // max over Christoffel covectors used
    bool on_locus = false;        // entries use the pointwise contraction

    double entry(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return values[((i * n + j) * n + k) * n + l];
    }
    double scale() const;  // max(1, max |entry|)
};

struct SymmetryReport {
    double antisym_first_pair = 0.0;   // R_ijkl + R_jikl
    double antisym_second_pair = 0.0;  // R_ijkl + R_ijlk
    double pair_symmetry = 0.0;        // R_ijkl - R_klij
    double first_bianchi = 0.0;        // R_ijkl + R_jkil + R_kijl
    double scale = 1.0;

    double max_residual() const;
};

class RiemannEvaluator;

/// Two-form (Z,T) -> R(X,Y,Z,T) for a fixed generating pair.
class CurvatureForm {
public:
    CurvatureForm(const RiemannEvaluator& eval, VectorField x, VectorField y);

    RiemannValue operator()(const VectorField& z, const VectorField& t, const Point& p) const;

private:
    const RiemannEvaluator* eval_;
    VectorField x_, y_;
};

class RiemannEvaluator {
public:
    explicit RiemannEvaluator(KoszulEvaluator k) : k_(std::move(k)) {}
    explicit RiemannEvaluator(MetricField g, double rank_tol = kDefaultRankTol)
        : k_(std::move(g), rank_tol) {}

    const KoszulEvaluator& koszul() const { return k_; }

    /// Five-term curvature: derivative terms differentiate the Koszul form
    /// only; the contraction terms are strictly pointwise (the pseudo-inverse
    /// is never differentiated).
    RiemannValue riemann(const VectorField& x, const VectorField& y, const VectorField& z,
                         const VectorField& t, const Point& p) const;

    RiemannTable riemann_table(const Point& p) const;

    CurvatureForm curvature_form(VectorField x, VectorField y) const {
        return CurvatureForm(*this, std::move(x), std::move(y));
    }

private:
    KoszulEvaluator k_;
};

SymmetryReport symmetry_check(const RiemannTable& t);

/// Christoffel symbols of the second kind and the textbook curvature
/// assembled from them (same sign and index convention as the degenerate
/// tensor). Valid only where the metric is invertible; throws otherwise.
struct ClassicalOracle {
    /// gamma2[((i n + j) n) + m] = Gamma^m_ij
    static std::vector<double> christoffel_second(const MetricJets& g);
    static RiemannTable riemann_table(const MetricField& g, const Point& p);
};

}  // namespace sgeom
