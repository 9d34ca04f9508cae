#pragma once

#include "sgeom/curvature.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sgeom {

/// One two-sided identity check. Left and right sides are always computed by
/// independent code paths (they share nothing beyond metric jet evaluation),
/// so the residual is a genuine cross-check.
struct ResidualReport {
    std::string identity;
    Point point;
    std::string fields;  // short description of the inputs
    double left = 0.0;
    double right = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;  // abs / max(1, |left|, |right|)
    bool on_locus = false;
    bool out_of_image = false;
};

ResidualReport make_residual(std::string identity, const Point& p, std::string fields,
                             double left, double right);

/// 2 kosz(X,Y,Z) = (d Y-flat)(X,Z) + (L_Y g)(X,Z). Holds for any metric,
/// degenerate points included; no contraction involved.
ResidualReport koszul_decomposition_residual(const KoszulEvaluator& k, const VectorField& x,
                                             const VectorField& y, const VectorField& z,
                                             const Point& p);

/// (d Y-flat)(X,Z) = kosz(X,Y,Z) - kosz(Z,Y,X).
ResidualReport flat_derivative_residual(const KoszulEvaluator& k, const VectorField& x,
                                        const VectorField& y, const VectorField& z,
                                        const Point& p);

/// First structural equation, evaluated on a pair (Y,Z):
/// (d X-flat)(Y,Z) = kosz(Y,X,.) G+ (Z-flat) - kosz(Z,X,.) G+ (Y-flat).
/// Sound for radical-stationary metrics; elsewhere the residual measures the
/// failure and the out-of-image flag is set.
ResidualReport first_structural_residual(const KoszulEvaluator& k, const VectorField& x,
                                         const VectorField& y, const VectorField& z,
                                         const Point& p);

/// Second structural equation on (Z,T):
/// R(X,Y,Z,T) = (d omega_XY)(Z,T) + kosz(Z,X,.)kosz(T,Y,.) - kosz(T,X,.)kosz(Z,Y,.).
ResidualReport second_structural_residual(const RiemannEvaluator& r, const VectorField& x,
                                          const VectorField& y, const VectorField& z,
                                          const VectorField& t, const Point& p);

/// Classical structural equation in a frame orthonormal at p (inner products
/// eps_a delta_ab, eps_a = +-1): d(E_a-flat) + sum_s eps_s omega_{E_s E_a} ^
/// (E_s-flat) = 0 on every coordinate pair, plus the antisymmetry
/// omega_ab = -omega_ba. Requires a non-degenerate metric; throws
/// std::invalid_argument on a non-orthonormal frame.
std::vector<ResidualReport> frame_structural_check(const KoszulEvaluator& k,
                                                   const std::vector<VectorField>& frame,
                                                   const Point& p, double frame_tol = 1e-9);

/// Residuals of the eight algebraic properties of the Koszul form
/// (linearity, function-linearity, Leibniz rule, metricity, torsionlessness,
/// Lie-derivative and cyclic relations) for given fields and scalar f.
std::vector<ResidualReport> koszul_property_residuals(const KoszulEvaluator& k,
                                                      const VectorField& x,
                                                      const VectorField& y,
                                                      const VectorField& z, const ExprPtr& f,
                                                      const Point& p);

struct VerifyOptions {
    std::uint64_t seed = 1;
    int field_samples_per_point = 2;  // random field draws per sample point
    double tol = 1e-8;
};

struct VerifySummary {
    std::vector<ResidualReport> reports;
    std::map<std::string, double> max_residual;  // per identity name
    int failures = 0;

    void add(ResidualReport r, double tol);
};

/// Batch driver: the eight Koszul property residuals plus the structural
/// identity checks at every sample point, with seed-deterministic random
/// polynomial fields (degree <= 2, coefficients in [-2,2]). An optional
/// frame enables the classical structural check where the metric is
/// non-degenerate.
VerifySummary verify_suite(const KoszulEvaluator& k, const std::vector<Point>& points,
                           const std::vector<VectorField>* frame, const VerifyOptions& opt);

}  // namespace sgeom
