#pragma once

#include "sgeom/chart.hpp"
#include "sgeom/linalg.hpp"

namespace sgeom {

/// Pointwise spectral data of the (possibly degenerate, possibly indefinite)
/// metric matrix: numerical rank, Moore-Penrose pseudo-inverse and the
/// orthogonal projector onto the image. The image of G is the annihilator
/// space of covectors that admit a covariant contraction; the contraction
/// metric is the pseudo-inverse restricted to that image.
struct RadicalDecomposition {
    Point point;
    Mat g;            // evaluated metric
    int rank = 0;     // eigenvalues with |lambda| > tol * max|lambda|
    Mat eigvecs;      // columns: orthonormal eigenbasis of g
    Vec eigvals;
    Mat pinv;         // G+, inverts the signed eigenvalues kept by the rank cut
    Mat projector;    // P = G G+, symmetric idempotent
    double tol = 0.0;

    std::size_t dim() const { return eigvals.size(); }
    bool full_rank() const { return rank == static_cast<int>(dim()); }

    /// A kernel eigenvector, for well-definedness probes. Requires rank < n.
    Vec kernel_vector() const;
};

constexpr double kDefaultRankTol = 1e-9;

RadicalDecomposition decompose(const MetricField& g, const Point& p,
                               double tol = kDefaultRankTol);
RadicalDecomposition decompose_matrix(Mat g, Point p, double tol = kDefaultRankTol);

struct ImageTest {
    bool in_image = false;
    double residual = 0.0;  // ||(I - P) omega||
};

/// omega lies in the image iff ||(I-P) omega|| <= tol * max(1, ||omega||).
ImageTest in_image(const RadicalDecomposition& d, const Vec& omega, double tol);

/// Result of a covariant contraction. The value is omega^T G+ tau; the
/// residuals report how far each covector falls outside the image, where the
/// contraction stops being well defined.
struct ContractionResult {
    double value = 0.0;
    double residual_left = 0.0;   // ||(I-P) omega||
    double residual_right = 0.0;  // ||(I-P) tau||

    double max_relative_residual(const Vec& omega, const Vec& tau) const;
    bool within(double tol, const Vec& omega, const Vec& tau) const;
};

ContractionResult cocontract(const RadicalDecomposition& d, const Vec& omega, const Vec& tau);

/// Strict variant: throws std::domain_error when a covector leaves the image
/// by more than tol (relative).
ContractionResult cocontract_strict(const RadicalDecomposition& d, const Vec& omega,
                                    const Vec& tau, double tol);

}  // namespace sgeom
