#include "sgeom/radical.hpp"

#include <cmath>
#include <stdexcept>

namespace sgeom {

Vec RadicalDecomposition::kernel_vector() const {
    const std::size_t n = dim();
    double lmax = 0.0;
    for (double l : eigvals) lmax = std::max(lmax, std::abs(l));
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(eigvals[k]) <= tol * lmax) {
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = eigvecs(i, k);
            return v;
        }
    }
    throw std::logic_error("kernel_vector: metric has full rank at this point");
}

RadicalDecomposition decompose(const MetricField& g, const Point& p, double tol) {
    return decompose_matrix(g.eval(p), p, tol);
}

RadicalDecomposition decompose_matrix(Mat g, Point p, double tol) {
    if (tol <= 0.0 || tol >= 1.0) throw std::invalid_argument("rank tolerance must be in (0,1)");
    const std::size_t n = g.rows();

    RadicalDecomposition d;
    d.point = std::move(p);
    d.tol = tol;

    const EigenSym e = jacobi_eigensym(g);
    d.eigvecs = e.vectors;
    d.eigvals = e.values;

    double lmax = 0.0;
    for (double l : e.values) lmax = std::max(lmax, std::abs(l));

    d.pinv = Mat(n, n);
    d.projector = Mat(n, n);
    d.rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (lmax == 0.0 || std::abs(e.values[k]) <= tol * lmax) continue;
        ++d.rank;
        const double inv = 1.0 / e.values[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                d.pinv(i, j) += inv * e.vectors(i, k) * e.vectors(j, k);
                d.projector(i, j) += e.vectors(i, k) * e.vectors(j, k);
            }
    }
    d.g = std::move(g);
    return d;
}

namespace {

double image_defect(const RadicalDecomposition& d, const Vec& omega) {
    const Vec proj = d.projector * omega;
    return norm(omega - proj);
}

}  // namespace

ImageTest in_image(const RadicalDecomposition& d, const Vec& omega, double tol) {
    const double r = image_defect(d, omega);
    return ImageTest{r <= tol * std::max(1.0, norm(omega)), r};
}

double ContractionResult::max_relative_residual(const Vec& omega, const Vec& tau) const {
    return std::max(residual_left / std::max(1.0, norm(omega)),
                    residual_right / std::max(1.0, norm(tau)));
}

bool ContractionResult::within(double tol, const Vec& omega, const Vec& tau) const {
    return max_relative_residual(omega, tau) <= tol;
}

ContractionResult cocontract(const RadicalDecomposition& d, const Vec& omega, const Vec& tau) {
    ContractionResult r;
    r.value = dot(omega, d.pinv * tau);
    r.residual_left = image_defect(d, omega);
    r.residual_right = image_defect(d, tau);
    return r;
}

ContractionResult cocontract_strict(const RadicalDecomposition& d, const Vec& omega,
                                    const Vec& tau, double tol) {
    ContractionResult r = cocontract(d, omega, tau);
    if (!r.within(tol, omega, tau))
        throw std::domain_error("cocontract: covector outside the annihilator image");
    return r;
}

}  // namespace sgeom
