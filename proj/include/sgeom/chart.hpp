#pragma once

#include "sgeom/expr.hpp"
#include "sgeom/jet.hpp"
#include "sgeom/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sgeom {

using Point = std::vector<double>;

/// One coordinate chart. All field objects reference a chart by value;
/// dimension is fixed for their lifetime.
class Chart {
public:
    explicit Chart(std::vector<std::string> coords);

    std::size_t dim() const { return coords_.size(); }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::string& coord_name(std::size_t i) const { return coords_[i]; }

private:
    std::vector<std::string> coords_;
};

/// Pointwise second-order data of the metric: g, all first and all second
/// coordinate derivatives, evaluated from the entry jets.
struct MetricJets {
    std::size_t n = 0;
    Mat g;                  // g(i,j)
    std::vector<Mat> dg;    // dg[k](i,j) = d_k g_ij
    std::vector<Mat> d2g;   // d2g[k*n+l](i,j) = d_k d_l g_ij

    const Mat& d2(std::size_t k, std::size_t l) const { return d2g[k * n + l]; }
};

/// Symmetric matrix of scalar expressions; entries (i,j) and (j,i) share the
/// same expression node, so evaluation is exactly symmetric.
class MetricField {
public:
    MetricField(Chart chart, std::vector<ExprPtr> upper_triangle);

    static MetricField diagonal(Chart chart, const std::vector<std::string>& diag);
    static MetricField from_strings(Chart chart,
                                    const std::vector<std::vector<std::string>>& upper);

    const Chart& chart() const { return chart_; }
    const ExprPtr& entry(std::size_t i, std::size_t j) const;

    Mat eval(const Point& p) const;
    MetricJets jets(const Point& p) const;

private:
    Chart chart_;
    std::vector<ExprPtr> entries_;  // n*n, symmetric sharing
};

/// Vector field in the coordinate basis: n component expressions.
class VectorField {
public:
    VectorField(Chart chart, std::vector<ExprPtr> comps);

    static VectorField coordinate(const Chart& chart, std::size_t k);
    static VectorField from_strings(const Chart& chart, const std::vector<std::string>& comps);
    static VectorField zero(const Chart& chart);

    const Chart& chart() const { return chart_; }
    const std::vector<ExprPtr>& components() const { return comps_; }

    Vec eval(const Point& p) const;

private:
    Chart chart_;
    std::vector<ExprPtr> comps_;
};

/// aX + bY with real coefficients, assembled symbolically.
VectorField combine(double a, const VectorField& x, double b, const VectorField& y);
/// fX with a scalar expression f.
VectorField scaled(const ExprPtr& f, const VectorField& x);

/// Pointwise second-order data of a vector field's components.
struct FieldJets {
    Vec comp;              // X^i
    Mat d;                 // d(k,i) = d_k X^i
    std::vector<Mat> d2;   // d2[i](k,l) = d_k d_l X^i
};

FieldJets field_jets(const VectorField& x, const Point& p);
FieldJets coordinate_field_jets(std::size_t k, std::size_t n);

/// Covector at a point.
struct PointwiseCovector {
    Point point;
    Vec comps;
};

/// One-form field with jet evaluation: components plus their coordinate
/// gradients at any point.
struct OneFormJet {
    Vec comps;   // omega_j
    Mat grad;    // grad(i,j) = d_i omega_j
};

class EvaluableOneForm {
public:
    explicit EvaluableOneForm(std::function<OneFormJet(const Point&)> rule)
        : rule_(std::move(rule)) {}

    OneFormJet jets(const Point& p) const { return rule_(p); }
    Vec components(const Point& p) const { return rule_(p).comps; }

    /// The flat field X-flat: omega_j = g_ij X^i.
    static EvaluableOneForm flat_of(const MetricField& g, const VectorField& x);
    static EvaluableOneForm from_components(const Chart& chart, std::vector<ExprPtr> comps);

private:
    std::function<OneFormJet(const Point&)> rule_;
};

// --- pointwise operations ---

/// g_ij(p), exactly symmetric.
Mat metric_eval(const MetricField& g, const Point& p);

/// [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k.
Vec lie_bracket(const VectorField& x, const VectorField& y, const Point& p);

/// (flat X)_j = g_ij X^i.
PointwiseCovector flat(const MetricField& g, const VectorField& x, const Point& p);

/// (L_Y g)_ij = Y^k d_k g_ij + g_kj d_i Y^k + g_ik d_j Y^k; exactly symmetric.
Mat lie_derivative_metric(const MetricField& g, const VectorField& y, const Point& p);

/// (d omega)_ij = d_i omega_j - d_j omega_i; exactly antisymmetric.
Mat exterior_derivative_oneform(const EvaluableOneForm& omega, const Point& p);

}  // namespace sgeom
