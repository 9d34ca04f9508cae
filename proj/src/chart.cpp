#include "sgeom/chart.hpp"

#include <set>
#include <stdexcept>

namespace sgeom {

Chart::Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() > 8)
        throw std::invalid_argument("chart dimension must be between 1 and 8");
    std::set<std::string> seen(coords_.begin(), coords_.end());
    if (seen.size() != coords_.size())
        throw std::invalid_argument("chart coordinate names must be distinct");
}

MetricField::MetricField(Chart chart, std::vector<ExprPtr> upper_triangle)
    : chart_(std::move(chart)) {
    const std::size_t n = chart_.dim();
    if (upper_triangle.size() != n * (n + 1) / 2)
        throw std::invalid_argument("metric needs n(n+1)/2 upper-triangle entries");
    entries_.assign(n * n, nullptr);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            ExprPtr e = upper_triangle[idx++];
            if (!e) e = make_number(0.0);
            entries_[i * n + j] = e;
            entries_[j * n + i] = e;  // same node, symmetric by construction
        }
}

MetricField MetricField::diagonal(Chart chart, const std::vector<std::string>& diag) {
    const std::size_t n = chart.dim();
    if (diag.size() != n) throw std::invalid_argument("diagonal length must match dimension");
    std::vector<ExprPtr> upper;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            upper.push_back(i == j ? parse(diag[i], chart.coords()) : make_number(0.0));
    return MetricField(std::move(chart), std::move(upper));
}

MetricField MetricField::from_strings(Chart chart,
                                      const std::vector<std::vector<std::string>>& upper) {
    std::vector<ExprPtr> entries;
    for (std::size_t i = 0; i < upper.size(); ++i)
        for (const std::string& s : upper[i]) entries.push_back(parse(s, chart.coords()));
    return MetricField(std::move(chart), std::move(entries));
}

const ExprPtr& MetricField::entry(std::size_t i, std::size_t j) const {
    return entries_[i * chart_.dim() + j];
}

Mat MetricField::eval(const Point& p) const {
    const std::size_t n = chart_.dim();
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = eval_value(*entry(i, j), p);
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

MetricJets MetricField::jets(const Point& p) const {
    const std::size_t n = chart_.dim();
    MetricJets m;
    m.n = n;
    m.g = Mat(n, n);
    m.dg.assign(n, Mat(n, n));
    m.d2g.assign(n * n, Mat(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Jet2 jet = eval_jet2(*entry(i, j), p);
            m.g(i, j) = m.g(j, i) = jet.value;
            for (std::size_t k = 0; k < n; ++k) {
                m.dg[k](i, j) = m.dg[k](j, i) = jet.grad[k];
                for (std::size_t l = 0; l < n; ++l) {
                    m.d2g[k * n + l](i, j) = jet.hess(k, l);
                    m.d2g[k * n + l](j, i) = jet.hess(k, l);
                }
            }
        }
    return m;
}

VectorField::VectorField(Chart chart, std::vector<ExprPtr> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
    if (comps_.size() != chart_.dim())
        throw std::invalid_argument("component count must equal chart dimension");
}

VectorField VectorField::coordinate(const Chart& chart, std::size_t k) {
    std::vector<ExprPtr> comps;
    for (std::size_t i = 0; i < chart.dim(); ++i)
        comps.push_back(make_number(i == k ? 1.0 : 0.0));
    return VectorField(chart, std::move(comps));
}

VectorField VectorField::from_strings(const Chart& chart, const std::vector<std::string>& comps) {
    std::vector<ExprPtr> parsed;
    for (const std::string& s : comps) parsed.push_back(parse(s, chart.coords()));
    return VectorField(chart, std::move(parsed));
}

VectorField VectorField::zero(const Chart& chart) {
    std::vector<ExprPtr> comps(chart.dim(), make_number(0.0));
    return VectorField(chart, std::move(comps));
}

Vec VectorField::eval(const Point& p) const {
    Vec v(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) v[i] = eval_value(*comps_[i], p);
    return v;
}

VectorField combine(double a, const VectorField& x, double b, const VectorField& y) {
    std::vector<ExprPtr> comps;
    for (std::size_t i = 0; i < x.components().size(); ++i)
        comps.push_back(make_binary(Expr::Kind::Add,
                                    make_binary(Expr::Kind::Mul, make_number(a), x.components()[i]),
                                    make_binary(Expr::Kind::Mul, make_number(b), y.components()[i])));
    return VectorField(x.chart(), std::move(comps));
}

VectorField scaled(const ExprPtr& f, const VectorField& x) {
    std::vector<ExprPtr> comps;
    for (const ExprPtr& c : x.components())
        comps.push_back(make_binary(Expr::Kind::Mul, f, c));
    return VectorField(x.chart(), std::move(comps));
}

FieldJets field_jets(const VectorField& x, const Point& p) {
    const std::size_t n = p.size();
    FieldJets f;
    f.comp.resize(n);
    f.d = Mat(n, n);
    f.d2.assign(n, Mat(n, n));
    for (std::size_t i = 0; i < n; ++i) {
        const Jet2 jet = eval_jet2(*x.components()[i], p);
        f.comp[i] = jet.value;
        for (std::size_t k = 0; k < n; ++k) f.d(k, i) = jet.grad[k];
        f.d2[i] = jet.hess;
    }
    return f;
}

FieldJets coordinate_field_jets(std::size_t k, std::size_t n) {
    FieldJets f;
    f.comp.assign(n, 0.0);
    f.comp[k] = 1.0;
    f.d = Mat(n, n);
    f.d2.assign(n, Mat(n, n));
    return f;
}

EvaluableOneForm EvaluableOneForm::flat_of(const MetricField& g, const VectorField& x) {
    return EvaluableOneForm([g, x](const Point& p) {
        const MetricJets gj = g.jets(p);
        const FieldJets xj = field_jets(x, p);
        const std::size_t n = gj.n;
        OneFormJet o;
        o.comps.assign(n, 0.0);
        o.grad = Mat(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                o.comps[j] += gj.g(i, j) * xj.comp[i];
                for (std::size_t k = 0; k < n; ++k)
                    o.grad(k, j) += gj.dg[k](i, j) * xj.comp[i] + gj.g(i, j) * xj.d(k, i);
            }
        }
        return o;
    });
}

EvaluableOneForm EvaluableOneForm::from_components(const Chart& chart, std::vector<ExprPtr> comps) {
    if (comps.size() != chart.dim())
        throw std::invalid_argument("one-form component count must equal chart dimension");
    return EvaluableOneForm([comps](const Point& p) {
        const std::size_t n = p.size();
        OneFormJet o;
        o.comps.assign(n, 0.0);
        o.grad = Mat(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            const Jet2 jet = eval_jet2(*comps[j], p);
            o.comps[j] = jet.value;
            for (std::size_t k = 0; k < n; ++k) o.grad(k, j) = jet.grad[k];
        }
        return o;
    });
}

Mat metric_eval(const MetricField& g, const Point& p) { return g.eval(p); }

Vec lie_bracket(const VectorField& x, const VectorField& y, const Point& p) {
    const FieldJets xj = field_jets(x, p);
    const FieldJets yj = field_jets(y, p);
    const std::size_t n = p.size();
    Vec b(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            b[k] += xj.comp[i] * yj.d(i, k) - yj.comp[i] * xj.d(i, k);
    return b;
}

PointwiseCovector flat(const MetricField& g, const VectorField& x, const Point& p) {
    const Mat gm = g.eval(p);
    const Vec xv = x.eval(p);
    const std::size_t n = p.size();
    Vec comps(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) comps[j] += gm(i, j) * xv[i];
    return PointwiseCovector{p, std::move(comps)};
}

Mat lie_derivative_metric(const MetricField& g, const VectorField& y, const Point& p) {
    const MetricJets gj = g.jets(p);
    const FieldJets yj = field_jets(y, p);
    const std::size_t n = p.size();
    Mat l(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                v += yj.comp[k] * gj.dg[k](i, j) + gj.g(k, j) * yj.d(i, k) +
                     gj.g(i, k) * yj.d(j, k);
            l(i, j) = v;
            l(j, i) = v;
        }
    return l;
}

Mat exterior_derivative_oneform(const EvaluableOneForm& omega, const Point& p) {
    const OneFormJet o = omega.jets(p);
    const std::size_t n = p.size();
    Mat d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = o.grad(i, j) - o.grad(j, i);
            d(i, j) = v;
            d(j, i) = -v;
        }
    return d;
}

}  // namespace sgeom
