#pragma once

#include "sgeom/linalg.hpp"

#include <cstddef>

namespace sgeom {

/// Second-order Taylor data of a scalar quantity at a point: value, gradient
/// and (exactly symmetric) Hessian with respect to the chart coordinates.
/// Arithmetic propagates all three in one pass, so the Hessian is symmetric
/// by construction and derivatives of analytic nodes are exact to machine
/// precision.
struct Jet2 {
    double value = 0.0;
    Vec grad;
    Mat hess;

    std::size_t dim() const { return grad.size(); }

    static Jet2 constant(double c, std::size_t n) {
        return Jet2{c, Vec(n, 0.0), Mat(n, n)};
    }
    static Jet2 coordinate(double x, std::size_t i, std::size_t n) {
        Jet2 j{x, Vec(n, 0.0), Mat(n, n)};
        j.grad[i] = 1.0;
        return j;
    }
};

Jet2 operator-(Jet2 a);
Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);

/// f(u) with f value/first/second derivative at u.value given.
Jet2 chain(const Jet2& u, double f, double df, double ddf);

/// Integer power by repeated multiplication; exact for polynomial nodes.
Jet2 pow_int(const Jet2& base, long long k);

/// First-order jet of a pointwise quantity: value plus coordinate gradient.
/// Used to push directional derivatives through the Koszul form.
struct J1 {
    double v = 0.0;
    Vec g;

    static J1 constant(double c, std::size_t n) { return J1{c, Vec(n, 0.0)}; }
};

J1 operator-(J1 a);
J1 operator+(J1 a, const J1& b);
J1 operator-(J1 a, const J1& b);
J1 operator*(const J1& a, const J1& b);
J1 operator*(J1 a, double s);
J1 operator*(double s, J1 a);
J1& operator+=(J1& a, const J1& b);
J1& operator-=(J1& a, const J1& b);

}  // namespace sgeom
