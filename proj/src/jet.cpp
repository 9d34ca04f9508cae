#include "sgeom/jet.hpp"

#include <cassert>
#include <cmath>

namespace sgeom {

Jet2 operator-(Jet2 a) {
    a.value = -a.value;
    for (double& x : a.grad) x = -x;
    a.hess *= -1.0;
    return a;
}

Jet2 operator+(Jet2 a, const Jet2& b) {
    a.value += b.value;
    a.grad = a.grad + b.grad;
    a.hess += b.hess;
    return a;
}

Jet2 operator-(Jet2 a, const Jet2& b) {
    a.value -= b.value;
    a.grad = a.grad - b.grad;
    a.hess -= b.hess;
    return a;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.value = a.value * b.value;
    r.grad = a.grad * b.value + b.grad * a.value;
    r.hess = a.hess * b.value + b.hess * a.value + outer(a.grad, b.grad) + outer(b.grad, a.grad);
    return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
    // a / b = a * (1/b); caller checks b.value != 0.
    const double inv = 1.0 / b.value;
    return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 chain(const Jet2& u, double f, double df, double ddf) {
    Jet2 r;
    r.value = f;
    r.grad = u.grad * df;
    r.hess = u.hess * df + outer(u.grad, u.grad) * ddf;
    return r;
}

Jet2 pow_int(const Jet2& base, long long k) {
    const std::size_t n = base.dim();
    if (k == 0) return Jet2::constant(1.0, n);
    if (k < 0) {
        const Jet2 one = Jet2::constant(1.0, n);
        return one / pow_int(base, -k);
    }
    Jet2 r = base;
    for (long long i = 1; i < k; ++i) r = r * base;
    return r;
}

J1 operator-(J1 a) {
    a.v = -a.v;
    for (double& x : a.g) x = -x;
    return a;
}

J1 operator+(J1 a, const J1& b) {
    a.v += b.v;
    a.g = a.g + b.g;
    return a;
}

J1 operator-(J1 a, const J1& b) {
    a.v -= b.v;
    a.g = a.g - b.g;
    return a;
}

J1 operator*(const J1& a, const J1& b) {
    return J1{a.v * b.v, a.g * b.v + b.g * a.v};
}

J1 operator*(J1 a, double s) {
    a.v *= s;
    a.g = a.g * s;
    return a;
}

J1 operator*(double s, J1 a) { return a * s; }

J1& operator+=(J1& a, const J1& b) {
    a.v += b.v;
    a.g = a.g + b.g;
    return a;
}

J1& operator-=(J1& a, const J1& b) {
    a.v -= b.v;
    a.g = a.g - b.g;
    return a;
}

}  // namespace sgeom
