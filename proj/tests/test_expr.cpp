#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgeom/chart.hpp"
#include "sgeom/expr.hpp"
#include "sgeom/random_fields.hpp"

#include <cmath>
#include <random>

using namespace sgeom;

namespace {

const std::vector<std::string> uv = {"u", "v"};
const std::vector<std::string> u_only = {"u"};

Jet2 jet_of(const std::string& text, std::span<const std::string> coords, const Point& p) {
    return eval_jet2(*parse(text, coords), p);
}

}  // namespace

TEST_CASE("number and coordinate atoms") {
    CHECK(eval_value(*parse("3.5", uv), Point{1, 2}) == 3.5);
    CHECK(eval_value(*parse("u", uv), Point{1, 2}) == 1.0);
    CHECK(eval_value(*parse("v", uv), Point{1, 2}) == 2.0);
    CHECK(eval_value(*parse("1e-3", uv), Point{0, 0}) == doctest::Approx(1e-3));
}

TEST_CASE("precedence and associativity") {
    const Point p{2, 3};
    CHECK(eval_value(*parse("1+2*3", uv), p) == 7.0);
    CHECK(eval_value(*parse("(1+2)*3", uv), p) == 9.0);
    CHECK(eval_value(*parse("8-3-2", uv), p) == 3.0);
    CHECK(eval_value(*parse("16/4/2", uv), p) == 2.0);
    CHECK(eval_value(*parse("2^3^2", uv), p) == 512.0);  // right-assoc
    CHECK(eval_value(*parse("-u^2", uv), Point{3, 0}) == -9.0);
    CHECK(eval_value(*parse("2*u^2", uv), Point{3, 0}) == 18.0);
}

TEST_CASE("function calls") {
    const Point p{0.7, 0};
    CHECK(eval_value(*parse("sin(u)^2+cos(u)^2", uv), p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_value(*parse("log(exp(u))", uv), p) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(eval_value(*parse("sqrt(u^2)", uv), p) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(eval_value(*parse("cosh(u)^2-sinh(u)^2", uv), p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eval_value(*parse("tan(u)", uv), p) == doctest::Approx(std::tan(0.7)));
    CHECK(eval_value(*parse("tanh(u)", uv), p) == doctest::Approx(std::tanh(0.7)));
}

TEST_CASE("parse errors carry offset and hint") {
    CHECK_THROWS_AS((void)parse("2*", uv), ParseError);
    try {
        (void)parse("2*", uv);
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS((void)parse("", uv), ParseError);
    CHECK_THROWS_AS((void)parse("(1+2", uv), ParseError);
    CHECK_THROWS_AS((void)parse("w+1", uv), ParseError);  // undeclared name
    CHECK_THROWS_AS((void)parse("sin", uv), ParseError);  // function needs arguments
    CHECK_THROWS_AS((void)parse("1 2", uv), ParseError);  // trailing garbage
}

TEST_CASE("domain errors at evaluation") {
    CHECK_THROWS_AS((void)eval_value(*parse("1/u", uv), Point{0, 0}), EvalError);
    CHECK_THROWS_AS((void)eval_value(*parse("log(u)", uv), Point{0, 0}), EvalError);
    CHECK_THROWS_AS((void)eval_value(*parse("log(u)", uv), Point{-1, 0}), EvalError);
    CHECK_THROWS_AS((void)eval_value(*parse("sqrt(u)", uv), Point{-1, 0}), EvalError);
    CHECK_THROWS_AS((void)eval_value(*parse("u^0.5", uv), Point{-1, 0}), EvalError);
    CHECK_THROWS_AS((void)eval_value(*parse("u^v", uv), Point{-2, 3}), EvalError);
}

TEST_CASE("jet of u^3 at u=2") {
    const Jet2 j = jet_of("u^3", u_only, Point{2});
    CHECK(j.value == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(j.grad[0] == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(j.hess(0, 0) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("jet of u*v at (2,3)") {
    const Jet2 j = jet_of("u*v", uv, Point{2, 3});
    CHECK(j.value == 6.0);
    CHECK(j.grad[0] == 3.0);
    CHECK(j.grad[1] == 2.0);
    CHECK(j.hess(0, 0) == 0.0);
    CHECK(j.hess(0, 1) == 1.0);
    CHECK(j.hess(1, 0) == 1.0);
    CHECK(j.hess(1, 1) == 0.0);
}

TEST_CASE("jet of sin(u)*v") {
    const Point p{0.5, 2.0};
    const Jet2 j = jet_of("sin(u)*v", uv, p);
    CHECK(j.value == doctest::Approx(2 * std::sin(0.5)).epsilon(1e-15));
    CHECK(j.grad[0] == doctest::Approx(2 * std::cos(0.5)).epsilon(1e-15));
    CHECK(j.grad[1] == doctest::Approx(std::sin(0.5)).epsilon(1e-15));
    CHECK(j.hess(0, 0) == doctest::Approx(-2 * std::sin(0.5)).epsilon(1e-15));
    CHECK(j.hess(0, 1) == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
}

TEST_CASE("jet division and quotient rule") {
    // d/du (u/v) = 1/v, d/dv = -u/v^2, d2/dudv = -1/v^2, d2/dv2 = 2u/v^3
    const Jet2 j = jet_of("u/v", uv, Point{3, 2});
    CHECK(j.value == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(j.grad[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(j.grad[1] == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(j.hess(0, 1) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(j.hess(1, 1) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("non-differentiable sqrt at zero is rejected for jets") {
    CHECK(eval_value(*parse("sqrt(u)", uv), Point{0, 0}) == 0.0);
    CHECK_THROWS_AS((void)jet_of("sqrt(u)", uv, Point{0, 0}), EvalError);
}

TEST_CASE("jets match central finite differences on random polynomials") {
    std::mt19937_64 rng(7);
    const Chart chart(std::vector<std::string>{"u", "v", "w"});
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const ExprPtr e = random_polynomial(rng, chart, 3, 2.0);
        const Point p = random_point(rng, {{-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}});
        const Jet2 j = eval_jet2(*e, p);
        for (std::size_t i = 0; i < 3; ++i) {
            Point up = p, dn = p;
            up[i] += h;
            dn[i] -= h;
            const double fd = (eval_value(*e, up) - eval_value(*e, dn)) / (2 * h);
            const double scale = std::max({1.0, std::abs(fd), std::abs(j.grad[i])});
            CHECK(std::abs(j.grad[i] - fd) / scale <= 1e-6);
            for (std::size_t k = 0; k < 3; ++k) {
                Point pp = p, pm = p, mp = p, mm = p;
                pp[i] += h; pp[k] += h;
                pm[i] += h; pm[k] -= h;
                mp[i] -= h; mp[k] += h;
                mm[i] -= h; mm[k] -= h;
                const double fd2 = (eval_value(*e, pp) - eval_value(*e, pm) -
                                    eval_value(*e, mp) + eval_value(*e, mm)) /
                                   (4 * h * h);
                const double s2 = std::max({1.0, std::abs(fd2), std::abs(j.hess(i, k))});
                CHECK(std::abs(j.hess(i, k) - fd2) / s2 <= 1e-4);
            }
        }
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("hessian is exactly symmetric") {
    std::mt19937_64 rng(11);
    const Chart chart(std::vector<std::string>{"u", "v"});
    for (int trial = 0; trial < 50; ++trial) {
        const ExprPtr e = random_polynomial(rng, chart, 4, 3.0);
        const Point p = random_point(rng, {{-2, 2}, {-2, 2}});
        const Jet2 j = eval_jet2(*e, p);
        CHECK(j.hess(0, 1) == j.hess(1, 0));
    }
}

TEST_CASE("to_string round-trips structurally") {
    for (const char* text : {"u+v", "u-v*2", "-u^2", "(u+v)^2", "sin(u)*cos(v)",
                             "u/(v+1)", "2^u", "1/u^2", "u*v*2-3"}) {
        const ExprPtr a = parse(text, uv);
        const std::string printed = to_string(*a, uv);
        const ExprPtr b = parse(printed, uv);
        CHECK(structurally_equal(*a, *b));
    }
}

TEST_CASE("round-trip preserves values on random expressions") {
    std::mt19937_64 rng(3);
    const Chart chart(std::vector<std::string>{"u", "v"});
    for (int trial = 0; trial < 100; ++trial) {
        const ExprPtr e = random_polynomial(rng, chart, 3, 2.5);
        const ExprPtr back = parse(to_string(*e, uv), uv);
        CHECK(structurally_equal(*e, *back));
        const Point p = random_point(rng, {{-2, 2}, {-2, 2}});
        CHECK(eval_value(*e, p) == eval_value(*back, p));
    }
}

TEST_CASE("is_constant") {
    CHECK(is_constant(*parse("1+2*3", uv)));
    CHECK(!is_constant(*parse("1+u", uv)));
}
