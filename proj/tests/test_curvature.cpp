#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgeom/catalog.hpp"
#include "sgeom/curvature.hpp"
#include "sgeom/random_fields.hpp"

#include <cmath>

using namespace sgeom;

namespace {

MetricField by_name(const char* n) { return catalog_entry(n).metric(); }

}  // namespace

TEST_CASE("flat space has zero curvature") {
    const RiemannEvaluator r(by_name("euclidean3"));
    const RiemannTable t = r.riemann_table({0.4, -0.7, 1.1});
    CHECK(max_abs(t.values) == 0.0);
    CHECK(!t.on_locus);
}

TEST_CASE("sphere sectional curvature entry") {
    const RiemannEvaluator r(by_name("sphere2"));
    for (double th : {0.5235987755982988, 0.7853981633974483, 1.0471975511965976}) {
        const RiemannTable t = r.riemann_table({th, 0.3});
        const double s2 = std::sin(th) * std::sin(th);
        CHECK(std::abs(t.entry(0, 1, 0, 1)) == doctest::Approx(s2).epsilon(1e-12));
    }
}

TEST_CASE("table agrees with field-based evaluation") {
    const MetricField g = by_name("sphere2");
    const RiemannEvaluator r(g);
    const Point p{0.9, -0.4};
    const RiemannTable t = r.riemann_table(p);
    const Chart& c = g.chart();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const RiemannValue v =
                r.riemann(VectorField::coordinate(c, i), VectorField::coordinate(c, j),
                          VectorField::coordinate(c, 0), VectorField::coordinate(c, 1), p);
            CHECK(v.value == doctest::Approx(t.entry(i, j, 0, 1)).epsilon(1e-10));
        }
}

TEST_CASE("field-based evaluation is tensorial in scaling") {
    std::mt19937_64 rng(41);
    const MetricField g = by_name("sphere2");
    const Chart& c = g.chart();
    const RiemannEvaluator r(g);
    const VectorField x = random_vector_field(rng, c, 2, 1.0);
    const VectorField y = random_vector_field(rng, c, 2, 1.0);
    const VectorField z = random_vector_field(rng, c, 2, 1.0);
    const VectorField t = random_vector_field(rng, c, 2, 1.0);
    const Point p{1.1, 0.6};
    const double base = r.riemann(x, y, z, t, p).value;
    // multiply Z by the function u^2 (pointwise factor at p)
    const VectorField fz = scaled(parse("theta^2", c.coords()), z);
    CHECK(r.riemann(x, y, fz, t, p).value == doctest::Approx(p[0] * p[0] * base).epsilon(1e-9));
}

TEST_CASE("classical oracle matches the degenerate-form table on invertible metrics") {
    std::mt19937_64 rng(43);
    for (const char* name : {"euclidean3", "minkowski4", "sphere2"}) {
        const MetricSpec spec = catalog_entry(name);
        const MetricField g = spec.metric();
        const RiemannEvaluator r(g);
        for (int trial = 0; trial < 25; ++trial) {
            const Point p = random_point(rng, spec.sample_box());
            const RiemannTable a = r.riemann_table(p);
            const RiemannTable b = ClassicalOracle::riemann_table(g, p);
            const double scale = std::max(a.scale(), b.scale());
            for (std::size_t idx = 0; idx < a.values.size(); ++idx)
                CHECK(std::abs(a.values[idx] - b.values[idx]) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("classical oracle refuses degenerate points") {
    CHECK_THROWS((void)ClassicalOracle::riemann_table(by_name("polar2"), {0.0, 0.5}));
}

TEST_CASE("polar2 is flat off the locus") {
    const RiemannEvaluator r(by_name("polar2"));
    const RiemannTable t = r.riemann_table({1.3, 0.5});
    CHECK(t.scale() == 1.0);  // all entries below 1
    for (double v : t.values) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("polar2 on-locus entry is flagged and uses the pointwise contraction") {
    const RiemannEvaluator r(by_name("polar2"));
    const RiemannTable t = r.riemann_table({0.0, 0.5});
    CHECK(t.on_locus);
    // derivative terms survive: dGamma[0][1][1] - contraction terms (which vanish)
    CHECK(t.entry(0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetry residuals vanish where they should") {
    for (const char* name : {"euclidean2", "sphere2", "friedmann_like"}) {
        const MetricSpec spec = catalog_entry(name);
        const RiemannEvaluator r(spec.metric());
        std::mt19937_64 rng(47);
        for (int trial = 0; trial < 5; ++trial) {
            const RiemannTable t = r.riemann_table(random_point(rng, spec.sample_box()));
            const SymmetryReport s = symmetry_check(t);
            CHECK(s.max_residual() <= 1e-8 * s.scale);
        }
    }
}

TEST_CASE("curvature form wraps the evaluator") {
    const MetricField g = by_name("sphere2");
    const Chart& c = g.chart();
    const RiemannEvaluator r(g);
    const CurvatureForm f =
        r.curvature_form(VectorField::coordinate(c, 0), VectorField::coordinate(c, 1));
    const Point p{0.8, 0.1};
    const RiemannValue v = f(VectorField::coordinate(c, 0), VectorField::coordinate(c, 1), p);
    const double s2 = std::sin(0.8) * std::sin(0.8);
    CHECK(std::abs(v.value) == doctest::Approx(s2).epsilon(1e-10));
}
