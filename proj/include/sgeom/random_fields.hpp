#pragma once

#include "sgeom/chart.hpp"

#include <random>

namespace sgeom {

/// Deterministic generators for test fields: polynomial expressions of
/// bounded degree with coefficients in [-range, range]. Given the same
/// engine state they always produce the same objects.
ExprPtr random_polynomial(std::mt19937_64& rng, const Chart& chart, int max_degree,
                          double range);

VectorField random_vector_field(std::mt19937_64& rng, const Chart& chart, int max_degree,
                                double range);

Point random_point(std::mt19937_64& rng, const std::vector<std::pair<double, double>>& box);

}  // namespace sgeom
