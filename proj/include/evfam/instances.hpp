#pragma once

#include <random>
#include <vector>

#include "evfam/cfp.hpp"

namespace evfam::cfp {

/// A generated operator together with a sampler of its fixed points.
struct SampledOperator {
  Operator op;
  std::function<Vector(std::mt19937_64&)> fix_point;
};

/// Random operator of the given kind in R^dim. Averaged and relaxed kinds
/// wrap a random projection (relaxed uses lambda in [0, 1]). Custom is
/// rejected.
SampledOperator random_operator(OperatorKind kind, std::size_t dim, std::mt19937_64& rng);

Vector random_point(std::mt19937_64& rng, std::size_t dim, double scale);

/// Half-spaces that all contain the ball B(center, radius).
struct FeasibleInstance {
  std::vector<Operator> ops;
  Vector center;
  double radius = 0.0;
  std::vector<std::size_t> pattern;
  Vector x0;
};

/// m half-spaces in R^dim with unit normals and offsets chosen so the ball
/// of `radius` around a random center is feasible; a random almost-cyclic
/// pattern of length m..2m containing every index; x0 in [-5, 5]^dim.
FeasibleInstance random_feasible_instance(std::mt19937_64& rng, std::size_t dim, std::size_t m, double radius);

}  // namespace evfam::cfp
