#include "evfam/instances.hpp"

#include <algorithm>
#include <numeric>

namespace evfam::cfp {

namespace {

Vector unit_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = normal(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Fixed points of a projection: project a random point.
SampledOperator projection(Operator op, std::size_t dim) {
  auto fix = [op, dim](std::mt19937_64& rng) { return op.apply(random_point(rng, dim, 3.0)); };
  return {std::move(op), fix};
}

}  // namespace

Vector random_point(std::mt19937_64& rng, std::size_t dim, double scale) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = uniform(rng, -scale, scale);
  return v;
}

SampledOperator random_operator(OperatorKind kind, std::size_t dim, std::mt19937_64& rng) {
  switch (kind) {
    case OperatorKind::Halfspace: return projection(Operator::halfspace(unit_vector(rng, dim), uniform(rng, -1, 1)), dim);
    case OperatorKind::Hyperplane:
      return projection(Operator::hyperplane(unit_vector(rng, dim), uniform(rng, -1, 1)), dim);
    case OperatorKind::Ball:
      return projection(Operator::ball(random_point(rng, dim, 1.0), uniform(rng, 0.1, 2.0)), dim);
    case OperatorKind::Box: {
      Vector lo = random_point(rng, dim, 1.0);
      Vector hi = lo;
      for (Eigen::Index k = 0; k < hi.size(); ++k) hi[k] += uniform(rng, 0.0, 2.0);
      return projection(Operator::box(lo, hi), dim);
    }
    case OperatorKind::Affine: {
      const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, dim - 1))(rng);
      Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
      // Nearly dependent rows make the projection amplify rounding; redraw them.
      do {
        for (std::size_t r = 0; r < rows; ++r) a.row(static_cast<Eigen::Index>(r)) = unit_vector(rng, dim).transpose();
      } while (Eigen::JacobiSVD<Matrix>(a).singularValues().minCoeff() < 0.2);
      return projection(Operator::affine(a, random_point(rng, rows, 1.0)), dim);
    }
    case OperatorKind::Subgradient: {
      // max_k <g_k, x> + h_k with a known strictly feasible point c.
      const Vector c = random_point(rng, dim, 1.0);
      const std::size_t count = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
      std::vector<AffinePiece> pieces;
      double margin = 1e300;
      for (std::size_t k = 0; k < count; ++k) {
        Vector g = unit_vector(rng, dim) * uniform(rng, 0.5, 2.0);
        const double slack = uniform(rng, 0.1, 1.0);
        margin = std::min(margin, slack / g.norm());
        const double h = -g.dot(c) - slack;
        pieces.push_back({std::move(g), h});
      }
      // Points within `margin` of c satisfy every piece.
      Operator op = Operator::subgradient(std::move(pieces));
      auto fix = [c, margin, dim](std::mt19937_64& r) {
        Vector u = unit_vector(r, dim);
        return Vector(c + uniform(r, 0.0, 0.99) * margin * u);
      };
      return {std::move(op), fix};
    }
    case OperatorKind::Averaged: {
      auto inner = random_operator(OperatorKind::Ball, dim, rng);
      return {Operator::averaged(inner.op), inner.fix_point};
    }
    case OperatorKind::Relaxed: {
      auto inner = random_operator(OperatorKind::Halfspace, dim, rng);
      return {Operator::relaxed(inner.op, uniform(rng, 0.0, 1.0)), inner.fix_point};
    }
    case OperatorKind::Custom: break;
  }
  throw std::invalid_argument("random_operator: custom operators have no generator");
}

FeasibleInstance random_feasible_instance(std::mt19937_64& rng, std::size_t dim, std::size_t m, double radius) {
  FeasibleInstance inst;
  inst.center = random_point(rng, dim, 1.0);
  inst.radius = radius;
  for (std::size_t k = 0; k < m; ++k) {
    const Vector a = unit_vector(rng, dim);
    inst.ops.push_back(Operator::halfspace(a, a.dot(inst.center) + radius + uniform(rng, 0.0, 1.0)));
  }
  std::vector<std::size_t> pattern(m);
  std::iota(pattern.begin(), pattern.end(), 0);
  std::shuffle(pattern.begin(), pattern.end(), rng);
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, m)(rng);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, pattern.size())(rng);
    const std::size_t idx = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    pattern.insert(pattern.begin() + static_cast<std::ptrdiff_t>(pos), idx);
  }
  inst.pattern = std::move(pattern);
  inst.x0 = random_point(rng, dim, 5.0);
  return inst;
}

}  // namespace evfam::cfp
