#include <cmath>
#include <optional>

#include "evfam/cfp.hpp"

namespace evfam::cfp {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Halfspace: return "halfspace";
    case OperatorKind::Hyperplane: return "hyperplane";
    case OperatorKind::Ball: return "ball";
    case OperatorKind::Box: return "box";
    case OperatorKind::Affine: return "affine";
    case OperatorKind::Subgradient: return "subgradient";
    case OperatorKind::Averaged: return "averaged";
    case OperatorKind::Relaxed: return "relaxed";
    case OperatorKind::Custom: return "custom";
  }
  return "?";
}

struct Operator::Node {
  OperatorKind kind = OperatorKind::Custom;
  std::size_t dim = 0;
  Vector a;  // normal / center / lo
  Vector b;  // hi / rhs
  double scalar = 0.0;  // offset / radius / lambda
  Matrix mat;
  Eigen::LLT<Matrix> gram;  // of A A^T
  std::vector<AffinePiece> pieces;
  std::optional<Operator> inner;
  std::function<Vector(const Vector&)> fn;
  std::string name;
};

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool finite(const Vector& v) { return v.allFinite(); }

}  // namespace

Operator Operator::halfspace(Vector a, double b) {
  require(a.size() > 0 && finite(a) && std::isfinite(b), "halfspace: parameters must be finite");
  require(a.norm() > 0.0, "halfspace: normal vector must be nonzero");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Halfspace;
  n->dim = static_cast<std::size_t>(a.size());
  n->a = std::move(a);
  n->scalar = b;
  return Operator(std::move(n));
}

Operator Operator::hyperplane(Vector a, double b) {
  require(a.size() > 0 && finite(a) && std::isfinite(b), "hyperplane: parameters must be finite");
  require(a.norm() > 0.0, "hyperplane: normal vector must be nonzero");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Hyperplane;
  n->dim = static_cast<std::size_t>(a.size());
  n->a = std::move(a);
  n->scalar = b;
  return Operator(std::move(n));
}

Operator Operator::ball(Vector center, double radius) {
  require(center.size() > 0 && finite(center), "ball: center must be finite");
  require(std::isfinite(radius) && radius > 0.0, "ball: radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Ball;
  n->dim = static_cast<std::size_t>(center.size());
  n->a = std::move(center);
  n->scalar = radius;
  return Operator(std::move(n));
}

Operator Operator::box(Vector lo, Vector hi) {
  require(lo.size() > 0 && lo.size() == hi.size(), "box: bounds must have equal positive dimension");
  require(finite(lo) && finite(hi), "box: bounds must be finite");
  require((lo.array() <= hi.array()).all(), "box: lo must not exceed hi");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Box;
  n->dim = static_cast<std::size_t>(lo.size());
  n->a = std::move(lo);
  n->b = std::move(hi);
  return Operator(std::move(n));
}

Operator Operator::affine(Matrix a, Vector d) {
  require(a.rows() > 0 && a.cols() > 0 && a.rows() == d.size(), "affine: A must be k x J with k = |d| > 0");
  require(a.allFinite() && finite(d), "affine: parameters must be finite");
  require(Eigen::FullPivLU<Matrix>(a).rank() == a.rows(), "affine: A must have full row rank");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Affine;
  n->dim = static_cast<std::size_t>(a.cols());
  n->gram.compute(a * a.transpose());
  n->mat = std::move(a);
  n->b = std::move(d);
  return Operator(std::move(n));
}

Operator Operator::subgradient(std::vector<AffinePiece> pieces) {
  require(!pieces.empty(), "subgradient: at least one affine piece required");
  const auto dim = pieces.front().g.size();
  for (const auto& p : pieces) {
    require(p.g.size() == dim && dim > 0, "subgradient: pieces must share the dimension");
    require(finite(p.g) && std::isfinite(p.h), "subgradient: pieces must be finite");
    require(p.g.norm() > 0.0, "subgradient: piece gradients must be nonzero");
  }
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Subgradient;
  n->dim = static_cast<std::size_t>(dim);
  n->pieces = std::move(pieces);
  return Operator(std::move(n));
}

Operator Operator::averaged(Operator inner) {
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Averaged;
  n->dim = inner.dim();
  n->inner = std::move(inner);
  return Operator(std::move(n));
}

Operator Operator::relaxed(Operator inner, double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0 && lambda <= 2.0, "relax: lambda must lie in [0, 2]");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Relaxed;
  n->dim = inner.dim();
  n->scalar = lambda;
  n->inner = std::move(inner);
  return Operator(std::move(n));
}

Operator Operator::custom(std::size_t dim, std::function<Vector(const Vector&)> fn, std::string name) {
  require(dim > 0 && static_cast<bool>(fn), "custom: dimension and function required");
  auto n = std::make_shared<Node>();
  n->kind = OperatorKind::Custom;
  n->dim = dim;
  n->fn = std::move(fn);
  n->name = std::move(name);
  return Operator(std::move(n));
}

OperatorKind Operator::kind() const { return node_->kind; }
std::size_t Operator::dim() const { return node_->dim; }

Vector Operator::apply(const Vector& x) const {
  const Node& n = *node_;
  if (static_cast<std::size_t>(x.size()) != n.dim)
    throw std::invalid_argument("apply: point has dimension " + std::to_string(x.size()) + ", operator expects " +
                                std::to_string(n.dim));
  switch (n.kind) {
    case OperatorKind::Halfspace: {
      const double excess = n.a.dot(x) - n.scalar;
      if (excess <= 0.0) return x;
      return x - (excess / n.a.squaredNorm()) * n.a;
    }
    case OperatorKind::Hyperplane:
      return x - ((n.a.dot(x) - n.scalar) / n.a.squaredNorm()) * n.a;
    case OperatorKind::Ball: {
      const Vector d = x - n.a;
      const double r = d.norm();
      if (r <= n.scalar) return x;
      return n.a + (n.scalar / r) * d;
    }
    case OperatorKind::Box:
      return x.cwiseMax(n.a).cwiseMin(n.b);
    case OperatorKind::Affine: {
      const Vector residual = n.mat * x - n.b;
      return x - n.mat.transpose() * n.gram.solve(residual);
    }
    case OperatorKind::Subgradient: {
      // Ties go to the lowest piece index.
      std::size_t active = 0;
      double value = n.pieces[0].g.dot(x) + n.pieces[0].h;
      for (std::size_t k = 1; k < n.pieces.size(); ++k) {
        const double v = n.pieces[k].g.dot(x) + n.pieces[k].h;
        if (v > value) {
          value = v;
          active = k;
        }
      }
      if (value <= 0.0) return x;
      const Vector& g = n.pieces[active].g;
      return x - (value / g.squaredNorm()) * g;
    }
    case OperatorKind::Averaged:
      return 0.5 * (x + n.inner->apply(x));
    case OperatorKind::Relaxed:
      return x + n.scalar * (n.inner->apply(x) - x);
    case OperatorKind::Custom:
      return n.fn(x);
  }
  return x;
}

bool Operator::is_cutter() const {
  switch (node_->kind) {
    case OperatorKind::Averaged: return node_->inner->is_cutter();
    case OperatorKind::Relaxed: return node_->inner->is_cutter() && node_->scalar <= 1.0;
    case OperatorKind::Custom: return false;
    default: return true;
  }
}

bool Operator::is_firmly_nonexpansive() const {
  switch (node_->kind) {
    // A subgradient projector with one piece is a half-space projection;
    // with several pieces it is a cutter but in general not nonexpansive.
    case OperatorKind::Subgradient: return node_->pieces.size() == 1;
    case OperatorKind::Averaged: return node_->inner->is_firmly_nonexpansive();
    case OperatorKind::Relaxed: return node_->inner->is_firmly_nonexpansive() && node_->scalar <= 1.0;
    case OperatorKind::Custom: return false;
    default: return true;
  }
}

bool Operator::is_projection() const {
  switch (node_->kind) {
    case OperatorKind::Halfspace:
    case OperatorKind::Hyperplane:
    case OperatorKind::Ball:
    case OperatorKind::Box:
    case OperatorKind::Affine: return true;
    default: return false;
  }
}

bool Operator::demiclosed_at_zero() const {
  switch (node_->kind) {
    case OperatorKind::Averaged:
    case OperatorKind::Relaxed: return node_->inner->demiclosed_at_zero();
    case OperatorKind::Custom: return false;
    default: return true;
  }
}

namespace {

template <typename T>
const T& param(bool ok, const T& value, const char* what) {
  if (!ok) throw std::logic_error(std::string("operator has no ") + what);
  return value;
}

}  // namespace

const Vector& Operator::normal() const {
  return param(kind() == OperatorKind::Halfspace || kind() == OperatorKind::Hyperplane, node_->a, "normal");
}
double Operator::offset() const {
  return param(kind() == OperatorKind::Halfspace || kind() == OperatorKind::Hyperplane, node_->scalar, "offset");
}
const Vector& Operator::center() const { return param(kind() == OperatorKind::Ball, node_->a, "center"); }
double Operator::radius() const { return param(kind() == OperatorKind::Ball, node_->scalar, "radius"); }
const Vector& Operator::lower() const { return param(kind() == OperatorKind::Box, node_->a, "lower bound"); }
const Vector& Operator::upper() const { return param(kind() == OperatorKind::Box, node_->b, "upper bound"); }
const Matrix& Operator::matrix() const { return param(kind() == OperatorKind::Affine, node_->mat, "matrix"); }
const Vector& Operator::rhs() const { return param(kind() == OperatorKind::Affine, node_->b, "right-hand side"); }
const std::vector<AffinePiece>& Operator::pieces() const {
  return param(kind() == OperatorKind::Subgradient, node_->pieces, "pieces");
}
const Operator& Operator::inner() const {
  if (!node_->inner) throw std::logic_error("operator has no inner operator");
  return *node_->inner;
}
double Operator::lambda() const { return param(kind() == OperatorKind::Relaxed, node_->scalar, "lambda"); }

std::string Operator::describe() const {
  switch (kind()) {
    case OperatorKind::Averaged: return "averaged(" + inner().describe() + ")";
    case OperatorKind::Relaxed: return "relaxed(" + inner().describe() + ", " + std::to_string(lambda()) + ")";
    case OperatorKind::Custom: return node_->name;
    default: return to_string(kind()) + "[J=" + std::to_string(dim()) + "]";
  }
}

Vector apply_operator(const Operator& op, const Vector& x) { return op.apply(x); }

bool cutter_check(const Operator& op, const Vector& x, const Vector& z, double tol) {
  if (!op.in_fix(z)) throw std::invalid_argument("cutter_check: z is not a fixed point of the operator");
  const Vector tx = op.apply(x);
  return (tx - x).dot(tx - z) <= tol;
}

bool fne_check(const Operator& op, const Vector& x, const Vector& y, double tol) {
  const Vector d = op.apply(x) - op.apply(y);
  return d.squaredNorm() <= d.dot(x - y) + tol;
}

Operator relax(const Operator& op, double lambda) { return Operator::relaxed(op, lambda); }

}  // namespace evfam::cfp
