#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evfam::cfp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default tolerance of the Fix-membership oracle (Euclidean norm).
inline constexpr double kFixTolerance = 1e-9;
/// Slack allowed in the cutter and firm-nonexpansiveness inequalities.
inline constexpr double kInequalityTolerance = 1e-10;

enum class OperatorKind { Halfspace, Hyperplane, Ball, Box, Affine, Subgradient, Averaged, Relaxed, Custom };

std::string to_string(OperatorKind k);

/// One affine piece <g, x> + h of a convex piecewise-linear function.
struct AffinePiece {
  Vector g;
  double h = 0.0;
};

/// A self-map of R^J with a fixed-point oracle.
///
/// The projection kinds and the subgradient projector are cutters;
/// `averaged` and `relaxed` wrap another operator. Custom operators wrap an
/// arbitrary function and carry no structural flags.
class Operator {
 public:
  /// Projection onto {u : <a, u> <= b}.
  static Operator halfspace(Vector a, double b);
  /// Projection onto {u : <a, u> = b}.
  static Operator hyperplane(Vector a, double b);
  static Operator ball(Vector center, double radius);
  static Operator box(Vector lo, Vector hi);
  /// Projection onto {u : A u = d}; A must have full row rank.
  static Operator affine(Matrix a, Vector d);
  /// Subgradient projector onto the zero sublevel set of max_k <g_k, x> + h_k.
  static Operator subgradient(std::vector<AffinePiece> pieces);
  /// x -> (x + T(x)) / 2.
  static Operator averaged(Operator inner);
  /// x -> x + lambda (T(x) - x), lambda in [0, 2].
  static Operator relaxed(Operator inner, double lambda);
  static Operator custom(std::size_t dim, std::function<Vector(const Vector&)> fn, std::string name = "custom");

  OperatorKind kind() const;
  std::size_t dim() const;
  Vector apply(const Vector& x) const;
  /// ||T(x) - x||.
  double residual(const Vector& x) const { return (apply(x) - x).norm(); }
  bool in_fix(const Vector& x, double tol = kFixTolerance) const { return residual(x) <= tol; }

  bool is_cutter() const;
  bool is_firmly_nonexpansive() const;
  bool is_projection() const;
  /// T - Id demiclosed at 0 (declared; true for every built-in kind).
  bool demiclosed_at_zero() const;

  // Parameters, for serialization.
  const Vector& normal() const;
  double offset() const;
  const Vector& center() const;
  double radius() const;
  const Vector& lower() const;
  const Vector& upper() const;
  const Matrix& matrix() const;
  const Vector& rhs() const;
  const std::vector<AffinePiece>& pieces() const;
  const Operator& inner() const;
  double lambda() const;

  std::string describe() const;

 private:
  struct Node;
  explicit Operator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Vector apply_operator(const Operator& op, const Vector& x);

/// <T(x) - x, T(x) - z> <= tol. Throws std::invalid_argument if z is not a
/// fixed point of `op`.
bool cutter_check(const Operator& op, const Vector& x, const Vector& z, double tol = kInequalityTolerance);

/// ||T(x) - T(y)||^2 <= <T(x) - T(y), x - y> + tol.
bool fne_check(const Operator& op, const Vector& x, const Vector& y, double tol = kInequalityTolerance);

/// Id + lambda (T - Id). Throws std::invalid_argument unless lambda ∈ [0, 2].
Operator relax(const Operator& op, double lambda);

// ---------------------------------------------------------------------------
// Controls and relaxation

enum class ControlKind { Cyclic, AlmostCyclic, Explicit };

/// A control sequence i(n), n >= 0, of 0-based operator indices.
class Control {
 public:
  /// i(n) = n mod m.
  static Control cyclic(std::size_t m);
  /// `pattern` repeated forever.
  static Control almost_cyclic(std::vector<std::size_t> pattern);
  /// Exactly the listed indices; the sequence ends with the list.
  static Control explicit_list(std::vector<std::size_t> list);

  ControlKind kind() const { return kind_; }
  std::size_t at(std::size_t n) const;
  /// Length for explicit lists.
  std::optional<std::size_t> length() const;
  const std::vector<std::size_t>& pattern() const { return pattern_; }

 private:
  Control(ControlKind kind, std::vector<std::size_t> pattern) : kind_(kind), pattern_(std::move(pattern)) {}
  ControlKind kind_;
  std::vector<std::size_t> pattern_;
};

/// Smallest c such that every window i(n+1), ..., i(n+c), n >= 0, covers
/// all of 0..m-1. Periodic controls are analysed over one period, explicit
/// lists over their first `horizon` entries. Throws std::invalid_argument if
/// an index is out of range or never appears in some window.
std::size_t control_validate(const Control& ctrl, std::size_t m, std::size_t horizon);

/// Relaxation schedule lambda_n.
class Relaxation {
 public:
  static Relaxation constant(double value);
  /// `values` repeated cyclically.
  static Relaxation sequence(std::vector<double> values);

  double at(std::size_t n) const { return values_[n % values_.size()]; }
  const std::vector<double>& values() const { return values_; }
  bool is_constant() const { return values_.size() == 1; }
  double inf() const;
  double sup() const;

 private:
  explicit Relaxation(std::vector<double> values);
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// ACSA

struct StopRule {
  double tol = 1e-6;
  std::size_t max_iter = 100000;
  /// Max residual over all operators is evaluated every `stride` iterations.
  std::size_t stride = 10;
};

enum class RunStatus { Converged, IterationCap };

std::string to_string(RunStatus s);

struct Checkpoint {
  std::size_t n = 0;
  double max_residual = 0.0;
};

/// Log of one run: iterates x_0..x_N and, for every step n < N, the applied
/// operator, relaxation and step residual ||T_{i(n)}(x_n) - x_n||.
struct Trace {
  std::vector<Vector> iterates;
  std::vector<std::size_t> controls;
  std::vector<double> lambdas;
  std::vector<double> step_residuals;
  std::vector<Checkpoint> checkpoints;
  RunStatus status = RunStatus::IterationCap;

  std::size_t steps() const { return controls.size(); }
  const Vector& final_point() const { return iterates.back(); }
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double max_residual(std::span<const Operator> ops, const Vector& x);

/// Runs x_{n+1} = x_n + lambda_n (T_{i(n)}(x_n) - x_n) until the max residual
/// at a checkpoint is <= stop.tol or the iteration cap is reached. Throws
/// std::invalid_argument for malformed input and NumericalError when an
/// iterate stops being finite.
Trace acsa_run(std::span<const Operator> ops, const Control& ctrl, const Relaxation& relax, const Vector& x0,
               const StopRule& stop);

struct ReplayResult {
  bool ok = true;
  std::size_t first_mismatch = 0;
  double max_deviation = 0.0;
  std::string detail;
};

/// Recomputes every step of `trace` against `ops` and compares with the
/// stored iterates.
ReplayResult replay(const Trace& trace, std::span<const Operator> ops, double tol = 1e-12);

/// Number of steps n with ||x_{n+1} - z|| > ||x_n - z|| + tol.
std::size_t fejer_violations(const Trace& trace, const Vector& z, double tol = kInequalityTolerance);

}  // namespace evfam::cfp
