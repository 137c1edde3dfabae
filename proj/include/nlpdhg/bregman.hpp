#pragma once

#include <string>

#include "nlpdhg/types.hpp"

namespace nlpdhg {

// Smallest admissible entry for arguments that must lie in the interior of an
// entropy domain.
inline constexpr double kDomainFloor = 1e-300;

// A point together with its mirror coordinate. For the negative entropy the
// lift is log(x); for the binary-entropy box it is the logit w with
// m*y = 1/(1 + exp(-w)). Quadratic geometries carry no lift.
struct Point {
  Vector value;
  Vector lift;

  Eigen::Index size() const { return value.size(); }
  bool has_lift() const { return lift.size() == value.size() && lift.size() > 0; }
};

class BregmanGeometry {
 public:
  enum class Kind { Quadratic, NegativeEntropy, BinaryEntropyAverage };

  // (c/2)||x||^2 on all of R^n.
  static BregmanGeometry quadratic(double scale = 1.0);
  // sum_j x_j log x_j, used on the unit simplex of dimension dim.
  static BregmanGeometry negative_entropy(Eigen::Index dim);
  // scale * (1/m) sum_i [p_i log p_i + (1 - p_i) log(1 - p_i)] with p = m*y,
  // on the box (0, 1/m)^m.
  static BregmanGeometry binary_entropy_average(Eigen::Index m, double scale);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  Eigen::Index dim() const { return dim_; }  // 0 means any dimension
  std::string name() const;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  // Closed form in log-ratio form.
  double divergence(const Vector& x, const Vector& x_bar) const;
  // Same quantity computed from lifts when both points carry one.
  double divergence(const Point& x, const Point& x_bar) const;
  // phi(x) - phi(x_bar) - <grad phi(x_bar), x - x_bar>, for cross-checks.
  double divergence_by_definition(const Vector& x, const Vector& x_bar) const;

  // |D(x,x') - D(xh,x') - D(x,xh) - <grad(x') - grad(xh), xh - x>|
  double three_point_check(const Vector& x, const Vector& x_hat,
                           const Vector& x_prime) const;

  Point make_point(const Vector& x) const;
  // Rebuilds the value from a lift. For the entropy the lift is normalised so
  // that the value sums to one.
  Point from_lift(const Vector& lift) const;

  void check_closure(const Vector& x, const char* who) const;
  void check_interior(const Vector& x, const char* who) const;

 private:
  BregmanGeometry(Kind k, double scale, Eigen::Index dim) : kind_(k), scale_(scale), dim_(dim) {}
  void check_dim(const Vector& x, const char* who) const;

  Kind kind_;
  double scale_;
  Eigen::Index dim_;
};

// log(sum exp(v)), shifted by the maximum.
double log_sum_exp(const Vector& v);
// Normalises a log-weight vector in place (lse becomes 0) and returns exp of it.
Vector normalize_log_weights(Vector& logw);
// log(1 + exp(t)) without overflow.
double softplus(double t);

}  // namespace nlpdhg
