#pragma once

#include <string>

#include "nlpdhg/bregman.hpp"
#include "nlpdhg/linear_operator.hpp"

namespace nlpdhg {

// Current and previous primal/dual points.
struct IterateState {
  Point x, x_prev;
  Point y, y_prev;
  std::size_t k = 0;

  static IterateState start(Point x0, Point y0) {
    IterateState s;
    s.x = x0;
    s.x_prev = std::move(x0);
    s.y = y0;
    s.y_prev = std::move(y0);
    return s;
  }
};

// min_x max_y  g(x) + <y, A x> - h*(y), accessed through Bregman proximal maps.
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  // argmin_x g(x) + <y_tilde, A x> + (1/tau) D_X(x, x_bar)
  virtual Point primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const = 0;
  // argmax_y -h*(y) + <y, A x_tilde> - (1/sigma) D_Y(y, y_bar)
  virtual Point dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const = 0;

  virtual const LinearOperator& op() const = 0;
  virtual double op_norm() const = 0;
  virtual double gamma_g() const { return 0.0; }
  virtual double gamma_h_star() const { return 0.0; }
  virtual const BregmanGeometry& geom_x() const = 0;
  virtual const BregmanGeometry& geom_y() const = 0;
  virtual std::string id() const { return "problem"; }

  // g(x) + <y, Ax> - h*(y); only needed for gap diagnostics.
  virtual double lagrangian(const Vector& x, const Vector& y) const;

  // Default starting point of the application.
  virtual IterateState initial_state() const = 0;
};

}  // namespace nlpdhg
