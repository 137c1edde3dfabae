#pragma once

#include <string>

#include "nlpdhg/types.hpp"

namespace nlpdhg {

enum class Regime { Constant, AccPrimal, AccDual, LinearRateXFirst, LinearRateYFirst };

std::string regime_name(Regime r);

struct LinearRateParams {
  double theta;
  double tau;
  double sigma;
};

// theta = 1 - (g*h/(2 L^2)) (sqrt(1 + 4 L^2/(g*h)) - 1), tau = (1-theta)/(g theta),
// sigma = (1-theta)/(h theta).
LinearRateParams linear_rate_params(double gamma_g, double gamma_h_star, double op_norm);

// Step sizes (theta_k, tau_k, sigma_k) and their update law.
class StepSchedule {
 public:
  StepSchedule() = default;
  static StepSchedule constant(double tau, double sigma, double op_norm);
  // tau0 = 1/(L^2 sigma0).
  static StepSchedule acc_primal(double gamma_g, double op_norm, double sigma0, double theta0 = 1.0);
  // sigma0 = 1/(L^2 tau0).
  static StepSchedule acc_dual(double gamma_h_star, double op_norm, double tau0, double theta0 = 0.0);
  static StepSchedule linear_rate(double gamma_g, double gamma_h_star, double op_norm, bool y_first);

  Regime regime() const { return regime_; }
  std::size_t k() const { return k_; }
  double theta() const { return theta_; }
  double tau() const { return tau_; }
  double sigma() const { return sigma_; }
  double tau0() const { return tau0_; }
  double sigma0() const { return sigma0_; }
  double gamma() const { return gamma_; }
  double op_norm() const { return op_norm_; }

  // Sign applied to the extrapolation term; +1 by default. -1 reproduces the
  // minus-sign variant of the matrix-game update.
  double extrapolation_sign() const { return extrapolation_sign_; }
  StepSchedule& set_extrapolation_sign(double s);

  // Weight of the iterate produced by the next step: 1, sigma_k/sigma0,
  // tau_k/tau0 or theta^{-k}.
  double ergodic_weight() const;

  // Moves from (theta_k, tau_k, sigma_k) to k + 1.
  void advance();

 private:
  Regime regime_ = Regime::Constant;
  std::size_t k_ = 0;
  double theta_ = 1.0, tau_ = 0.0, sigma_ = 0.0;
  double tau0_ = 0.0, sigma0_ = 0.0;
  double gamma_ = 0.0, op_norm_ = 0.0;
  double extrapolation_sign_ = 1.0;
  double weight_ = 1.0;  // theta^{-k} for the linear-rate regimes
};

}  // namespace nlpdhg
