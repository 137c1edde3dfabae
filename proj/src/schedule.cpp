#include "nlpdhg/schedule.hpp"

#include <cmath>

namespace nlpdhg {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive and finite");
}

}  // namespace

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Constant: return "constant";
    case Regime::AccPrimal: return "acc-primal";
    case Regime::AccDual: return "acc-dual";
    case Regime::LinearRateXFirst: return "linear-rate-x-first";
    case Regime::LinearRateYFirst: return "linear-rate-y-first";
  }
  return "?";
}

LinearRateParams linear_rate_params(double gamma_g, double gamma_h_star, double op_norm) {
  require_positive(gamma_g, "gamma_g");
  require_positive(gamma_h_star, "gamma_h_star");
  require_positive(op_norm, "op_norm");
  // With r = g h / L^2 and q = sqrt(1 + 4/r): theta = (q-1)/(q+1), 1-theta = 2/(q+1).
  // q - 1 = (4/r)/(q+1) avoids the cancellation when r is large.
  const double r = gamma_g * gamma_h_star / (op_norm * op_norm);
  const double q = std::sqrt(1.0 + 4.0 / r);
  const double theta = 4.0 / (r * (q + 1.0) * (q + 1.0));
  const double one_minus = 2.0 / (q + 1.0);
  return {theta, one_minus / (gamma_g * theta), one_minus / (gamma_h_star * theta)};
}

StepSchedule StepSchedule::constant(double tau, double sigma, double op_norm) {
  require_positive(tau, "tau");
  require_positive(sigma, "sigma");
  require_positive(op_norm, "op_norm");
  if (!(tau * sigma * op_norm * op_norm < 1.0))
    throw ConfigError("constant schedule requires tau*sigma*||A||^2 < 1");
  StepSchedule s;
  s.regime_ = Regime::Constant;
  s.tau_ = s.tau0_ = tau;
  s.sigma_ = s.sigma0_ = sigma;
  s.op_norm_ = op_norm;
  s.theta_ = 1.0;
  return s;
}

StepSchedule StepSchedule::acc_primal(double gamma_g, double op_norm, double sigma0, double theta0) {
  require_positive(gamma_g, "gamma_g");
  require_positive(op_norm, "op_norm");
  require_positive(sigma0, "sigma0");
  if (!(theta0 >= 0.0 && theta0 <= 1.0)) throw ConfigError("theta0 must lie in [0, 1]");
  StepSchedule s;
  s.regime_ = Regime::AccPrimal;
  s.gamma_ = gamma_g;
  s.op_norm_ = op_norm;
  s.sigma_ = s.sigma0_ = sigma0;
  s.tau_ = s.tau0_ = 1.0 / (op_norm * op_norm * sigma0);
  s.theta_ = theta0;
  return s;
}

StepSchedule StepSchedule::acc_dual(double gamma_h_star, double op_norm, double tau0, double theta0) {
  require_positive(gamma_h_star, "gamma_h_star");
  require_positive(op_norm, "op_norm");
  require_positive(tau0, "tau0");
  if (!(theta0 >= 0.0 && theta0 <= 1.0)) throw ConfigError("theta0 must lie in [0, 1]");
  StepSchedule s;
  s.regime_ = Regime::AccDual;
  s.gamma_ = gamma_h_star;
  s.op_norm_ = op_norm;
  s.tau_ = s.tau0_ = tau0;
  s.sigma_ = s.sigma0_ = 1.0 / (op_norm * op_norm * tau0);
  s.theta_ = theta0;
  return s;
}

StepSchedule StepSchedule::linear_rate(double gamma_g, double gamma_h_star, double op_norm, bool y_first) {
  const LinearRateParams p = linear_rate_params(gamma_g, gamma_h_star, op_norm);
  StepSchedule s;
  s.regime_ = y_first ? Regime::LinearRateYFirst : Regime::LinearRateXFirst;
  s.op_norm_ = op_norm;
  s.theta_ = p.theta;
  s.tau_ = s.tau0_ = p.tau;
  s.sigma_ = s.sigma0_ = p.sigma;
  return s;
}

StepSchedule& StepSchedule::set_extrapolation_sign(double sgn) {
  if (sgn != 1.0 && sgn != -1.0) throw ConfigError("extrapolation sign must be +1 or -1");
  extrapolation_sign_ = sgn;
  return *this;
}

double StepSchedule::ergodic_weight() const {
  switch (regime_) {
    case Regime::Constant: return 1.0;
    case Regime::AccPrimal: return sigma_ / sigma0_;
    case Regime::AccDual: return tau_ / tau0_;
    case Regime::LinearRateXFirst:
    case Regime::LinearRateYFirst: return weight_;
  }
  return 1.0;
}

void StepSchedule::advance() {
  switch (regime_) {
    case Regime::Constant: break;
    case Regime::AccPrimal: {
      const double th = 1.0 / std::sqrt(1.0 + gamma_ * tau_);
      theta_ = th;
      tau_ = th * tau_;
      sigma_ = sigma_ / th;
      break;
    }
    case Regime::AccDual: {
      const double th = 1.0 / std::sqrt(1.0 + gamma_ * sigma_);
      theta_ = th;
      tau_ = tau_ / th;
      sigma_ = th * sigma_;
      break;
    }
    case Regime::LinearRateXFirst:
    case Regime::LinearRateYFirst: weight_ /= theta_; break;
  }
  ++k_;
}

}  // namespace nlpdhg
