#include "nlpdhg/bregman.hpp"

#include <cmath>
#include <limits>

namespace nlpdhg {

namespace {

// t log t with the continuous extension at 0.
double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

// a log(a/b) with a >= 0, b > 0.
double xlogratio(double a, double b) { return a > 0.0 ? a * std::log(a / b) : 0.0; }

}  // namespace

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double log_sum_exp(const Vector& v) {
  if (v.size() == 0) return -std::numeric_limits<double>::infinity();
  const double mx = v.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((v.array() - mx).exp().sum());
}

Vector normalize_log_weights(Vector& logw) {
  logw.array() -= log_sum_exp(logw);
  return logw.array().exp();
}

BregmanGeometry BregmanGeometry::quadratic(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("quadratic geometry: scale must be positive");
  return BregmanGeometry(Kind::Quadratic, scale, 0);
}

BregmanGeometry BregmanGeometry::negative_entropy(Eigen::Index dim) {
  if (dim < 1) throw ConfigError("negative entropy: dimension must be positive");
  return BregmanGeometry(Kind::NegativeEntropy, 1.0, dim);
}

BregmanGeometry BregmanGeometry::binary_entropy_average(Eigen::Index m, double scale) {
  if (m < 1) throw ConfigError("binary entropy: m must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("binary entropy: scale must be positive");
  return BregmanGeometry(Kind::BinaryEntropyAverage, scale, m);
}

std::string BregmanGeometry::name() const {
  switch (kind_) {
    case Kind::Quadratic: return "quadratic";
    case Kind::NegativeEntropy: return "negative-entropy";
    case Kind::BinaryEntropyAverage: return "binary-entropy-average";
  }
  return "?";
}

void BregmanGeometry::check_dim(const Vector& x, const char* who) const {
  if (dim_ > 0) require_same_size(x.size(), dim_, who);
  if (!x.allFinite()) throw DomainError(std::string(who) + ": non-finite entry");
}

void BregmanGeometry::check_closure(const Vector& x, const char* who) const {
  check_dim(x, who);
  if (kind_ == Kind::NegativeEntropy) {
    if ((x.array() < 0.0).any()) throw DomainError(std::string(who) + ": negative entry");
  } else if (kind_ == Kind::BinaryEntropyAverage) {
    const double m = static_cast<double>(dim_);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x[i] < 0.0 || m * x[i] > 1.0) throw DomainError(std::string(who) + ": entry outside [0, 1/m]");
  }
}

void BregmanGeometry::check_interior(const Vector& x, const char* who) const {
  check_dim(x, who);
  if (kind_ == Kind::NegativeEntropy) {
    if ((x.array() < kDomainFloor).any()) throw DomainError(std::string(who) + ": entry on the boundary");
  } else if (kind_ == Kind::BinaryEntropyAverage) {
    const double m = static_cast<double>(dim_);
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (m * x[i] < kDomainFloor || 1.0 - m * x[i] < kDomainFloor)
        throw DomainError(std::string(who) + ": entry on the boundary of the box");
  }
}

double BregmanGeometry::value(const Vector& x) const {
  check_closure(x, "value");
  switch (kind_) {
    case Kind::Quadratic: return 0.5 * scale_ * x.squaredNorm();
    case Kind::NegativeEntropy: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.size(); ++j) s += xlogx(x[j]);
      return s;
    }
    case Kind::BinaryEntropyAverage: {
      const double m = static_cast<double>(dim_);
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double p = m * x[i];
        s += xlogx(p) + xlogx(1.0 - p);
      }
      return scale_ * s / m;
    }
  }
  return 0.0;
}

Vector BregmanGeometry::gradient(const Vector& x) const {
  check_interior(x, "gradient");
  switch (kind_) {
    case Kind::Quadratic: return scale_ * x;
    case Kind::NegativeEntropy: return (1.0 + x.array().log()).matrix();
    case Kind::BinaryEntropyAverage: {
      const double m = static_cast<double>(dim_);
      Vector g(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double p = m * x[i];
        g[i] = scale_ * (std::log(p) - std::log1p(-p));
      }
      return g;
    }
  }
  return x;
}

double BregmanGeometry::divergence(const Vector& x, const Vector& x_bar) const {
  require_same_size(x.size(), x_bar.size(), "divergence");
  check_closure(x, "divergence(x)");
  check_interior(x_bar, "divergence(x_bar)");
  switch (kind_) {
    case Kind::Quadratic: return 0.5 * scale_ * (x - x_bar).squaredNorm();
    case Kind::NegativeEntropy: {
      // Bregman divergence of sum x log x on the orthant; the linear terms
      // cancel on the simplex, leaving the KL divergence.
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.size(); ++j) s += xlogratio(x[j], x_bar[j]) - x[j] + x_bar[j];
      return std::max(s, 0.0);
    }
    case Kind::BinaryEntropyAverage: {
      const double m = static_cast<double>(dim_);
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double p = m * x[i], pb = m * x_bar[i];
        s += xlogratio(p, pb) + xlogratio(1.0 - p, 1.0 - pb);
      }
      return std::max(scale_ * s / m, 0.0);
    }
  }
  return 0.0;
}

double BregmanGeometry::divergence(const Point& x, const Point& x_bar) const {
  if (kind_ == Kind::Quadratic || !x.has_lift() || !x_bar.has_lift()) return divergence(x.value, x_bar.value);
  require_same_size(x.size(), x_bar.size(), "divergence");
  check_dim(x.lift, "divergence(x)");
  check_dim(x_bar.lift, "divergence(x_bar)");
  double s = 0.0;
  if (kind_ == Kind::NegativeEntropy) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double a = x.value[j];
      s += (a > 0.0 ? a * (x.lift[j] - x_bar.lift[j]) : 0.0) - a + x_bar.value[j];
    }
    return std::max(s, 0.0);
  }
  const double m = static_cast<double>(dim_);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double w = x.lift[i], wb = x_bar.lift[i];
    const double p = 1.0 / (1.0 + std::exp(-w)), q = 1.0 / (1.0 + std::exp(w));
    // log p = -softplus(-w), log q = -softplus(w)
    s += p * (softplus(-wb) - softplus(-w)) + q * (softplus(wb) - softplus(w));
  }
  return std::max(scale_ * s / m, 0.0);
}

double BregmanGeometry::divergence_by_definition(const Vector& x, const Vector& x_bar) const {
  require_same_size(x.size(), x_bar.size(), "divergence");
  return value(x) - value(x_bar) - gradient(x_bar).dot(x - x_bar);
}

double BregmanGeometry::three_point_check(const Vector& x, const Vector& x_hat,
                                          const Vector& x_prime) const {
  check_interior(x_hat, "three_point_check(x_hat)");
  check_interior(x_prime, "three_point_check(x_prime)");
  const double lhs = divergence(x, x_prime) - divergence(x_hat, x_prime) - divergence(x, x_hat);
  const double rhs = (gradient(x_prime) - gradient(x_hat)).dot(x_hat - x);
  return std::abs(lhs - rhs);
}

Point BregmanGeometry::make_point(const Vector& x) const {
  check_closure(x, "make_point");
  Point p{x, Vector()};
  if (kind_ == Kind::NegativeEntropy) {
    p.lift = x.array().log().matrix();
  } else if (kind_ == Kind::BinaryEntropyAverage) {
    const double m = static_cast<double>(dim_);
    p.lift.resize(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double t = m * x[i];
      p.lift[i] = std::log(t) - std::log1p(-t);
    }
  }
  return p;
}

Point BregmanGeometry::from_lift(const Vector& lift) const {
  if (kind_ == Kind::Quadratic) return Point{lift, Vector()};
  check_dim(lift, "from_lift");
  Point p;
  p.lift = lift;
  if (kind_ == Kind::NegativeEntropy) {
    p.value = normalize_log_weights(p.lift);
  } else {
    const double m = static_cast<double>(dim_);
    p.value = (1.0 / (m * (1.0 + (-lift.array()).exp()))).matrix();
  }
  return p;
}

}  // namespace nlpdhg
