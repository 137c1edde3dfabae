#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlpdhg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Point outside the domain of a geometry or problem.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inconsistent solver or schedule configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative routine gave up; carries the last estimate.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double last)
      : std::runtime_error(what), last_estimate(last) {}
  double last_estimate;
};

// NaN or Inf showed up in an iterate.
struct NumericalError : std::runtime_error {
  NumericalError(const std::string& what, std::size_t iter)
      : std::runtime_error(what), iteration(iter) {}
  std::size_t iteration;
};

inline void require_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": size " + std::to_string(a) +
                         " vs " + std::to_string(b));
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace nlpdhg
