#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace gbcurv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bidegree out of range for the requested operation.
class DegreeError : public Error {
 public:
  using Error::Error;
};

// Mixing forms over different ambient dimensions, or shape mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Two independent routes to the same quantity disagreed beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ChartError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Largest supported ambient dimension; keeps every factorial exact in int64.
inline constexpr int kMaxDim = 12;

std::int64_t factorial(int k);
std::int64_t binomial(int n, int k);

// |lhs - rhs| normalized by max(1, |lhs|, |rhs|).
double rel_residual(double lhs, double rhs);

// Deterministic order-independent-ish reduction: fixed pairwise tree.
double pairwise_sum(std::span<const double> xs);

}  // namespace gbcurv
