#ifndef GRADARG_SEMANTICS_HPP
#define GRADARG_SEMANTICS_HPP

/**
 * @file semantics.hpp
 * @brief Forward evaluation: the fixed point of Phi_w(x)_i = w_i / (1 + phi_i(x)).
 *
 * Phi_w is order reversing on [0,1]^n and the plain iteration x <- Phi_w(x)
 * converges to its unique fixed point from any start. Card-based kernels take
 * their active attacker set from the weights (w_j > 0) in this direction.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gradarg/framework.hpp"
#include "gradarg/kernels.hpp"

namespace gradarg {

struct FixedPointConfig {
  /// Stop once successive iterates differ by at most this in max-norm.
  double tolerance = 1e-12;
  std::size_t max_iterations = 10000;
  /// Defaults to the weight vector.
  std::optional<DegreeVector> initial_point;

  void validate(std::size_t n) const {
    if (!(tolerance > 0.0)) throw Error(ErrorKind::invalid_parameter, "fixed-point tolerance must be > 0");
    if (max_iterations < 1) throw Error(ErrorKind::invalid_parameter, "max-iterations must be >= 1");
    if (initial_point) {
      detail::require_same_size(initial_point->size(), n, "initial point");
      detail::require_unit_interval(*initial_point, "initial point");
    }
  }
};

struct FixedPointResult {
  DegreeVector degrees;
  std::size_t iterations = 0;
  /// ||x(k+1) - x(k)||_inf at termination.
  double residual = 0.0;
  /// ||x - Phi_w(x)||_inf at the returned degrees.
  double fixed_point_residual = 0.0;
  bool converged = false;
};

namespace detail {

template <KernelLike K>
void phi_step_into(const Topology& topology, const K& kernel, std::span<const double> weights,
                   std::span<const double> x, std::span<double> phi, std::span<double> out) {
  kernel.evaluate(topology, x, weights, phi);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = weights[i] / (1.0 + phi[i]);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Iteration on raw weights; weights need only be non-negative (used to re-evaluate infeasible inversions).
template <KernelLike K>
FixedPointResult iterate(const Topology& topology, const K& kernel, std::span<const double> weights,
                         const FixedPointConfig& config) {
  const std::size_t n = topology.size();
  require_same_size(weights.size(), n, "weight vector");
  config.validate(n);

  FixedPointResult result;
  std::vector<double> x = config.initial_point ? *config.initial_point
                                               : std::vector<double>(weights.begin(), weights.end());
  std::vector<double> next(n), phi(n);
  for (std::size_t k = 0; k < config.max_iterations; ++k) {
    phi_step_into(topology, kernel, weights, x, phi, next);
    result.residual = max_abs_diff(next, x);
    result.iterations = k + 1;
    x.swap(next);
    if (result.residual <= config.tolerance) {
      result.converged = true;
      break;
    }
  }
  phi_step_into(topology, kernel, weights, x, phi, next);
  result.fixed_point_residual = max_abs_diff(next, x);
  result.degrees = std::move(x);
  return result;
}

}  // namespace detail

/// One application of Phi_w.
template <KernelLike K>
DegreeVector phi_step(const WeightedFramework& framework, const K& kernel, std::span<const double> x) {
  const std::size_t n = framework.size();
  detail::require_same_size(x.size(), n, "degree vector");
  DegreeVector out(n), phi(n);
  detail::phi_step_into(framework.topology(), kernel, framework.weights(), x, phi, out);
  return out;
}

/**
 * Iterates Phi_w until the successive difference drops to the tolerance.
 * Running out of iterations is reported through `converged`, never thrown.
 */
template <KernelLike K>
FixedPointResult fixed_point(const WeightedFramework& framework, const K& kernel, const FixedPointConfig& config = {}) {
  return detail::iterate(framework.topology(), kernel, framework.weights(), config);
}

struct Evaluation {
  FixedPointResult result;
  OrderingPartition ranking;
};

/// Fixed point plus the induced ranking, with ties at 10x the solver tolerance.
template <KernelLike K>
Evaluation evaluate(const WeightedFramework& framework, const K& kernel, const FixedPointConfig& config = {}) {
  Evaluation e;
  e.result = fixed_point(framework, kernel, config);
  e.ranking = ordering_from_degrees(framework.topology(), e.result.degrees, 10.0 * config.tolerance);
  return e;
}

}  // namespace gradarg

#endif  // GRADARG_SEMANTICS_HPP
