#ifndef GRADARG_INVERSE_HPP
#define GRADARG_INVERSE_HPP

/**
 * @file inverse.hpp
 * @brief From a desired preference ordering to initial weights.
 *
 * Two phases. compute_bounds() turns the ordering into strictly decreasing
 * target degrees, one per class. The weights are then obtained either
 * analytically, as w = k(x) with k(x)_i = x_i (1 + phi_i(x)), or numerically by
 * coordinate-wise bisection on the forward map.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "gradarg/framework.hpp"
#include "gradarg/kernels.hpp"
#include "gradarg/semantics.hpp"

namespace gradarg {

struct BoundsConfig {
  /// Gap parameter separating consecutive classes; must be > 0.
  double zeta = 1.0;
  /// Bound the recursion starts from, in (0, 1].
  double top = 1.0;

  void validate() const {
    if (!(zeta > 0.0)) throw Error(ErrorKind::invalid_parameter, "zeta must be > 0");
    if (!(top > 0.0 && top <= 1.0)) throw Error(ErrorKind::invalid_parameter, "top must lie in (0, 1]");
  }
};

/**
 * @brief Target degrees for an ordering: level k gets max_{k-1} / (1 + m_k + zeta).
 *
 * m_k is the largest Kernel::upper_bound over the members of class k and
 * max_{-1} = config.top. For the built-ins this is 1 + |Att| + zeta (HC),
 * 2 + |Att| + zeta (CB) and 2 + zeta (MB).
 */
inline DegreeVector compute_bounds(const OrderingPartition& partition, const Topology& topology, const Kernel& kernel,
                                   const BoundsConfig& config = {}) {
  config.validate();
  partition.validate_against(topology);
  DegreeVector targets(topology.size(), 0.0);
  double upper = config.top;
  for (const auto& cls : partition.classes()) {
    double m = 0.0;
    for (const auto& id : cls) m = std::max(m, kernel.upper_bound(topology, topology.index_of(id)));
    const double level = upper / (1.0 + m + config.zeta);
    for (const auto& id : cls) targets[topology.index_of(id)] = level;
    upper = level;
  }
  return targets;
}

enum class InverseMethod { analytic, bisection };

constexpr std::string_view to_string(InverseMethod m) noexcept {
  return m == InverseMethod::analytic ? "analytic" : "bisection";
}

struct InverseSolution {
  WeightVector weights;
  InverseMethod method = InverseMethod::analytic;
  /// Degrees obtained by evaluating the weights forward.
  DegreeVector achieved;
  /// ||achieved - targets||_inf.
  double residual = 0.0;
  /// Every weight lies in [0, 1].
  bool feasible = false;
  /// Bisection: all gaps within tolerance. Analytic: always true.
  bool converged = true;
  std::size_t kernel_evaluations = 0;
  /// Fixed-point solves spent searching for the weights (excludes the final re-evaluation).
  std::size_t search_solves = 0;
  std::size_t rounds = 0;
};

namespace detail {

inline bool all_in_unit_interval(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return e >= 0.0 && e <= 1.0; });
}

inline void finish(InverseSolution& s, const Topology& topology, const Kernel& kernel, std::span<const double> targets,
                   const FixedPointConfig& config) {
  s.feasible = all_in_unit_interval(s.weights);
  FixedPointConfig c = config;
  c.initial_point.reset();
  s.achieved = iterate(topology, kernel, s.weights, c).degrees;
  s.residual = max_abs_diff(s.achieved, targets);
}

}  // namespace detail

/// k(x)_i = x_i (1 + phi_i(x)); card-based active sets come from x (x_j > 0).
inline WeightVector weights_for_degrees(std::span<const double> degrees, const Topology& topology, const Kernel& kernel) {
  detail::require_same_size(degrees.size(), topology.size(), "degree vector");
  std::vector<double> phi(topology.size());
  kernel.evaluate(topology, degrees, degrees, phi);
  WeightVector w(topology.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = degrees[i] * (1.0 + phi[i]);
  return w;
}

/**
 * @brief The built-in inversions written with the attack matrix A.
 *
 * HC: w = x + diag(x) A x.
 * CB: w = x + D x + D^-1 diag(x) A x on rows with D_ii = |Att*(a_i)| > 0, w_i = x_i otherwise.
 * MB: w_i = x_i (1 + max_j A_ij x_j).
 */
inline WeightVector matrix_form_weights(std::span<const double> x, const Topology& topology, Builtin semantics) {
  const std::size_t n = topology.size();
  detail::require_same_size(x.size(), n, "degree vector");
  const AttackMatrix a = topology.attack_matrix();
  WeightVector w(n);
  switch (semantics) {
    case Builtin::h_categorizer: {
      const auto ax = a.multiply(x);
      for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + x[i] * ax[i];
      break;
    }
    case Builtin::card_based: {
      // Attackers with x_j = 0 add nothing to A x, so A x already equals the sum over Att*.
      const auto ax = a.multiply(x);
      for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (a(i, j) != 0 && x[j] > 0.0) d += 1.0;
        }
        w[i] = d > 0.0 ? x[i] + d * x[i] + (x[i] * ax[i]) / d : x[i];
      }
      break;
    }
    case Builtin::max_based: {
      for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, a(i, j) * x[j]);
        w[i] = x[i] + x[i] * m;
      }
      break;
    }
  }
  return w;
}

/// Weights realizing @p targets via one kernel evaluation; infeasibility is reported, not thrown.
inline InverseSolution invert_analytic(std::span<const double> targets, const Topology& topology, const Kernel& kernel,
                                       const FixedPointConfig& config = {}) {
  detail::require_same_size(targets.size(), topology.size(), "target vector");
  detail::require_unit_interval(targets, "target");
  InverseSolution s;
  s.method = InverseMethod::analytic;
  s.weights = weights_for_degrees(targets, topology, kernel);
  s.kernel_evaluations = 1;
  detail::finish(s, topology, kernel, targets, config);
  return s;
}

struct BisectionConfig {
  /// Stop once every |achieved_i - target_i| is at most this.
  double tolerance = 1e-10;
  /// Outer rounds; 0 means 64 n.
  std::size_t max_rounds = 0;
  /// Forward solves per scalar search.
  std::size_t max_probes = 100;
  FixedPointConfig fixed_point{.tolerance = 1e-14, .max_iterations = 10000, .initial_point = std::nullopt};
};

/**
 * @brief Numerical inversion by repeated scalar bisection.
 *
 * Starts from w = targets. Each round picks the argument whose degree is
 * furthest from its target and bisects its weight over [0, 1], holding the
 * other weights fixed; every probe is a full fixed-point solve. Relies on the
 * degree of an argument increasing with its own weight.
 */
inline InverseSolution invert_bisection(std::span<const double> targets, const Topology& topology, const Kernel& kernel,
                                        const BisectionConfig& config = {}) {
  const std::size_t n = topology.size();
  detail::require_same_size(targets.size(), n, "target vector");
  detail::require_unit_interval(targets, "target");
  if (!(config.tolerance > 0.0)) throw Error(ErrorKind::invalid_parameter, "bisection tolerance must be > 0");
  if (config.max_probes < 1) throw Error(ErrorKind::invalid_parameter, "max-probes must be >= 1");

  InverseSolution s;
  s.method = InverseMethod::bisection;
  s.weights.assign(targets.begin(), targets.end());

  FixedPointConfig fp = config.fixed_point;
  fp.initial_point.reset();
  DegreeVector x;
  auto solve = [&] {
    ++s.search_solves;
    x = detail::iterate(topology, kernel, s.weights, fp).degrees;
    fp.initial_point = x;
  };
  auto worst = [&] {
    std::size_t arg = 0;
    double gap = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = std::abs(x[i] - targets[i]);
      if (g > gap) {
        gap = g;
        arg = i;
      }
    }
    return std::pair{arg, gap};
  };

  solve();
  const std::size_t max_rounds = config.max_rounds != 0 ? config.max_rounds : 64 * n;
  const double scalar_tolerance = config.tolerance / 64.0;
  while (n > 0 && s.rounds < max_rounds) {
    const auto [i, gap] = worst();
    if (gap <= config.tolerance) break;
    ++s.rounds;
    double lo = 0.0;
    double hi = 1.0;
    for (std::size_t probe = 0; probe < config.max_probes; ++probe) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      s.weights[i] = mid;
      solve();
      const double diff = x[i] - targets[i];
      if (std::abs(diff) <= scalar_tolerance) break;
      (diff < 0.0 ? lo : hi) = mid;
    }
  }
  s.converged = n == 0 || worst().second <= config.tolerance;
  detail::finish(s, topology, kernel, targets, config.fixed_point);
  return s;
}

struct InverseOptions {
  FixedPointConfig fixed_point;
  BisectionConfig bisection;
};

struct InverseReport {
  DegreeVector targets;
  InverseSolution solution;
  /// Forward evaluation of the weights reproduces the requested ordering.
  bool verified = false;
  OrderingPartition achieved_ranking;
  std::string verification_message;
};

/**
 * @brief compute_bounds followed by the chosen inversion, then a forward check.
 *
 * Verification evaluates the weights and compares the induced ranking (ties at
 * 10x the method's tolerance) with the requested partition. A failed check is
 * part of the report.
 */
inline InverseReport solve_inverse(const Topology& topology, const OrderingPartition& partition, const Kernel& kernel,
                                   const BoundsConfig& bounds, InverseMethod method, const InverseOptions& options = {}) {
  InverseReport r;
  r.targets = compute_bounds(partition, topology, kernel, bounds);
  double tie = 10.0 * options.fixed_point.tolerance;
  if (method == InverseMethod::analytic) {
    r.solution = invert_analytic(r.targets, topology, kernel, options.fixed_point);
  } else {
    r.solution = invert_bisection(r.targets, topology, kernel, options.bisection);
    tie = 10.0 * std::max(options.fixed_point.tolerance, options.bisection.tolerance);
  }

  if (!r.solution.feasible) {
    r.verification_message = "weights outside [0, 1]";
    return r;
  }
  const auto framework = WeightedFramework::from_topology(topology, r.solution.weights);
  const auto eval = fixed_point(framework, kernel, options.fixed_point);
  r.achieved_ranking = ordering_from_degrees(topology, eval.degrees, tie);
  r.verified = eval.converged && r.achieved_ranking == partition;
  if (!eval.converged) {
    r.verification_message = "forward evaluation did not converge";
  } else if (!r.verified) {
    r.verification_message = "achieved ranking " + r.achieved_ranking.to_string() + " differs from requested " +
                             partition.to_string();
  } else {
    r.verification_message = "ok";
  }
  return r;
}

}  // namespace gradarg

#endif  // GRADARG_INVERSE_HPP
