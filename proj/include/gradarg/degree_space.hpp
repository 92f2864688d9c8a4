#ifndef GRADARG_DEGREE_SPACE_HPP
#define GRADARG_DEGREE_SPACE_HPP

/**
 * @file degree_space.hpp
 * @brief The set of attainable degree vectors for a topology and kernel.
 *
 * x is attainable iff k(x) = x * (1 + phi(x)) lies in [0,1]^n, since k inverts
 * the forward map on that set. The space is closed and connected but in general
 * not convex.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gradarg/framework.hpp"
#include "gradarg/inverse.hpp"
#include "gradarg/kernels.hpp"
#include "gradarg/semantics.hpp"

namespace gradarg {

/// Membership by range-checking k(x).
inline bool is_valid_degree_vector(std::span<const double> x, const Topology& topology, const Kernel& kernel) {
  detail::require_same_size(x.size(), topology.size(), "degree vector");
  detail::require_unit_interval(x, "degree");
  return detail::all_in_unit_interval(weights_for_degrees(x, topology, kernel));
}

/// Largest degree a self-attacking argument can reach: x(1+x) = 1 for HC/MB, x(2+x) = 1 for CB.
inline double max_self_attack_degree(const Kernel& kernel) {
  const auto b = kernel.builtin();
  if (!b) throw Error(ErrorKind::unsupported_kernel, "self-attack cap is only known for hc, mb and cb");
  if (*b == Builtin::card_based) return std::sqrt(2.0) - 1.0;
  return (std::sqrt(5.0) - 1.0) / 2.0;
}

/// Degree 1 is attainable for some argument iff no argument attacks itself.
inline bool can_reach_degree_one(const Topology& topology) { return !topology.has_self_attack(); }

inline bool can_reach_degree_one(const Topology& topology, std::size_t i) { return !topology.self_attacking(i); }

/// Weight 1 on argument i and 0 elsewhere, which gives degree 1 to i unless it attacks itself.
inline std::optional<WeightVector> degree_one_witness(const Topology& topology, std::size_t i) {
  if (!can_reach_degree_one(topology, i)) return std::nullopt;
  WeightVector w(topology.size(), 0.0);
  w.at(i) = 1.0;
  return w;
}

/// A permutation of the arguments that preserves the attack relation.
class GraphIsomorphism {
 public:
  /// @p image[i] is the index argument i maps to. Throws Error{not_an_isomorphism}.
  static GraphIsomorphism from_indices(const Topology& topology, std::vector<std::size_t> image) {
    const std::size_t n = topology.size();
    detail::require_same_size(image.size(), n, "isomorphism");
    std::vector<bool> hit(n, false);
    for (std::size_t v : image) {
      if (v >= n || hit[v]) throw Error(ErrorKind::not_an_isomorphism, "mapping is not a bijection");
      hit[v] = true;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (topology.attacks(a, b) != topology.attacks(image[a], image[b])) {
          throw Error(ErrorKind::not_an_isomorphism, "attack (" + topology.id(a) + ", " + topology.id(b) +
                                                         ") is not preserved");
        }
      }
    }
    GraphIsomorphism g;
    g.image_ = std::move(image);
    return g;
  }

  static GraphIsomorphism from_ids(const Topology& topology, const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::size_t> image(topology.size(), topology.size());
    for (const auto& [from, to] : pairs) image.at(topology.index_of(from)) = topology.index_of(to);
    for (std::size_t v : image) {
      if (v == topology.size()) throw Error(ErrorKind::not_an_isomorphism, "mapping does not cover every argument");
    }
    return from_indices(topology, std::move(image));
  }

  static GraphIsomorphism identity(const Topology& topology) {
    std::vector<std::size_t> image(topology.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    return from_indices(topology, std::move(image));
  }

  std::size_t operator()(std::size_t i) const { return image_.at(i); }
  std::size_t size() const noexcept { return image_.size(); }

 private:
  std::vector<std::size_t> image_;
};

/// Swaps coordinates i and j. Throws unless the isomorphism sends i to j.
inline DegreeVector permute_degrees(std::span<const double> x, const GraphIsomorphism& iso, std::size_t i, std::size_t j) {
  detail::require_same_size(x.size(), iso.size(), "degree vector");
  if (iso(i) != j) {
    throw Error(ErrorKind::not_an_isomorphism, "isomorphism does not map argument " + std::to_string(i) + " to " +
                                                   std::to_string(j));
  }
  DegreeVector out(x.begin(), x.end());
  std::swap(out.at(i), out.at(j));
  return out;
}

/// Moves every coordinate along the isomorphism: out[iso(i)] = x[i].
inline DegreeVector apply_isomorphism(std::span<const double> x, const GraphIsomorphism& iso) {
  detail::require_same_size(x.size(), iso.size(), "degree vector");
  DegreeVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[iso(i)] = x[i];
  return out;
}

/// Cartesian grid of weight levels, one axis per argument.
struct GridSampling {
  std::vector<double> levels;
};

/// Uniform random weight vectors.
struct RandomSampling {
  std::size_t count = 0;
};

using SamplingPlan = std::variant<GridSampling, RandomSampling>;

struct SpaceSample {
  std::vector<WeightVector> weights;
  std::vector<DegreeVector> points;
  KernelDescriptor kernel;
};

/// Maps sampled weight vectors through the forward semantics. Deterministic for a seed.
inline SpaceSample sample_degree_space(const Topology& topology, const Kernel& kernel, const SamplingPlan& plan,
                                       std::uint64_t seed, const FixedPointConfig& config = {}) {
  const std::size_t n = topology.size();
  SpaceSample out;
  out.kernel = kernel.descriptor();

  if (const auto* grid = std::get_if<GridSampling>(&plan)) {
    detail::require_unit_interval(grid->levels, "grid level");
    if (grid->levels.empty()) throw Error(ErrorKind::invalid_parameter, "grid needs at least one level");
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      WeightVector w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = grid->levels[digit[i]];
      out.weights.push_back(std::move(w));
      std::size_t k = 0;
      while (k < n && ++digit[k] == grid->levels.size()) digit[k++] = 0;
      if (k == n) break;
    }
  } else {
    const auto& random = std::get<RandomSampling>(plan);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < random.count; ++s) {
      WeightVector w(n);
      for (auto& v : w) v = unit(rng);
      out.weights.push_back(std::move(w));
    }
  }

  out.points.reserve(out.weights.size());
  for (const auto& w : out.weights) out.points.push_back(detail::iterate(topology, kernel, w, config).degrees);
  return out;
}

/**
 * @brief Finite difference (h(w + eps e_i)_i - h(w)_i) / eps.
 *
 * Throws Error{weight_out_of_range} when eps <= 0 or w_i + eps > 1.
 */
inline double monotonicity_probe(const WeightedFramework& framework, const Kernel& kernel, std::size_t i, double epsilon,
                                 const FixedPointConfig& config = {.tolerance = 1e-15, .max_iterations = 100000,
                                                                   .initial_point = std::nullopt}) {
  if (i >= framework.size()) throw Error(ErrorKind::unknown_id, "argument index out of range");
  const auto& w = framework.weights();
  if (!(epsilon > 0.0) || w[i] + epsilon > 1.0) {
    throw Error(ErrorKind::weight_out_of_range, "probe step leaves [0, 1]");
  }
  const auto base = fixed_point(framework, kernel, config);
  WeightVector shifted = w;
  shifted[i] += epsilon;
  FixedPointConfig warm = config;
  warm.initial_point = base.degrees;
  const auto moved = detail::iterate(framework.topology(), kernel, shifted, warm);
  return (moved.degrees[i] - base.degrees[i]) / epsilon;
}

/// Jacobian of k for the h-categorizer kernel: d k_i / d x_l.
inline std::vector<std::vector<double>> hc_jacobian(std::span<const double> x, const Topology& topology) {
  const std::size_t n = topology.size();
  detail::require_same_size(x.size(), n, "degree vector");
  const auto a = topology.attack_matrix();
  const auto ax = a.multiply(x);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) m[i][l] = a(i, l) * x[i];
    m[i][i] += 1.0 + ax[i];
  }
  return m;
}

}  // namespace gradarg

#endif  // GRADARG_DEGREE_SPACE_HPP
