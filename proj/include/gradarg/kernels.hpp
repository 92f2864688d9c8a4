#ifndef GRADARG_KERNELS_HPP
#define GRADARG_KERNELS_HPP

/**
 * @file kernels.hpp
 * @brief Argumentation kernels: per-argument aggregations of attacker degrees.
 *
 * A kernel maps a degree vector x in [0,1]^n to a non-negative vector phi(x).
 * The induced semantics is the unique fixed point of x_i = w_i / (1 + phi_i(x)).
 *
 * Kernels are values described by a KernelDescriptor tree, so they can be
 * rendered, parsed and compared. Any type modelling KernelLike can be used with
 * the fixed-point engine and the axiom checker.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gradarg/error.hpp"
#include "gradarg/framework.hpp"

namespace gradarg {

struct KernelDescriptor;
struct LinearTerm;

/// phi_i = max over attackers of x_j, 0 when unattacked.
struct MaxBased {
  friend bool operator==(const MaxBased&, const MaxBased&) = default;
};

/**
 * phi_i = |Att*| + (sum over Att* of x_j) / |Att*|, 0 when Att* is empty.
 * Att* holds the attackers whose support value is strictly positive: the weight
 * in forward evaluation, the degree itself otherwise.
 */
struct CardBased {
  friend bool operator==(const CardBased&, const CardBased&) = default;
};

/// phi_i = sum over attackers of x_j.
struct HCategorizer {
  friend bool operator==(const HCategorizer&, const HCategorizer&) = default;
};

/// phi_i = (b_i * x_1 * ... * x_n)^(1/n). An empty @c b means b_i = 1.
struct GeometricMean {
  std::vector<double> b;
  friend bool operator==(const GeometricMean&, const GeometricMean&) = default;
};

/// phi_i = L^p norm of the attackers' degrees; p = infinity gives the attacker max.
struct LpNorm {
  double p = 2.0;
  friend bool operator==(const LpNorm&, const LpNorm&) = default;
};

struct LinearCombination {
  std::vector<LinearTerm> terms;
};

struct GeometricCombination {
  std::vector<KernelDescriptor> parts;
};

struct KernelDescriptor {
  using Node = std::variant<MaxBased, CardBased, HCategorizer, GeometricMean, LpNorm, LinearCombination,
                            GeometricCombination>;
  Node node;
};

struct LinearTerm {
  double coefficient = 1.0;
  KernelDescriptor kernel;
};

inline bool operator==(const KernelDescriptor& a, const KernelDescriptor& b);

inline bool operator==(const LinearTerm& a, const LinearTerm& b) {
  return a.coefficient == b.coefficient && a.kernel == b.kernel;
}
inline bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms == b.terms; }
inline bool operator==(const GeometricCombination& a, const GeometricCombination& b) { return a.parts == b.parts; }
inline bool operator==(const KernelDescriptor& a, const KernelDescriptor& b) { return a.node == b.node; }

enum class Builtin { max_based, card_based, h_categorizer };

/// The three named semantics, or nullopt for any other descriptor.
inline std::optional<Builtin> builtin_of(const KernelDescriptor& d) {
  if (std::holds_alternative<MaxBased>(d.node)) return Builtin::max_based;
  if (std::holds_alternative<CardBased>(d.node)) return Builtin::card_based;
  if (std::holds_alternative<HCategorizer>(d.node)) return Builtin::h_categorizer;
  return std::nullopt;
}

/// True when a card-based node occurs anywhere in the tree.
inline bool involves_card_based(const KernelDescriptor& d) {
  if (std::holds_alternative<CardBased>(d.node)) return true;
  if (const auto* lin = std::get_if<LinearCombination>(&d.node)) {
    return std::any_of(lin->terms.begin(), lin->terms.end(),
                       [](const LinearTerm& t) { return involves_card_based(t.kernel); });
  }
  if (const auto* geo = std::get_if<GeometricCombination>(&d.node)) {
    return std::any_of(geo->parts.begin(), geo->parts.end(), involves_card_based);
  }
  return false;
}

namespace detail {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline void validate_descriptor(const KernelDescriptor& d) {
  std::visit(overloaded{
                 [](const MaxBased&) {},
                 [](const CardBased&) {},
                 [](const HCategorizer&) {},
                 [](const GeometricMean& g) {
                   for (double b : g.b) {
                     if (!(b > 0.0) || !std::isfinite(b)) {
                       throw Error(ErrorKind::invalid_parameter, "geometric-mean coefficients must be positive");
                     }
                   }
                 },
                 [](const LpNorm& l) {
                   if (!(l.p >= 1.0)) throw Error(ErrorKind::invalid_parameter, "L^p kernel needs p >= 1");
                 },
                 [](const LinearCombination& lin) {
                   for (const auto& t : lin.terms) {
                     if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient)) {
                       throw Error(ErrorKind::negative_coefficient, "linear combination coefficients must be >= 0");
                     }
                     validate_descriptor(t.kernel);
                   }
                 },
                 [](const GeometricCombination& geo) {
                   if (geo.parts.empty()) {
                     throw Error(ErrorKind::empty_combination, "geometric combination needs at least one kernel");
                   }
                   for (const auto& p : geo.parts) validate_descriptor(p);
                 },
             },
             d.node);
}

inline void eval_node(const KernelDescriptor& d, const Topology& topo, std::span<const double> x,
                      std::span<const double> support, std::span<double> out) {
  const std::size_t n = topo.size();
  std::visit(
      overloaded{
          [&](const MaxBased&) {
            for (std::size_t i = 0; i < n; ++i) {
              double m = 0.0;
              for (std::size_t j : topo.attackers(i)) m = std::max(m, x[j]);
              out[i] = m;
            }
          },
          [&](const CardBased&) {
            for (std::size_t i = 0; i < n; ++i) {
              std::size_t count = 0;
              double sum = 0.0;
              for (std::size_t j : topo.attackers(i)) {
                if (support[j] > 0.0) {
                  ++count;
                  sum += x[j];
                }
              }
              out[i] = count == 0 ? 0.0 : static_cast<double>(count) + sum / static_cast<double>(count);
            }
          },
          [&](const HCategorizer&) {
            for (std::size_t i = 0; i < n; ++i) {
              double s = 0.0;
              for (std::size_t j : topo.attackers(i)) s += x[j];
              out[i] = s;
            }
          },
          [&](const GeometricMean& g) {
            if (!g.b.empty()) require_same_size(g.b.size(), n, "geometric-mean coefficient vector");
            double prod = 1.0;
            for (double v : x) prod *= v;
            const double root = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
              const double b = g.b.empty() ? 1.0 : g.b[i];
              out[i] = std::pow(b * prod, root);
            }
          },
          [&](const LpNorm& l) {
            const bool inf = std::isinf(l.p);
            for (std::size_t i = 0; i < n; ++i) {
              double acc = 0.0;
              for (std::size_t j : topo.attackers(i)) {
                const double v = std::abs(x[j]);
                acc = inf ? std::max(acc, v) : acc + std::pow(v, l.p);
              }
              out[i] = (inf || l.p == 1.0) ? acc : std::pow(acc, 1.0 / l.p);
            }
          },
          [&](const LinearCombination& lin) {
            std::fill(out.begin(), out.end(), 0.0);
            std::vector<double> tmp(n);
            for (const auto& term : lin.terms) {
              eval_node(term.kernel, topo, x, support, tmp);
              for (std::size_t i = 0; i < n; ++i) out[i] += term.coefficient * tmp[i];
            }
          },
          [&](const GeometricCombination& geo) {
            const std::size_t k = geo.parts.size();
            if (k == 1) {
              eval_node(geo.parts.front(), topo, x, support, out);
              return;
            }
            std::fill(out.begin(), out.end(), 1.0);
            std::vector<double> tmp(n);
            for (const auto& part : geo.parts) {
              eval_node(part, topo, x, support, tmp);
              for (std::size_t i = 0; i < n; ++i) out[i] *= tmp[i];
            }
            for (std::size_t i = 0; i < n; ++i) {
              out[i] = k == 2 ? std::sqrt(out[i]) : std::pow(out[i], 1.0 / static_cast<double>(k));
            }
          },
      },
      d.node);
}

inline double bound_node(const KernelDescriptor& d, const Topology& topo, std::size_t i) {
  const double attackers = static_cast<double>(topo.attack_count(i));
  return std::visit(overloaded{
                        [&](const MaxBased&) { return 1.0; },
                        [&](const CardBased&) { return attackers + 1.0; },
                        [&](const HCategorizer&) { return attackers; },
                        [&](const GeometricMean& g) {
                          const double b = g.b.empty() ? 1.0 : g.b.at(i);
                          return std::pow(b, 1.0 / static_cast<double>(topo.size()));
                        },
                        [&](const LpNorm& l) {
                          if (std::isinf(l.p)) return std::min(attackers, 1.0);
                          return std::pow(attackers, 1.0 / l.p);
                        },
                        [&](const LinearCombination& lin) {
                          double s = 0.0;
                          for (const auto& t : lin.terms) s += t.coefficient * bound_node(t.kernel, topo, i);
                          return s;
                        },
                        [&](const GeometricCombination& geo) {
                          double prod = 1.0;
                          for (const auto& p : geo.parts) prod *= bound_node(p, topo, i);
                          return std::pow(prod, 1.0 / static_cast<double>(geo.parts.size()));
                        },
                    },
                    d.node);
}

}  // namespace detail

/**
 * Anything evaluable as a kernel. @p support selects the active attackers of
 * support-sensitive kernels (card-based); other kernels ignore it.
 */
template <class K>
concept KernelLike = requires(const K& k, const Topology& t, std::span<const double> x, std::span<double> out) {
  k.evaluate(t, x, x, out);
};

/// A validated kernel descriptor with evaluation and bound queries.
class Kernel {
 public:
  Kernel() : Kernel(KernelDescriptor{HCategorizer{}}) {}

  /// Throws Error{negative_coefficient | empty_combination | invalid_parameter}.
  explicit Kernel(KernelDescriptor descriptor) : descriptor_(std::move(descriptor)) {
    detail::validate_descriptor(descriptor_);
  }

  static Kernel max_based() { return Kernel(KernelDescriptor{MaxBased{}}); }
  static Kernel card_based() { return Kernel(KernelDescriptor{CardBased{}}); }
  static Kernel h_categorizer() { return Kernel(KernelDescriptor{HCategorizer{}}); }
  static Kernel geometric_mean(std::vector<double> b = {}) { return Kernel(KernelDescriptor{GeometricMean{std::move(b)}}); }
  static Kernel lp_norm(double p) { return Kernel(KernelDescriptor{LpNorm{p}}); }
  /// The empty linear combination; its fixed point is x = w.
  static Kernel zero() { return Kernel(KernelDescriptor{LinearCombination{}}); }

  const KernelDescriptor& descriptor() const noexcept { return descriptor_; }
  std::optional<Builtin> builtin() const { return builtin_of(descriptor_); }

  void evaluate(const Topology& topology, std::span<const double> x, std::span<const double> support,
                std::span<double> out) const {
    detail::require_same_size(x.size(), topology.size(), "degree vector");
    detail::require_same_size(support.size(), topology.size(), "support vector");
    detail::require_same_size(out.size(), topology.size(), "output vector");
    detail::eval_node(descriptor_, topology, x, support, out);
  }

  /// phi(x), with the card-based active set taken from x itself.
  std::vector<double> operator()(const Topology& topology, std::span<const double> x) const {
    std::vector<double> out(topology.size());
    evaluate(topology, x, x, out);
    return out;
  }

  /**
   * An upper bound on phi_i over [0,1]^n, used to space target degrees.
   * MB: 1, HC: |Att|, CB: |Att| + 1, L^p: |Att|^(1/p), geometric mean: b_i^(1/n);
   * combinators combine their parts' bounds the same way they combine values.
   */
  double upper_bound(const Topology& topology, std::size_t i) const { return detail::bound_node(descriptor_, topology, i); }

  friend bool operator==(const Kernel& a, const Kernel& b) { return a.descriptor_ == b.descriptor_; }

 private:
  KernelDescriptor descriptor_;
};

/// The kernel sum_k lambda_k * phi_k. Throws Error{negative_coefficient}.
inline Kernel combine_linear(const std::vector<std::pair<double, Kernel>>& terms) {
  LinearCombination lin;
  for (const auto& [lambda, kernel] : terms) lin.terms.push_back({lambda, kernel.descriptor()});
  return Kernel(KernelDescriptor{std::move(lin)});
}

/// The kernel (phi_1 * ... * phi_k)^(1/k). Throws Error{empty_combination}.
inline Kernel combine_geometric(const std::vector<Kernel>& parts) {
  GeometricCombination geo;
  for (const auto& k : parts) geo.parts.push_back(k.descriptor());
  return Kernel(KernelDescriptor{std::move(geo)});
}

/// Adapts a callable `f(topology, x, support, out)` to KernelLike.
template <class F>
class FunctionKernel {
 public:
  explicit FunctionKernel(F f) : f_(std::move(f)) {}
  void evaluate(const Topology& t, std::span<const double> x, std::span<const double> support,
                std::span<double> out) const {
    f_(t, x, support, out);
  }

 private:
  F f_;
};

struct AxiomCheckOptions {
  double homogeneity_tolerance = 1e-9;
  double monotonicity_slack = 1e-12;
  /// Sampled coordinates are drawn from [min_coordinate, 1].
  double min_coordinate = 0.0;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t homogeneity_violations = 0;
  std::size_t negative_outputs = 0;
  /// Violations of the weaker phi(t x) >= t phi(x); informational.
  std::size_t scaling_violations = 0;
  double max_homogeneity_error = 0.0;
  std::string first_violation;

  bool clean() const noexcept {
    return monotonicity_violations == 0 && homogeneity_violations == 0 && negative_outputs == 0;
  }
};

/**
 * @brief Samples the kernel axioms: non-negativity, monotonicity, homogeneity.
 *
 * Each sample draws x, then y >= x componentwise, and t in [0,1]; phi(0) is
 * checked once. Deterministic for a given seed.
 */
template <KernelLike K>
AxiomReport check_kernel_axioms(const K& kernel, const Topology& topology, std::size_t sample_count,
                                std::uint64_t seed, const AxiomCheckOptions& options = {}) {
  if (sample_count == 0) throw Error(ErrorKind::invalid_parameter, "sample count must be >= 1");
  const std::size_t n = topology.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = options.min_coordinate;

  AxiomReport report;
  report.samples = sample_count;
  std::vector<double> x(n), y(n), tx(n), fx(n), fy(n), ftx(n);

  auto note = [&](const std::string& what) {
    if (report.first_violation.empty()) report.first_violation = what;
  };
  auto count_negative = [&](std::span<const double> v) {
    for (double e : v) {
      if (e < 0.0 || std::isnan(e)) {
        ++report.negative_outputs;
        note("negative output");
        return;
      }
    }
  };

  {
    std::vector<double> zero(n, 0.0), f0(n);
    kernel.evaluate(topology, zero, zero, f0);
    for (double e : f0) {
      const double err = std::abs(e);
      if (err > options.homogeneity_tolerance) {
        ++report.homogeneity_violations;
        note("phi(0) != 0");
        break;
      }
    }
  }

  for (std::size_t s = 0; s < sample_count; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = lo + (1.0 - lo) * unit(rng);
      y[i] = x[i] + (1.0 - x[i]) * unit(rng);
    }
    const double t = unit(rng);
    for (std::size_t i = 0; i < n; ++i) tx[i] = t * x[i];

    kernel.evaluate(topology, x, x, fx);
    kernel.evaluate(topology, y, y, fy);
    kernel.evaluate(topology, tx, tx, ftx);
    count_negative(fx);

    for (std::size_t i = 0; i < n; ++i) {
      if (fx[i] > fy[i] + options.monotonicity_slack) {
        ++report.monotonicity_violations;
        note("phi(x) > phi(y) for x <= y at coordinate " + std::to_string(i));
        break;
      }
    }

    double err = 0.0;
    bool scaled = true;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::abs(ftx[i] - t * fx[i]));
      if (ftx[i] < t * fx[i] - options.homogeneity_tolerance) scaled = false;
    }
    report.max_homogeneity_error = std::max(report.max_homogeneity_error, err);
    if (err > options.homogeneity_tolerance) {
      ++report.homogeneity_violations;
      note("|phi(t x) - t phi(x)| = " + std::to_string(err));
    }
    if (!scaled) ++report.scaling_violations;
  }
  return report;
}

/// Kernel overload: card-based trees are sampled away from zero coordinates.
inline AxiomReport check_kernel_axioms(const Kernel& kernel, const Topology& topology, std::size_t sample_count,
                                       std::uint64_t seed) {
  AxiomCheckOptions options;
  if (involves_card_based(kernel.descriptor())) options.min_coordinate = 1e-6;
  return check_kernel_axioms<Kernel>(kernel, topology, sample_count, seed, options);
}

}  // namespace gradarg

#endif  // GRADARG_KERNELS_HPP
