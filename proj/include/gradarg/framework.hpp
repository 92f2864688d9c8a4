#ifndef GRADARG_FRAMEWORK_HPP
#define GRADARG_FRAMEWORK_HPP

/**
 * @file framework.hpp
 * @brief Weighted argumentation frameworks, attack topology and preference orderings.
 *
 * Arguments are addressed by string identifiers. The position of an argument in
 * the declared list is its vector index, and every degree or weight vector in
 * the library is aligned with that indexing.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gradarg/error.hpp"

namespace gradarg {

/// Acceptability degrees, index-aligned with a topology's arguments.
using DegreeVector = std::vector<double>;
/// Initial weights, index-aligned with a topology's arguments.
using WeightVector = std::vector<double>;

/**
 * @brief Dense n x n 0/1 matrix; entry (i, j) is 1 iff argument j attacks argument i.
 */
class AttackMatrix {
 public:
  AttackMatrix() = default;
  explicit AttackMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::uint8_t operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  void set(std::size_t row, std::size_t col) { entries_[row * n_ + col] = 1; }

  /// Matrix-vector product A x.
  std::vector<double> multiply(std::span<const double> x) const {
    detail::require_same_size(x.size(), n_, "vector");
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (entries_[i * n_ + j] != 0) acc += x[j];
      }
      out[i] = acc;
    }
    return out;
  }

  bool operator==(const AttackMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> entries_;
};

/**
 * @brief The unweighted part of a framework: arguments and the attack relation.
 *
 * Duplicate attacks collapse to a single edge. Attackers of every argument are
 * kept as sorted index lists so kernels can iterate them directly.
 */
class Topology {
 public:
  using Attack = std::pair<std::string, std::string>;

  Topology() = default;

  /// Throws Error{duplicate_id} or Error{unknown_id}.
  static Topology build(std::vector<std::string> arguments, const std::vector<Attack>& attacks) {
    Topology t;
    t.ids_ = std::move(arguments);
    t.index_.reserve(t.ids_.size());
    for (std::size_t i = 0; i < t.ids_.size(); ++i) {
      if (t.ids_[i].empty()) throw Error(ErrorKind::syntax_error, "argument identifiers must be non-empty");
      if (!t.index_.emplace(t.ids_[i], i).second) {
        throw Error(ErrorKind::duplicate_id, "argument '" + t.ids_[i] + "' declared twice");
      }
    }
    t.attackers_.assign(t.ids_.size(), {});
    for (const auto& [from, to] : attacks) {
      const std::size_t a = t.index_of(from);
      const std::size_t b = t.index_of(to);
      t.attackers_[b].push_back(a);
    }
    for (auto& list : t.attackers_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return t;
  }

  /// Index-based construction for generated topologies; edges are (attacker, target).
  static Topology from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "a" + std::to_string(i);
    std::vector<Attack> attacks;
    attacks.reserve(edges.size());
    for (const auto& [from, to] : edges) {
      if (from >= n || to >= n) throw Error(ErrorKind::unknown_id, "edge endpoint out of range");
      attacks.emplace_back(ids[from], ids[to]);
    }
    return build(std::move(ids), attacks);
  }

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& arguments() const noexcept { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw Error(ErrorKind::unknown_id, "no argument named '" + std::string(id) + "'");
  }

  /// Sorted indices of the attackers of argument i.
  std::span<const std::size_t> attackers(std::size_t i) const { return attackers_.at(i); }

  /// Identifiers of the attackers of the named argument, in argument order.
  std::vector<std::string> attackers(std::string_view id) const {
    std::vector<std::string> out;
    for (std::size_t j : attackers_[index_of(id)]) out.push_back(ids_[j]);
    return out;
  }

  std::size_t attack_count(std::size_t i) const { return attackers_.at(i).size(); }

  bool attacks(std::size_t from, std::size_t to) const {
    const auto& list = attackers_.at(to);
    return std::binary_search(list.begin(), list.end(), from);
  }

  bool self_attacking(std::size_t i) const { return attacks(i, i); }

  bool has_self_attack() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (self_attacking(i)) return true;
    }
    return false;
  }

  /// All edges as (attacker, target) index pairs, ordered by target then attacker.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j : attackers_[i]) out.emplace_back(j, i);
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& list : attackers_) total += list.size();
    return total;
  }

  AttackMatrix attack_matrix() const {
    AttackMatrix m(size());
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j : attackers_[i]) m.set(i, j);
    }
    return m;
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> attackers_;
};

namespace detail {

inline void require_unit_interval(std::span<const double> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::weight_out_of_range,
                  std::string(what) + "[" + std::to_string(i) + "] = " + std::to_string(v) + " is outside [0, 1]");
    }
  }
}

}  // namespace detail

/// A topology together with one initial weight in [0, 1] per argument.
class WeightedFramework {
 public:
  WeightedFramework() = default;

  static WeightedFramework build(std::vector<std::string> arguments, const std::vector<Topology::Attack>& attacks,
                                 WeightVector weights) {
    return from_topology(Topology::build(std::move(arguments), attacks), std::move(weights));
  }

  static WeightedFramework from_topology(Topology topology, WeightVector weights) {
    detail::require_same_size(weights.size(), topology.size(), "weight vector");
    detail::require_unit_interval(weights, "weight");
    WeightedFramework f;
    f.topology_ = std::move(topology);
    f.weights_ = std::move(weights);
    return f;
  }

  const Topology& topology() const noexcept { return topology_; }
  const WeightVector& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return topology_.size(); }

  WeightedFramework with_weights(WeightVector weights) const { return from_topology(topology_, std::move(weights)); }

 private:
  Topology topology_;
  WeightVector weights_;
};

/**
 * @brief A ranked list of equivalence classes of argument identifiers.
 *
 * Class 0 is the most preferred. Equality ignores the order of members inside a
 * class.
 */
class OrderingPartition {
 public:
  using Class = std::vector<std::string>;

  OrderingPartition() = default;

  /// Validates that classes are non-empty and pairwise disjoint.
  static OrderingPartition from_classes(std::vector<Class> classes) {
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (classes[k].empty()) throw Error(ErrorKind::syntax_error, "empty equivalence class");
      for (const auto& id : classes[k]) {
        if (!seen.emplace(id, k).second) {
          throw Error(ErrorKind::duplicate_id, "argument '" + id + "' appears twice in the ordering");
        }
      }
    }
    if (classes.empty()) throw Error(ErrorKind::syntax_error, "ordering has no classes");
    OrderingPartition p;
    p.classes_ = std::move(classes);
    return p;
  }

  const std::vector<Class>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }

  /// Throws unless the union of classes is exactly the topology's argument set.
  void validate_against(const Topology& topology) const {
    std::size_t covered = 0;
    for (const auto& cls : classes_) {
      for (const auto& id : cls) {
        topology.index_of(id);
        ++covered;
      }
    }
    if (covered != topology.size()) {
      for (const auto& id : topology.arguments()) {
        if (!class_of(id)) throw Error(ErrorKind::missing_argument, "ordering does not mention '" + id + "'");
      }
    }
  }

  std::optional<std::size_t> class_of(std::string_view id) const {
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      if (std::find(classes_[k].begin(), classes_[k].end(), id) != classes_[k].end()) return k;
    }
    return std::nullopt;
  }

  /// Class index per argument, aligned with the topology's indexing.
  std::vector<std::size_t> class_indices(const Topology& topology) const {
    validate_against(topology);
    std::vector<std::size_t> out(topology.size(), 0);
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      for (const auto& id : classes_[k]) out[topology.index_of(id)] = k;
    }
    return out;
  }

  /// Renders as `a0 > a1 = a3 > a2`.
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      if (k != 0) out += " > ";
      for (std::size_t m = 0; m < classes_[k].size(); ++m) {
        if (m != 0) out += " = ";
        out += classes_[k][m];
      }
    }
    return out;
  }

  friend bool operator==(const OrderingPartition& a, const OrderingPartition& b) {
    if (a.classes_.size() != b.classes_.size()) return false;
    for (std::size_t k = 0; k < a.classes_.size(); ++k) {
      Class x = a.classes_[k];
      Class y = b.classes_[k];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return false;
    }
    return true;
  }

 private:
  std::vector<Class> classes_;
};

/**
 * @brief Groups arguments into classes of (transitively) tied degrees, best first.
 *
 * Degrees are sorted descending; two neighbours in that order share a class when
 * they differ by at most @p tie_tolerance.
 */
inline OrderingPartition ordering_from_degrees(const Topology& topology, std::span<const double> degrees,
                                               double tie_tolerance) {
  detail::require_same_size(degrees.size(), topology.size(), "degree vector");
  if (!(tie_tolerance >= 0.0)) throw Error(ErrorKind::invalid_parameter, "tie tolerance must be >= 0");
  if (degrees.empty()) throw Error(ErrorKind::invalid_parameter, "cannot rank an empty framework");

  std::vector<std::size_t> order(degrees.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });

  std::vector<OrderingPartition::Class> classes;
  classes.push_back({topology.id(order.front())});
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (degrees[order[k - 1]] - degrees[order[k]] > tie_tolerance) classes.emplace_back();
    classes.back().push_back(topology.id(order[k]));
  }
  for (auto& cls : classes) {
    std::sort(cls.begin(), cls.end(), [&](const std::string& a, const std::string& b) {
      return topology.index_of(a) < topology.index_of(b);
    });
  }
  return OrderingPartition::from_classes(std::move(classes));
}

namespace detail {

inline bool is_ordering_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace detail

/**
 * @brief Parses `class ( '>' class )*` with `class = id ( '=' id )*`.
 *
 * Identifiers are runs of characters other than whitespace, '>' and '='.
 */
inline OrderingPartition parse_ordering(std::string_view text) {
  std::vector<OrderingPartition::Class> classes(1);
  std::size_t pos = 0;
  bool expect_id = true;

  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::syntax_error, msg + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
  };

  while (true) {
    while (pos < text.size() && detail::is_ordering_space(text[pos])) ++pos;
    if (pos == text.size()) break;
    const char c = text[pos];
    if (expect_id) {
      if (c == '>' || c == '=') fail("expected an argument identifier");
      const std::size_t start = pos;
      while (pos < text.size() && !detail::is_ordering_space(text[pos]) && text[pos] != '>' && text[pos] != '=') ++pos;
      classes.back().emplace_back(text.substr(start, pos - start));
      expect_id = false;
    } else {
      if (c == '>') {
        classes.emplace_back();
      } else if (c != '=') {
        fail("expected '>' or '='");
      }
      ++pos;
      expect_id = true;
    }
  }
  if (expect_id) fail(classes.size() == 1 && classes[0].empty() ? "empty ordering" : "dangling operator");
  return OrderingPartition::from_classes(std::move(classes));
}

/// Parses and checks that the ordering covers exactly the topology's arguments.
inline OrderingPartition parse_ordering(std::string_view text, const Topology& topology) {
  auto p = parse_ordering(text);
  p.validate_against(topology);
  return p;
}

}  // namespace gradarg

#endif  // GRADARG_FRAMEWORK_HPP
