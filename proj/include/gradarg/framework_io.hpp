#ifndef GRADARG_FRAMEWORK_IO_HPP
#define GRADARG_FRAMEWORK_IO_HPP

// Framework documents:
//
//   {
//     "arguments": ["a0", "a1"],
//     "attacks":   [["a0", "a1"]],          // [attacker, target]
//     "weights":   {"a0": 0.4, "a1": 1.0}    // optional
//   }
//
// Any other top-level key is rejected. When "weights" is present it must give a
// number in [0, 1] for every declared argument and nothing else.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gradarg/framework.hpp"

namespace gradarg {

struct FrameworkDocument {
  Topology topology;
  std::optional<WeightVector> weights;

  bool weighted() const noexcept { return weights.has_value(); }

  /// Throws Error{malformed_file} for an unweighted document.
  WeightedFramework framework() const {
    if (!weights) throw Error(ErrorKind::malformed_file, "framework document has no \"weights\" field");
    return WeightedFramework::from_topology(topology, *weights);
  }
};

namespace detail {

[[noreturn]] inline void malformed(const std::string& msg) { throw Error(ErrorKind::malformed_file, msg); }

}  // namespace detail

inline FrameworkDocument framework_from_json(const nlohmann::json& doc) {
  using nlohmann::json;
  if (!doc.is_object()) detail::malformed("top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "arguments" && key != "attacks" && key != "weights") detail::malformed("unknown field \"" + key + "\"");
  }
  if (!doc.contains("arguments") || !doc["arguments"].is_array()) detail::malformed("\"arguments\" must be an array");

  std::vector<std::string> arguments;
  for (const auto& a : doc["arguments"]) {
    if (!a.is_string()) detail::malformed("argument identifiers must be strings");
    arguments.push_back(a.get<std::string>());
  }

  std::vector<Topology::Attack> attacks;
  if (doc.contains("attacks")) {
    if (!doc["attacks"].is_array()) detail::malformed("\"attacks\" must be an array");
    for (const auto& e : doc["attacks"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        detail::malformed("each attack must be a [attacker, target] pair of strings");
      }
      attacks.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }

  FrameworkDocument out;
  out.topology = Topology::build(std::move(arguments), attacks);

  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (!w.is_object()) detail::malformed("\"weights\" must be an object mapping id to number");
    WeightVector weights(out.topology.size(), 0.0);
    std::vector<bool> given(out.topology.size(), false);
    for (const auto& [id, value] : w.items()) {
      if (!value.is_number()) detail::malformed("weight of '" + id + "' is not a number");
      const std::size_t i = out.topology.index_of(id);
      weights[i] = value.get<double>();
      given[i] = true;
    }
    for (std::size_t i = 0; i < given.size(); ++i) {
      if (!given[i]) throw Error(ErrorKind::missing_argument, "no weight for '" + out.topology.id(i) + "'");
    }
    detail::require_unit_interval(weights, "weight");
    out.weights = std::move(weights);
  }
  return out;
}

inline FrameworkDocument parse_framework(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::malformed(e.what());
  }
  return framework_from_json(doc);
}

inline FrameworkDocument load_framework(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::malformed("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_framework(buffer.str());
}

inline nlohmann::json to_json(const Topology& topology, const WeightVector* weights = nullptr) {
  nlohmann::json doc;
  doc["arguments"] = topology.arguments();
  auto attacks = nlohmann::json::array();
  for (const auto& [from, to] : topology.edges()) attacks.push_back({topology.id(from), topology.id(to)});
  doc["attacks"] = std::move(attacks);
  if (weights != nullptr) {
    detail::require_same_size(weights->size(), topology.size(), "weight vector");
    auto w = nlohmann::json::object();
    for (std::size_t i = 0; i < topology.size(); ++i) w[topology.id(i)] = (*weights)[i];
    doc["weights"] = std::move(w);
  }
  return doc;
}

inline nlohmann::json to_json(const WeightedFramework& framework) {
  return to_json(framework.topology(), &framework.weights());
}

}  // namespace gradarg

#endif  // GRADARG_FRAMEWORK_IO_HPP
