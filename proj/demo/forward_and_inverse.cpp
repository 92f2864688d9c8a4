// Evaluates the four-argument example under the three built-in semantics, then
// asks for weights that make the ranking a0 > a1 = a3 > a2.

#include <cstdio>

#include "gradarg/gradarg.hpp"

int main() {
  using namespace gradarg;

  const auto framework = WeightedFramework::build(
      {"a0", "a1", "a2", "a3"}, {{"a0", "a2"}, {"a1", "a1"}, {"a1", "a2"}, {"a2", "a2"}, {"a3", "a2"}},
      {0.43, 0.39, 0.92, 0.3});
  const auto wanted = parse_ordering("a0 > a1 = a3 > a2", framework.topology());

  for (const char* name : {"hc", "mb", "cb"}) {
    const auto kernel = parse_kernel(name);
    const auto e = evaluate(framework, kernel);
    std::printf("%s  degrees:", name);
    for (double d : e.result.degrees) std::printf(" %.4f", d);
    std::printf("  ranking: %s\n", e.ranking.to_string().c_str());

    const auto inv = solve_inverse(framework.topology(), wanted, kernel, BoundsConfig{}, InverseMethod::analytic);
    std::printf("    weights for %s:", wanted.to_string().c_str());
    for (double w : inv.solution.weights) std::printf(" %.4f", w);
    std::printf("  (%s)\n", inv.verified ? "verified" : inv.verification_message.c_str());
  }
}
