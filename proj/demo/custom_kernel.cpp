// A hand-written kernel plugged into the generic machinery: the attacker sum
// scaled by 1/2, checked against the axioms and iterated to its fixed point.

#include <cstdio>
#include <span>

#include "gradarg/gradarg.hpp"

int main() {
  using namespace gradarg;

  const auto topology = Topology::from_edges(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
  FunctionKernel half_sum([](const Topology& t, std::span<const double> x, std::span<const double>,
                             std::span<double> out) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      double s = 0.0;
      for (std::size_t j : t.attackers(i)) s += x[j];
      out[i] = 0.5 * s;
    }
  });

  const auto report = check_kernel_axioms(half_sum, topology, 1000, 7);
  std::printf("axioms: %s (%zu samples)\n", report.clean() ? "ok" : report.first_violation.c_str(), report.samples);

  const auto framework = WeightedFramework::from_topology(topology, {1.0, 0.8, 0.6});
  const auto result = fixed_point(framework, half_sum);
  std::printf("degrees: %.6f %.6f %.6f after %zu iterations\n", result.degrees[0], result.degrees[1],
              result.degrees[2], result.iterations);
}
