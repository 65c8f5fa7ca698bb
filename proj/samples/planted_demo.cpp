// Generates a planted corpus and checks that the pipeline finds it again.

#include <iostream>

#include "hashnet/hashnet.hpp"

int main() {
  hashnet::synth::SynthSpec spec;
  const auto report = hashnet::synth::planted_recovery_eval(spec);
  for (const auto& e : report.epochs)
    std::cout << e.epoch << ": core " << e.core_members << ", projected " << e.projected << ", unassigned "
              << e.unassigned << ", seed recovery " << e.core_recovery << " -> " << e.augmented_recovery << '\n';
  for (const auto& f : report.failures) std::cout << "FAIL " << f << '\n';
  return report.passed() ? 0 : 1;
}
