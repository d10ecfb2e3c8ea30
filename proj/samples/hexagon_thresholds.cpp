#include <iostream>

#include <gonstab/gonstab.hpp>

using namespace gonstab;

int main() {
  auto t = thresholds(6);
  std::cout << "n = 6, large-m threshold " << t.large_m_threshold << "\n";
  for (auto& b : t.blocks)
    std::cout << "block " << b.l << ": " << (b.nonempty() ? "" : "(empty) ") << (b.closed_left ? "[" : "(") << b.lower
              << ", " << b.upper << ")\n";

  // probe block 1 inside its instability interval
  auto& b1 = t.blocks[0];
  if (b1.nonempty()) {
    double m = 0.5 * (b1.lower + b1.upper);
    auto r = integrate_monodromy(path_of(reduced_block_of({6, m, 0.2}, 1), 0.2));
    classify(r);
    std::cout << "m = " << m << ", e = 0.2: " << to_string(r.v) << ", max log|mu| = " << r.max_log_multiplier << "\n";
  }
}
