#include <iostream>

#include <gonstab/gonstab.hpp>

using namespace gonstab;

int main(int argc, char** argv) {
  int n = argc > 1 ? std::stoi(argv[1]) : 10;
  double m = argc > 2 ? std::stod(argv[2]) : 1e6;
  for (double e : {0.0, 0.5, 0.9}) {
    auto g = gon_verdict({n, m, e});
    std::cout << "n=" << n << " m=" << m << " e=" << e << ": " << to_string(g.verdict_overall) << "\n";
    for (auto& b : g.blocks) {
      std::cout << "  " << to_string(b.v) << " symplectic residual " << b.symplectic_residual_normalized;
      int definite = 0;
      for (auto& k : b.krein) definite += k.definite();
      std::cout << ", definite Krein clusters " << definite << "/" << b.krein.size() << "\n";
    }
  }
}
