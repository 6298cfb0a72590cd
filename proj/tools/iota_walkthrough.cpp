// Walks through the fixed-basis argument for G = <iota_1, iota_2> and prints
// each checked stage with the witness tables.
//
//   iota_walkthrough [n1 n2 n3]      (default 2 1 1)

#include <cstdlib>
#include <iostream>

#include "m0n/survey/prop_cohomo.hpp"

int main(int argc, char** argv) {
  using namespace m0n;
  int t[3] = {2, 1, 1};
  if (argc == 4) {
    for (int i = 0; i < 3; ++i) t[i] = std::atoi(argv[i + 1]);
  } else if (argc != 1) {
    std::cerr << "usage: " << argv[0] << " [n1 n2 n3]\n";
    return 2;
  }
  try {
    auto [i1, i2] = iota_generators(t[0], t[1], t[2]);
    std::cout << "n = " << 2 * (t[0] + t[1] + t[2]) << "\n"
              << "iota_1 = " << i1.to_cycles() << "\n"
              << "iota_2 = " << i2.to_cycles() << "\n"
              << "sigma = iota_1 iota_2 = " << (i1 * i2).to_cycles() << ", tau = iota_2\n\n";
    const auto r = verify_prop_cohomo(t[0], t[1], t[2]);
    for (auto s : r.checked) std::cout << "ok  " << to_string(s) << "\n";
    const auto& w = r.witness;
    std::cout << "\nN^sigma basis (" << w.n_sigma_labels.size() << " vectors), tau pairs:\n";
    for (const auto& [a, b] : w.tau_on_n) std::cout << "  e" << mask_string(a) << " <-> e" << mask_string(b) << "\n";
    std::cout << "\nQ^sigma basis:";
    for (const auto& name : w.q_sigma_names) std::cout << " " << name;
    std::cout << "\ntau on Q^sigma:\n";
    for (const auto& [a, b] : w.tau_on_q) std::cout << "  " << a << " -> " << b << "\n";
    std::cout << "\nH^1(<tau>, Q^sigma) = " << r.h1_Q.to_string() << "\nH^1(G, M) = " << r.h1_M.to_string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
