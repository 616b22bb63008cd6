// Runs every acceptance criterion at full sampling and prints one line each.
// Exit status is nonzero if any criterion fails.

#include <cstdio>

#include "pwk/verify.hpp"

int main() {
  using namespace pwk::verify;
  const Options opt;
  const std::pair<const char*, Outcome (*)(const Options&)> criteria[] = {
      {"A1 Coulomb/Bohr limit", bohr_limit},        {"A2 spinor oracle", spinor_oracle},
      {"A3 partial-wave oracle", angular_oracle},   {"A4 gauge invariance", gauge},
      {"A5 analytic moments", moments},             {"A6 NR reduction", nr_limit},
      {"A7 convergence and hermiticity", convergence}, {"A8 equal-mass exchange", exchange},
  };
  int failed = 0;
  for (const auto& [label, run] : criteria) {
    const Outcome o = run(opt);
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", label, o.detail.c_str(), o.seconds);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed ? 1 : 0;
}
