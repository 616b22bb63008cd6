#pragma once

// Property and oracle suites shared by `pwk verify` and the acceptance
// runner. Each suite draws its sample points from a seeded generator, so a
// run is reproducible for a fixed seed.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pwk/kinematics.hpp"

namespace pwk::verify {

struct Outcome {
  std::string name;
  bool pass = false;
  double metric = 0.0;  // worst observed value of the checked quantity
  double limit = 0.0;   // pass threshold for `metric`
  std::string detail;   // one line, human readable
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20251019;
  // Scales the number of random points; 1 is the full acceptance sampling.
  double sampling = 1.0;
  // Overall kernel sign used by the physics suites (mutation testing).
  double calibration = kCoulombCalibration;
};

Outcome bohr_limit(const Options& opt);     // hydrogen ground state and S-level ratios
Outcome spinor_oracle(const Options& opt);  // closed contractions vs gamma matrices
Outcome angular_oracle(const Options& opt); // kernel vs direct angular quadrature
Outcome gauge(const Options& opt);          // xi independence and current conservation
Outcome moments(const Options& opt);        // closed-form moment integrals
Outcome nr_limit(const Options& opt);       // (k/m)^2 approach to the Coulomb wave
Outcome convergence(const Options& opt);    // grid convergence and raw symmetry
Outcome exchange(const Options& opt);       // particle relabeling

struct Suite {
  std::string name;
  std::function<Outcome(const Options&)> run;
};

// Suites offered by `pwk verify`, in execution order.
const std::vector<Suite>& cli_suites();

}  // namespace pwk::verify
