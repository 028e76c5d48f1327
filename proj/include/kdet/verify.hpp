#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kdet::verify {

struct SuiteResult {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> messages;  // first few failure descriptions

  bool passed() const { return failures == 0; }
  void check(bool ok, const std::string& description);
};

/// Reduced two-copy evaluations against the explicit rho^{x2}-with-permutation
/// oracle, on random dense states over all basis fiducial pairs and all
/// proper subsets, plus random general product fiducials. only_n_qubits = 0
/// runs the standard configurations (3 qubits and 2 qutrits); a nonzero value
/// runs that qubit count only.
SuiteResult oracle_suite(std::uint64_t seed, int states_per_config, int only_n_qubits = 0);

/// Random k-producible states must never violate Theorems 1/2; random
/// k-separable states must never violate Theorems 3/4. Runs at
/// (N,k) in {(4,2),(4,3),(5,2)} with `samples` states per configuration and
/// direction.
SuiteResult soundness_suite(std::uint64_t seed, int samples);

/// Theorem 3 with Phi = (0..0,(d-1)..(d-1)) and Theorem 4 with base 0..0,
/// Omega = {1..d-1} against independent density-matrix-element evaluations
/// (and criterion IV), on random dense states.
SuiteResult special_case_suite(std::uint64_t seed, int states_per_config);

/// Operator identities of the observable decompositions and the expectation
/// identities against matrix elements.
SuiteResult observable_suite(std::uint64_t seed);

}  // namespace kdet::verify
