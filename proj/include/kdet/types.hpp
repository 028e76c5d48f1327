#pragma once

#include <complex>
#include <cstdint>

namespace kdet {

using cplx = std::complex<double>;

/// Numerical constants shared across the library. All tolerances are fixed;
/// dimension caps are defaults that the corresponding entry points accept as
/// overridable parameters.
struct tol {
  static constexpr double amplitude_prune = 1e-15;   // sparse amplitudes below this are dropped
  static constexpr double norm_check = 1e-12;        // unit-norm validation
  static constexpr double renorm_report = 1e-9;      // renormalization larger than this is recorded
  static constexpr double hermiticity = 1e-10;       // dense density-matrix validation
  static constexpr double psd_floor = -1e-10;        // smallest admissible eigenvalue
  static constexpr double verdict_rel = 1e-9;        // relative guard for criterion violations
  static constexpr double qfi_pair_skip = 1e-12;     // eigenvalue-pair cutoff in the QFI sum
  static constexpr double oracle_imag = 1e-10;       // allowed imaginary residue of quadratic forms
  static constexpr double orthogonality = 1e-12;     // per-site fiducial orthogonality check
};

struct caps {
  static constexpr std::uint64_t dense_dimension = 4096;     // largest dense Hilbert space
  static constexpr std::uint64_t two_copy_dimension = 16384; // largest D^2 for the brute-force oracle
  static constexpr int subset_sum_sites = 24;                // hard limit on the 2^N-2 subset sums
  static constexpr int staged_sweep_sites = 20;              // above this, sweeps stream per point
};

}  // namespace kdet
