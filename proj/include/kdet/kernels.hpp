#pragma once

#include <cstddef>
#include <span>

namespace kdet::kernels {

/// Instruction sets the reduction kernels can run on. The scalar variants are
/// the reference implementations; vector variants are selected once at
/// startup from CPU capabilities and must agree with the scalar results to
/// rounding-order differences (covered by the equivalence tests).
enum class Isa { scalar, avx2, neon };

Isa active_isa();
const char* isa_name(Isa isa);
/// Override the dispatch choice (tests / benchmarking). Throws if the
/// requested ISA is not available on this CPU or not compiled in.
void force_isa(Isa isa);
bool isa_available(Isa isa);

/// sum_i sqrt(max(a_i,0) * max(b_i,0)). The clamp absorbs -0.0-scale noise in
/// staged diagonals; genuine negative diagonals are rejected upstream.
double sum_sqrt_prod(std::span<const double> a, std::span<const double> b);

/// out_i = bias + sum_c coeffs[c] * cols[c][i].
void affine_combine(std::span<double> out, double bias,
                    std::span<const double* const> cols,
                    std::span<const double> coeffs);

/// Quantum Fisher information pair reduction over an eigensystem:
///   sum_{l,l'} 2 (lam_l - lam_l')^2 / (lam_l + lam_l') * habs2[l*n + l']
/// with pairs whose eigenvalue sum is <= skip_eps dropped. habs2 is the
/// row-major n*n matrix of |<l|H|l'>|^2.
double qfi_pair_sum(std::span<const double> lambda, const double* habs2, double skip_eps);

// Reference implementations, exposed for the equivalence tests.
double sum_sqrt_prod_scalar(std::span<const double> a, std::span<const double> b);
void affine_combine_scalar(std::span<double> out, double bias,
                           std::span<const double* const> cols,
                           std::span<const double> coeffs);
double qfi_pair_sum_scalar(std::span<const double> lambda, const double* habs2, double skip_eps);

}  // namespace kdet::kernels
