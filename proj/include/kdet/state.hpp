#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kdet/dims.hpp"
#include "kdet/types.hpp"

namespace kdet {

/// Unit-norm local state on one site.
class LocalVector {
 public:
  explicit LocalVector(std::vector<cplx> amplitudes);
  static LocalVector basis(int d, int index);

  int dim() const { return static_cast<int>(amps_.size()); }
  cplx amplitude(int i) const { return amps_.at(static_cast<std::size_t>(i)); }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  /// <this|other>
  cplx overlap(const LocalVector& other) const;

 private:
  std::vector<cplx> amps_;
};

/// Fully separable vector |v_1> ⊗ ... ⊗ |v_N>. Computational-basis labels are
/// kept as labels (fast path); general sites carry an explicit LocalVector.
class ProductVector {
 public:
  static ProductVector from_label(const DimensionVector& dims, ProductLabel label);
  static ProductVector from_locals(const DimensionVector& dims, std::vector<LocalVector> sites);

  const DimensionVector& dims() const { return dims_; }
  int site_count() const { return dims_.site_count(); }
  bool is_basis() const { return label_.has_value(); }
  const ProductLabel& label() const;
  std::uint64_t flat() const;  // requires is_basis()

  /// Amplitude of local basis state b at a site, i.e. <b|v_site>.
  cplx site_amplitude(int site, int b) const;
  /// <this_site|other_site>
  cplx local_overlap(int site, const ProductVector& other) const;
  /// Full product overlap <this|other>.
  cplx overlap(const ProductVector& other) const;

  /// Pattern taking other's site where the mask bit is set, this one's site
  /// elsewhere (the P_alpha swap patterns of the two-copy reductions).
  ProductVector mixed_with(const ProductVector& other, std::uint32_t alpha_bits) const;

  Eigen::VectorXcd dense() const;

 private:
  ProductVector(DimensionVector dims) : dims_(std::move(dims)) {}
  DimensionVector dims_{std::vector<int>{2, 2}};
  std::optional<ProductLabel> label_;
  std::vector<LocalVector> sites_;  // empty when label_ is set
};

/// Sparse pure state: a few computational-basis terms with complex
/// amplitudes, keyed by flat index and kept normalized.
class PureStateSparse {
 public:
  struct Term {
    std::uint64_t key;
    cplx amp;
  };

  PureStateSparse(const DimensionVector& dims,
                  const std::vector<std::pair<ProductLabel, cplx>>& terms);

  const DimensionVector& dims() const { return dims_; }
  std::span<const Term> terms() const { return terms_; }
  cplx amplitude_at(std::uint64_t key) const;
  ProductLabel label_of(const Term& t) const { return unflatten(dims_, t.key); }
  /// |1 - norm| of the raw input; values above tol::renorm_report mean the
  /// caller's terms were visibly unnormalized.
  double renormalization_shift() const { return renorm_shift_; }

  /// <v|state> for a product vector v.
  cplx overlap_with_product(const ProductVector& v) const;
  cplx overlap(const PureStateSparse& other) const;  // <this|other>

  Eigen::VectorXcd dense() const;

  static PureStateSparse ghz(int n_qubits);
  /// (|0..0> - i |1..1>)/sqrt(2)
  static PureStateSparse ghz_tilde(int n_qubits);
  /// The 4-qutrit W state (1/(2*sqrt(2))) * sum_{s in {1,2}} sum_i |0..s..0>.
  static PureStateSparse w_qutrit4();
  /// Same state with every local level cyclically shifted by sigma^{ox4}.
  static PureStateSparse w_qutrit4_shifted();

 private:
  DimensionVector dims_;
  std::vector<Term> terms_;  // sorted by key
  double renorm_shift_ = 0.0;
};

inline PureStateSparse make_pure_sparse(const std::vector<std::pair<ProductLabel, cplx>>& terms,
                                        const DimensionVector& dims) {
  return PureStateSparse(dims, terms);
}

struct MixtureComponent {
  double weight;
  PureStateSparse state;
};

/// Mixed state, either a dense Hermitian matrix or a structured mixture of
/// sparse pure components plus an explicit white-noise weight. The mixture
/// form is the production representation for parameterized families; dense is
/// used by oracles, ensembles and the QFI baselines.
class DensityOperator {
 public:
  static DensityOperator dense(Eigen::MatrixXcd matrix, DimensionVector dims);
  static DensityOperator mixture(DimensionVector dims, std::vector<MixtureComponent> components,
                                 double noise_weight);

  const DimensionVector& dims() const { return dims_; }
  bool is_dense() const { return std::holds_alternative<DenseRep>(rep_); }
  bool is_mixture() const { return !is_dense(); }
  const Eigen::MatrixXcd& matrix() const;
  std::span<const MixtureComponent> components() const;
  double noise_weight() const;

  /// <bra| rho |ket>. Mixtures never materialize a matrix; cost is
  /// O(sum_m |terms_m| * N) plus the product overlap of bra and ket.
  cplx element(const ProductVector& bra, const ProductVector& ket) const;
  /// Diagonal element for a basis pattern given by flat index (hot path of
  /// the subset sums).
  double diagonal(std::uint64_t flat) const;

  DensityOperator to_dense(std::uint64_t dimension_cap = caps::dense_dimension) const;

  /// Smallest eigenvalue of the dense form (validation helper).
  double min_eigenvalue() const;

 private:
  struct DenseRep {
    Eigen::MatrixXcd mat;
  };
  struct MixtureRep {
    std::vector<MixtureComponent> components;
    double noise_weight;
  };

  DensityOperator(DimensionVector dims, std::variant<DenseRep, MixtureRep> rep)
      : dims_(std::move(dims)), rep_(std::move(rep)) {}

  DimensionVector dims_{std::vector<int>{2, 2}};
  std::variant<DenseRep, MixtureRep> rep_;
};

inline cplx matrix_element(const DensityOperator& rho, const ProductVector& bra,
                           const ProductVector& ket) {
  return rho.element(bra, ket);
}

/// rho(p,q) = p |G><G| + q |G~><G~| + (1-p-q)/2^N * 1 on N qubits.
DensityOperator family_ghz_mix(int n_sites, double p, double q);
/// rho(p,q) = p |W><W| + q sigma^{ox4}|W><W|sigma^{ox4} + (1-p-q)/81 * 1.
DensityOperator family_w_qutrit_mix(double p, double q);

enum class FamilyId { ghz_mix, w_qutrit_mix, custom };

/// Two-parameter simplex family rho(p,q): two pure components with weights p
/// and q plus white noise 1-p-q. Covers the named families and custom
/// two-component state files; this is what sweeps iterate over.
class ParamFamily {
 public:
  static ParamFamily ghz_mix(int n_sites);
  static ParamFamily w_qutrit_mix();
  static ParamFamily two_component(std::string name, DimensionVector dims, PureStateSparse first,
                                   PureStateSparse second);

  DensityOperator at(double p, double q) const;
  const DimensionVector& dims() const { return dims_; }
  const std::string& name() const { return name_; }
  FamilyId id() const { return id_; }
  const PureStateSparse& component(int i) const;

 private:
  ParamFamily(std::string name, FamilyId id, DimensionVector dims,
              std::vector<PureStateSparse> comps)
      : name_(std::move(name)), id_(id), dims_(std::move(dims)), comps_(std::move(comps)) {}

  std::string name_;
  FamilyId id_;
  DimensionVector dims_;
  std::vector<PureStateSparse> comps_;
};

/// Simplex-parameter validation shared by the family constructors.
void require_simplex(double p, double q);

}  // namespace kdet
