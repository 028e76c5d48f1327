#include "kdet/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace kdet {

// ---------------------------------------------------------------------------
// LocalVector

LocalVector::LocalVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2) throw std::invalid_argument("LocalVector: dimension must be >= 2");
  double norm2 = 0.0;
  for (const cplx& a : amps_) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > tol::norm_check) {
    throw std::invalid_argument("LocalVector: not unit norm (|1-norm| = " +
                                std::to_string(std::abs(std::sqrt(norm2) - 1.0)) + ")");
  }
}

LocalVector LocalVector::basis(int d, int index) {
  if (index < 0 || index >= d) throw std::invalid_argument("LocalVector::basis: index out of range");
  std::vector<cplx> a(static_cast<std::size_t>(d), cplx(0.0, 0.0));
  a[static_cast<std::size_t>(index)] = 1.0;
  return LocalVector(std::move(a));
}

cplx LocalVector::overlap(const LocalVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("LocalVector::overlap: dimension mismatch");
  cplx acc = 0.0;
  for (int i = 0; i < dim(); ++i) acc += std::conj(amps_[static_cast<std::size_t>(i)]) * other.amps_[static_cast<std::size_t>(i)];
  return acc;
}

// ---------------------------------------------------------------------------
// ProductVector

ProductVector ProductVector::from_label(const DimensionVector& dims, ProductLabel label) {
  flat_index(dims, label);  // validates
  ProductVector v(dims);
  v.label_ = std::move(label);
  return v;
}

ProductVector ProductVector::from_locals(const DimensionVector& dims, std::vector<LocalVector> sites) {
  if (static_cast<int>(sites.size()) != dims.site_count()) {
    throw std::invalid_argument("ProductVector: wrong number of sites");
  }
  for (int i = 0; i < dims.site_count(); ++i) {
    if (sites[static_cast<std::size_t>(i)].dim() != dims.dim(i)) {
      throw std::invalid_argument("ProductVector: local dimension mismatch at site " + std::to_string(i));
    }
  }
  ProductVector v(dims);
  v.sites_ = std::move(sites);
  return v;
}

const ProductLabel& ProductVector::label() const {
  if (!label_) throw std::logic_error("ProductVector: not a basis label");
  return *label_;
}

std::uint64_t ProductVector::flat() const { return flat_index(dims_, label()); }

cplx ProductVector::site_amplitude(int site, int b) const {
  if (label_) return (*label_)[site] == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  return sites_[static_cast<std::size_t>(site)].amplitude(b);
}

cplx ProductVector::local_overlap(int site, const ProductVector& other) const {
  if (label_ && other.label_) {
    return (*label_)[site] == (*other.label_)[site] ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  }
  cplx acc = 0.0;
  for (int b = 0; b < dims_.dim(site); ++b) {
    acc += std::conj(site_amplitude(site, b)) * other.site_amplitude(site, b);
  }
  return acc;
}

cplx ProductVector::overlap(const ProductVector& other) const {
  if (dims_ != other.dims_) throw std::invalid_argument("ProductVector::overlap: dimension mismatch");
  cplx acc = 1.0;
  for (int i = 0; i < site_count(); ++i) acc *= local_overlap(i, other);
  return acc;
}

ProductVector ProductVector::mixed_with(const ProductVector& other, std::uint32_t alpha_bits) const {
  if (dims_ != other.dims_) throw std::invalid_argument("ProductVector::mixed_with: dimension mismatch");
  if (label_ && other.label_) {
    std::vector<int> labels(static_cast<std::size_t>(site_count()));
    for (int i = 0; i < site_count(); ++i) {
      labels[static_cast<std::size_t>(i)] =
          (alpha_bits >> i) & 1u ? (*other.label_)[i] : (*label_)[i];
    }
    return from_label(dims_, ProductLabel(std::move(labels)));
  }
  std::vector<LocalVector> sites;
  sites.reserve(static_cast<std::size_t>(site_count()));
  for (int i = 0; i < site_count(); ++i) {
    const ProductVector& src = ((alpha_bits >> i) & 1u) ? other : *this;
    if (src.label_) {
      sites.push_back(LocalVector::basis(dims_.dim(i), (*src.label_)[i]));
    } else {
      sites.push_back(src.sites_[static_cast<std::size_t>(i)]);
    }
  }
  return from_locals(dims_, std::move(sites));
}

Eigen::VectorXcd ProductVector::dense() const {
  const std::uint64_t total = dims_.total_dimension();
  if (total > caps::dense_dimension) {
    throw std::invalid_argument("ProductVector::dense: dimension exceeds dense cap");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
  if (label_) {
    v[static_cast<Eigen::Index>(flat())] = 1.0;
    return v;
  }
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    cplx amp = 1.0;
    std::uint64_t rem = idx;
    for (int i = 0; i < site_count() && amp != cplx(0.0, 0.0); ++i) {
      const int b = static_cast<int>(rem / dims_.stride(i));
      rem %= dims_.stride(i);
      amp *= sites_[static_cast<std::size_t>(i)].amplitude(b);
    }
    v[static_cast<Eigen::Index>(idx)] = amp;
  }
  return v;
}

// ---------------------------------------------------------------------------
// PureStateSparse

PureStateSparse::PureStateSparse(const DimensionVector& dims,
                                 const std::vector<std::pair<ProductLabel, cplx>>& terms)
    : dims_(dims) {
  if (terms.empty()) throw std::invalid_argument("PureStateSparse: empty term list");
  terms_.reserve(terms.size());
  for (const auto& [label, amp] : terms) {
    terms_.push_back(Term{flat_index(dims, label), amp});
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
    if (terms_[i].key == terms_[i + 1].key) {
      throw std::invalid_argument("PureStateSparse: duplicate label in term list");
    }
  }
  double norm2 = 0.0;
  for (const Term& t : terms_) norm2 += std::norm(t.amp);
  if (norm2 <= 0.0) throw std::invalid_argument("PureStateSparse: zero total norm");
  const double norm = std::sqrt(norm2);
  renorm_shift_ = std::abs(1.0 - norm);
  for (Term& t : terms_) t.amp /= norm;
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.amp) < tol::amplitude_prune; });
  if (terms_.empty()) throw std::invalid_argument("PureStateSparse: all terms pruned");
}

cplx PureStateSparse::amplitude_at(std::uint64_t key) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, std::uint64_t k) { return t.key < k; });
  if (it != terms_.end() && it->key == key) return it->amp;
  return {0.0, 0.0};
}

cplx PureStateSparse::overlap_with_product(const ProductVector& v) const {
  if (v.dims() != dims_) throw std::invalid_argument("PureStateSparse: dimension mismatch");
  if (v.is_basis()) return amplitude_at(v.flat());
  cplx acc = 0.0;
  for (const Term& t : terms_) {
    cplx factor = t.amp;
    std::uint64_t rem = t.key;
    for (int i = 0; i < dims_.site_count() && factor != cplx(0.0, 0.0); ++i) {
      const int b = static_cast<int>(rem / dims_.stride(i));
      rem %= dims_.stride(i);
      factor *= std::conj(v.site_amplitude(i, b));
    }
    acc += factor;
  }
  return acc;
}

cplx PureStateSparse::overlap(const PureStateSparse& other) const {
  if (other.dims_ != dims_) throw std::invalid_argument("PureStateSparse: dimension mismatch");
  // Merge walk over the two sorted term lists.
  cplx acc = 0.0;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->key < b->key) {
      ++a;
    } else if (b->key < a->key) {
      ++b;
    } else {
      acc += std::conj(a->amp) * b->amp;
      ++a;
      ++b;
    }
  }
  return acc;
}

Eigen::VectorXcd PureStateSparse::dense() const {
  const std::uint64_t total = dims_.total_dimension();
  if (total > caps::dense_dimension) {
    throw std::invalid_argument("PureStateSparse::dense: dimension exceeds dense cap");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
  for (const Term& t : terms_) v[static_cast<Eigen::Index>(t.key)] = t.amp;
  return v;
}

PureStateSparse PureStateSparse::ghz(int n_qubits) {
  const DimensionVector dims = DimensionVector::qubits(n_qubits);
  const double a = 1.0 / std::sqrt(2.0);
  return PureStateSparse(dims, {{uniform_label(n_qubits, 0), cplx(a, 0.0)},
                                {uniform_label(n_qubits, 1), cplx(a, 0.0)}});
}

PureStateSparse PureStateSparse::ghz_tilde(int n_qubits) {
  const DimensionVector dims = DimensionVector::qubits(n_qubits);
  const double a = 1.0 / std::sqrt(2.0);
  return PureStateSparse(dims, {{uniform_label(n_qubits, 0), cplx(a, 0.0)},
                                {uniform_label(n_qubits, 1), cplx(0.0, -a)}});
}

namespace {

std::vector<std::pair<ProductLabel, cplx>> w_qutrit_terms(int shift) {
  std::vector<std::pair<ProductLabel, cplx>> terms;
  const double a = 1.0 / (2.0 * std::sqrt(2.0));
  for (int level = 1; level <= 2; ++level) {
    for (int site = 0; site < 4; ++site) {
      std::vector<int> l(4, shift % 3);
      l[static_cast<std::size_t>(site)] = (level + shift) % 3;
      terms.emplace_back(ProductLabel(std::move(l)), cplx(a, 0.0));
    }
  }
  return terms;
}

}  // namespace

PureStateSparse PureStateSparse::w_qutrit4() {
  return PureStateSparse(DimensionVector::qudits(4, 3), w_qutrit_terms(0));
}

PureStateSparse PureStateSparse::w_qutrit4_shifted() {
  return PureStateSparse(DimensionVector::qudits(4, 3), w_qutrit_terms(1));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::dense(Eigen::MatrixXcd matrix, DimensionVector dims) {
  const auto total = static_cast<Eigen::Index>(dims.total_dimension());
  if (matrix.rows() != total || matrix.cols() != total) {
    throw std::invalid_argument("DensityOperator::dense: matrix shape does not match dims");
  }
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::hermiticity) {
    throw std::invalid_argument("DensityOperator::dense: matrix not Hermitian (residual " +
                                std::to_string(herm) + ")");
  }
  const double trace_err = std::abs(matrix.trace() - cplx(1.0, 0.0));
  if (trace_err > tol::hermiticity) {
    throw std::invalid_argument("DensityOperator::dense: trace differs from 1 by " +
                                std::to_string(trace_err));
  }
  return DensityOperator(std::move(dims), DenseRep{std::move(matrix)});
}

DensityOperator DensityOperator::mixture(DimensionVector dims,
                                         std::vector<MixtureComponent> components,
                                         double noise_weight) {
  double total = noise_weight;
  if (noise_weight < 0.0) throw std::invalid_argument("DensityOperator::mixture: negative noise weight");
  for (const MixtureComponent& c : components) {
    if (c.weight <= 0.0) throw std::invalid_argument("DensityOperator::mixture: component weight must be > 0");
    if (c.state.dims() != dims) throw std::invalid_argument("DensityOperator::mixture: component dims mismatch");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > tol::norm_check) {
    throw std::invalid_argument("DensityOperator::mixture: weights sum to " + std::to_string(total));
  }
  return DensityOperator(std::move(dims), MixtureRep{std::move(components), noise_weight});
}

const Eigen::MatrixXcd& DensityOperator::matrix() const {
  if (const auto* d = std::get_if<DenseRep>(&rep_)) return d->mat;
  throw std::logic_error("DensityOperator: not dense");
}

std::span<const MixtureComponent> DensityOperator::components() const {
  if (const auto* m = std::get_if<MixtureRep>(&rep_)) return m->components;
  throw std::logic_error("DensityOperator: not a mixture");
}

double DensityOperator::noise_weight() const {
  if (const auto* m = std::get_if<MixtureRep>(&rep_)) return m->noise_weight;
  throw std::logic_error("DensityOperator: not a mixture");
}

cplx DensityOperator::element(const ProductVector& bra, const ProductVector& ket) const {
  if (bra.dims() != dims_ || ket.dims() != dims_) {
    throw std::invalid_argument("DensityOperator::element: dimension mismatch");
  }
  if (const auto* d = std::get_if<DenseRep>(&rep_)) {
    if (bra.is_basis() && ket.is_basis()) {
      return d->mat(static_cast<Eigen::Index>(bra.flat()), static_cast<Eigen::Index>(ket.flat()));
    }
    const Eigen::VectorXcd bv = bra.dense();
    return bv.dot(d->mat * ket.dense());
  }
  const auto& m = std::get<MixtureRep>(rep_);
  cplx acc = 0.0;
  for (const MixtureComponent& c : m.components) {
    const cplx left = c.state.overlap_with_product(bra);          // <bra|phi>
    const cplx right = std::conj(c.state.overlap_with_product(ket));  // <phi|ket>
    acc += c.weight * left * right;
  }
  if (m.noise_weight > 0.0) {
    acc += m.noise_weight / static_cast<double>(dims_.total_dimension()) * bra.overlap(ket);
  }
  return acc;
}

double DensityOperator::diagonal(std::uint64_t flat) const {
  if (const auto* d = std::get_if<DenseRep>(&rep_)) {
    return d->mat(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(flat)).real();
  }
  const auto& m = std::get<MixtureRep>(rep_);
  double acc = m.noise_weight / static_cast<double>(dims_.total_dimension());
  for (const MixtureComponent& c : m.components) {
    acc += c.weight * std::norm(c.state.amplitude_at(flat));
  }
  return acc;
}

DensityOperator DensityOperator::to_dense(std::uint64_t dimension_cap) const {
  const std::uint64_t total = dims_.total_dimension();
  if (total > dimension_cap) {
    throw std::invalid_argument("DensityOperator::to_dense: dimension " + std::to_string(total) +
                                " exceeds cap " + std::to_string(dimension_cap));
  }
  if (is_dense()) return *this;
  const auto& m = std::get<MixtureRep>(rep_);
  const auto n = static_cast<Eigen::Index>(total);
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
  for (const MixtureComponent& c : m.components) {
    const Eigen::VectorXcd v = c.state.dense();
    mat.noalias() += c.weight * (v * v.adjoint());
  }
  if (m.noise_weight > 0.0) {
    mat += (m.noise_weight / static_cast<double>(total)) * Eigen::MatrixXcd::Identity(n, n);
  }
  return DensityOperator(dims_, DenseRep{std::move(mat)});
}

double DensityOperator::min_eigenvalue() const {
  const DensityOperator d = is_dense() ? *this : to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Families

void require_simplex(double p, double q) {
  if (p < 0.0 || q < 0.0 || p + q > 1.0 + 1e-12) {
    throw std::invalid_argument("family parameters outside the simplex {p,q >= 0, p+q <= 1}");
  }
}

namespace {

DensityOperator two_component_mixture(const DimensionVector& dims, const PureStateSparse& first,
                                      const PureStateSparse& second, double p, double q) {
  require_simplex(p, q);
  // Points numerically on the p+q = 1 edge can push the noise weight a few
  // ulp below zero.
  const double noise = std::max(0.0, 1.0 - p - q);
  std::vector<MixtureComponent> comps;
  if (p > 0.0) comps.push_back({p, first});
  if (q > 0.0) comps.push_back({q, second});
  return DensityOperator::mixture(dims, std::move(comps), noise);
}

}  // namespace

DensityOperator family_ghz_mix(int n_sites, double p, double q) {
  return two_component_mixture(DimensionVector::qubits(n_sites), PureStateSparse::ghz(n_sites),
                               PureStateSparse::ghz_tilde(n_sites), p, q);
}

DensityOperator family_w_qutrit_mix(double p, double q) {
  return two_component_mixture(DimensionVector::qudits(4, 3), PureStateSparse::w_qutrit4(),
                               PureStateSparse::w_qutrit4_shifted(), p, q);
}

ParamFamily ParamFamily::ghz_mix(int n_sites) {
  return ParamFamily("ghzmix" + std::to_string(n_sites), FamilyId::ghz_mix,
                     DimensionVector::qubits(n_sites),
                     {PureStateSparse::ghz(n_sites), PureStateSparse::ghz_tilde(n_sites)});
}

ParamFamily ParamFamily::w_qutrit_mix() {
  return ParamFamily("wqutritmix", FamilyId::w_qutrit_mix, DimensionVector::qudits(4, 3),
                     {PureStateSparse::w_qutrit4(), PureStateSparse::w_qutrit4_shifted()});
}

ParamFamily ParamFamily::two_component(std::string name, DimensionVector dims, PureStateSparse first,
                                       PureStateSparse second) {
  if (first.dims() != dims || second.dims() != dims) {
    throw std::invalid_argument("ParamFamily: component dims mismatch");
  }
  return ParamFamily(std::move(name), FamilyId::custom, std::move(dims),
                     {std::move(first), std::move(second)});
}

DensityOperator ParamFamily::at(double p, double q) const {
  return two_component_mixture(dims_, comps_[0], comps_[1], p, q);
}

const PureStateSparse& ParamFamily::component(int i) const {
  return comps_.at(static_cast<std::size_t>(i));
}

}  // namespace kdet
