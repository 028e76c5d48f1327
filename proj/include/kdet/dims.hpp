#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "kdet/types.hpp"

namespace kdet {

/// Per-site local dimensions of an N-partite system. Site 0 is the most
/// significant position in the flat row-major index, so a product label
/// (l_0, ..., l_{N-1}) flattens to sum_i l_i * stride(i) with
/// stride(i) = prod_{j>i} d_j.
class DimensionVector {
 public:
  explicit DimensionVector(std::vector<int> dims);
  DimensionVector(std::initializer_list<int> dims)
      : DimensionVector(std::vector<int>(dims)) {}

  static DimensionVector qubits(int n);
  static DimensionVector qudits(int n, int d);

  int site_count() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  std::uint64_t stride(int site) const { return strides_.at(static_cast<std::size_t>(site)); }
  std::uint64_t total_dimension() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }

  bool uniform() const;
  /// Common local dimension; throws if sites differ.
  int uniform_dim() const;

  bool operator==(const DimensionVector&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t total_ = 0;
};

/// Computational-basis label, one local index per site.
struct ProductLabel {
  std::vector<int> labels;

  ProductLabel() = default;
  ProductLabel(std::initializer_list<int> l) : labels(l) {}
  explicit ProductLabel(std::vector<int> l) : labels(std::move(l)) {}

  int site_count() const { return static_cast<int>(labels.size()); }
  int operator[](int site) const { return labels.at(static_cast<std::size_t>(site)); }

  bool operator==(const ProductLabel&) const = default;
};

/// Uniform label (v, v, ..., v) of length n.
ProductLabel uniform_label(int n, int value);

/// Flat row-major index of a label; validates site count and ranges.
std::uint64_t flat_index(const DimensionVector& dims, const ProductLabel& label);
ProductLabel unflatten(const DimensionVector& dims, std::uint64_t index);

}  // namespace kdet
