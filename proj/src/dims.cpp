#include "kdet/dims.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace kdet {

DimensionVector::DimensionVector(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2) {
    throw std::invalid_argument("DimensionVector: need at least 2 sites, got " +
                                std::to_string(dims_.size()));
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("DimensionVector: every local dimension must be >= 2, got " +
                                  std::to_string(d));
    }
    const auto ud = static_cast<std::uint64_t>(d);
    if (total_ > std::numeric_limits<std::uint64_t>::max() / ud) {
      throw std::invalid_argument("DimensionVector: total dimension overflows 64 bits");
    }
    total_ *= ud;
  }
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * static_cast<std::uint64_t>(dims_[static_cast<std::size_t>(i) + 1]);
  }
}

DimensionVector DimensionVector::qubits(int n) { return qudits(n, 2); }

DimensionVector DimensionVector::qudits(int n, int d) {
  if (n < 2) throw std::invalid_argument("DimensionVector: need at least 2 sites");
  return DimensionVector(std::vector<int>(static_cast<std::size_t>(n), d));
}

bool DimensionVector::uniform() const {
  for (int d : dims_) {
    if (d != dims_.front()) return false;
  }
  return true;
}

int DimensionVector::uniform_dim() const {
  if (!uniform()) {
    throw std::invalid_argument("DimensionVector: sites have unequal local dimensions");
  }
  return dims_.front();
}

ProductLabel uniform_label(int n, int value) {
  return ProductLabel(std::vector<int>(static_cast<std::size_t>(n), value));
}

std::uint64_t flat_index(const DimensionVector& dims, const ProductLabel& label) {
  if (label.site_count() != dims.site_count()) {
    throw std::invalid_argument("flat_index: label has " + std::to_string(label.site_count()) +
                                " sites, expected " + std::to_string(dims.site_count()));
  }
  std::uint64_t idx = 0;
  for (int i = 0; i < dims.site_count(); ++i) {
    const int l = label[i];
    if (l < 0 || l >= dims.dim(i)) {
      throw std::invalid_argument("flat_index: label " + std::to_string(l) +
                                  " out of range at site " + std::to_string(i));
    }
    idx += static_cast<std::uint64_t>(l) * dims.stride(i);
  }
  return idx;
}

ProductLabel unflatten(const DimensionVector& dims, std::uint64_t index) {
  if (index >= dims.total_dimension()) {
    throw std::invalid_argument("unflatten: index out of range");
  }
  std::vector<int> labels(static_cast<std::size_t>(dims.site_count()));
  for (int i = 0; i < dims.site_count(); ++i) {
    labels[static_cast<std::size_t>(i)] = static_cast<int>(index / dims.stride(i));
    index %= dims.stride(i);
  }
  return ProductLabel(std::move(labels));
}

}  // namespace kdet
