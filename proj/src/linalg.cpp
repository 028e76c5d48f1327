#include "kdet/linalg.hpp"

#include <stdexcept>

namespace kdet {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd embed_site(const DimensionVector& dims, int site, const Eigen::MatrixXcd& local) {
  if (local.rows() != dims.dim(site) || local.cols() != dims.dim(site)) {
    throw std::invalid_argument("embed_site: local operator does not match site dimension");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < dims.site_count(); ++i) {
    if (i == site) {
      out = kron(out, local);
    } else {
      out = kron(out, Eigen::MatrixXcd::Identity(dims.dim(i), dims.dim(i)));
    }
  }
  return out;
}

}  // namespace kdet
