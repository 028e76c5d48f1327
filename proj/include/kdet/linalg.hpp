#pragma once

#include <Eigen/Dense>

#include "kdet/dims.hpp"

namespace kdet {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// identity (x) ... (x) local (x) ... (x) identity, with `local` at `site`.
Eigen::MatrixXcd embed_site(const DimensionVector& dims, int site, const Eigen::MatrixXcd& local);

}  // namespace kdet
