#pragma once

#include "qswlab/generator.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qswlab {

/// Column-stacking vectorization: entry (r, c) goes to index c*d + r.
inline CVector vecc(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

inline CMatrix unvecc(const CVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DimensionMismatch("vector length is not dim^2");
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

/// Dense matrix F acting on vecc(rho) so that d/dt vecc(rho) = F vecc(rho).
class Superoperator {
 public:
  Superoperator() = default;

  explicit Superoperator(CMatrix f) : f_(std::move(f)) {
    require_square(f_, "superoperator");
    auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(f_.rows()))));
    if (d * d != f_.rows() || d == 0) {
      throw DimensionMismatch("superoperator size " + std::to_string(f_.rows()) + " is not a positive square");
    }
    dim_ = d;
  }

  const CMatrix& matrix() const { return f_; }
  Eigen::Index dim() const { return dim_; }

  CMatrix apply(const CMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionMismatch("state dimension mismatch");
    return unvecc(f_ * vecc(rho), dim_);
  }

  /// || vecc(1)^+ F || / ||F||; zero for trace-preserving generators.
  double trace_preservation_residual() const {
    CVector row = CVector::Zero(f_.cols());
    for (Eigen::Index r = 0; r < dim_; ++r) row += f_.row(r * dim_ + r).transpose();
    double norm = f_.norm();
    return norm == 0.0 ? row.norm() : row.norm() / norm;
  }

 private:
  CMatrix f_;
  Eigen::Index dim_ = 0;
};

/// F = -i(1 (x) Heff - Heff^T (x) 1) + w sum_L conj(L) (x) L - (w/2)(1 (x) K + K^T (x) 1)
/// with Heff = (1-w) H + w H_loc and K = sum_L L^+ L.
inline Superoperator assemble_superoperator(const QswGenerator& gen) {
  const Eigen::Index d = gen.dim();
  const Eigen::Index n = d * d;
  const double w = gen.omega();
  CMatrix heff = (1.0 - w) * gen.hamiltonian();
  if (gen.has_local_hamiltonian()) heff += w * gen.local_hamiltonian();
  CMatrix k = w == 0.0 ? CMatrix::Zero(d, d) : CMatrix(gen.lindblad_gram_sum());

  // Left action M X -> block-diagonal copies of M; right action X M -> M^T (x) 1.
  CMatrix left = -kI * heff - 0.5 * w * k;
  CMatrix right = kI * heff - 0.5 * w * k;
  CMatrix f = CMatrix::Zero(n, n);
  for (Eigen::Index c = 0; c < d; ++c) f.block(c * d, c * d, d, d) = left;
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index c2 = 0; c2 < d; ++c2) {
      const Complex m = right(c2, c);
      if (m == Complex{0.0, 0.0}) continue;
      for (Eigen::Index r = 0; r < d; ++r) f(c * d + r, c2 * d + r) += m;
    }
  }

  if (w != 0.0) {
    struct Entry {
      Eigen::Index row, col;
      Complex value;
    };
    std::vector<Entry> nz;
    for (const CMatrix& l : gen.lindblads()) {
      nz.clear();
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
          if (l(i, j) != Complex{0.0, 0.0}) nz.push_back({i, j, l(i, j)});
        }
      }
      for (const Entry& a : nz) {
        const Complex ca = w * std::conj(a.value);
        for (const Entry& e : nz) f(a.row * d + e.row, a.col * d + e.col) += ca * e.value;
      }
    }
  }
  return Superoperator(std::move(f));
}

}  // namespace qswlab
