#pragma once

// Thin wrappers over LAPACKE for the dense kernels that dominate run time,
// plus the real representation of Hermiticity-preserving superoperators.

#include "qswlab/core.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

namespace qswlab::linalg {

inline std::vector<Complex> eigenvalues(RMatrix a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("eigenvalue input must be square");
  const auto n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(), nullptr, 1,
                                  nullptr, 1);
  if (info != 0) throw NumericalBreakdown("dgeev failed to converge (info " + std::to_string(info) + ")");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {wr[i], wi[i]};
  return out;
}

inline std::vector<Complex> eigenvalues(CMatrix a) {
  require_square(a, "eigenvalue input");
  const auto n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  std::vector<Complex> w(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalBreakdown("zgeev failed to converge (info " + std::to_string(info) + ")");
  return w;
}

struct RealSvd {
  RVector singular_values;  // descending
  RMatrix v;                // right singular vectors as columns (empty unless requested)
};

inline RealSvd svd(RMatrix a, bool want_vectors) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  RealSvd out;
  out.singular_values.resize(std::min(m, n));
  if (m == 0 || n == 0) return out;
  RMatrix u, vt;
  char jobz = 'N';
  if (want_vectors) {
    jobz = 'A';
    u.resize(m, m);
    vt.resize(n, n);
  }
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, m, n, a.data(), m, out.singular_values.data(),
                                   want_vectors ? u.data() : nullptr, m, want_vectors ? vt.data() : nullptr, n);
  if (info != 0) throw NumericalBreakdown("dgesdd failed to converge (info " + std::to_string(info) + ")");
  if (want_vectors) out.v = vt.transpose();
  return out;
}

/// Orthonormal Hermitian basis of d x d matrices (Hilbert-Schmidt inner
/// product): E_ii, then for each i < j the pair (E_ij + E_ji)/sqrt2 and
/// i(E_ij - E_ji)/sqrt2. Each element has at most two nonzero entries,
/// addressed by column-stacked index.
class HermitianBasis {
 public:
  struct Element {
    Eigen::Index index[2];
    Complex coeff[2];
    int count;
  };

  explicit HermitianBasis(Eigen::Index d) : d_(d) {
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) elements_.push_back({{vec(i, i), 0}, {1.0, 0.0}, 1});
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = i + 1; j < d; ++j) {
        elements_.push_back({{vec(i, j), vec(j, i)}, {s, s}, 2});
        elements_.push_back({{vec(i, j), vec(j, i)}, {Complex{0.0, s}, Complex{0.0, -s}}, 2});
      }
    }
  }

  Eigen::Index dim() const { return d_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(elements_.size()); }
  const Element& operator[](Eigen::Index a) const { return elements_[static_cast<std::size_t>(a)]; }

  /// Hermitian matrix sum_a x_a B_a.
  CMatrix matrix(const RVector& x) const {
    if (x.size() != size()) throw DimensionMismatch("coordinate vector has wrong length");
    CVector v = CVector::Zero(d_ * d_);
    for (Eigen::Index a = 0; a < size(); ++a) {
      const Element& e = elements_[static_cast<std::size_t>(a)];
      for (int k = 0; k < e.count; ++k) v(e.index[k]) += x(a) * e.coeff[k];
    }
    return Eigen::Map<const CMatrix>(v.data(), d_, d_);
  }

  /// Coordinates of a Hermitian matrix (the anti-Hermitian part is dropped).
  RVector coordinates(const CMatrix& m) const {
    RVector x(size());
    for (Eigen::Index a = 0; a < size(); ++a) {
      const Element& e = elements_[static_cast<std::size_t>(a)];
      Complex acc{0.0, 0.0};
      for (int k = 0; k < e.count; ++k) acc += std::conj(e.coeff[k]) * m.data()[e.index[k]];
      x(a) = acc.real();
    }
    return x;
  }

 private:
  Eigen::Index vec(Eigen::Index r, Eigen::Index c) const { return c * d_ + r; }
  Eigen::Index d_;
  std::vector<Element> elements_;
};

struct RealForm {
  RMatrix matrix;
  /// Largest |Im| met while projecting; ~0 iff F preserves Hermiticity.
  double imaginary_residual = 0.0;
};

/// R = B^+ F B in the Hermitian basis. Linear in the size of F because every
/// basis element touches at most two coordinates.
inline RealForm real_form(const CMatrix& f, const HermitianBasis& basis) {
  const Eigen::Index n = basis.size();
  if (f.rows() != n || f.cols() != n) throw DimensionMismatch("superoperator size does not match basis");
  RealForm out;
  out.matrix.resize(n, n);
  CVector y(n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const auto& eb = basis[b];
    y = f.col(eb.index[0]) * eb.coeff[0];
    if (eb.count == 2) y += f.col(eb.index[1]) * eb.coeff[1];
    for (Eigen::Index a = 0; a < n; ++a) {
      const auto& ea = basis[a];
      Complex acc = std::conj(ea.coeff[0]) * y(ea.index[0]);
      if (ea.count == 2) acc += std::conj(ea.coeff[1]) * y(ea.index[1]);
      out.matrix(a, b) = acc.real();
      out.imaginary_residual = std::max(out.imaginary_residual, std::abs(acc.imag()));
    }
  }
  return out;
}

}  // namespace qswlab::linalg
