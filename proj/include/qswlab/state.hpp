#pragma once

#include "qswlab/core.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace qswlab {

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

struct StateDefects {
  double trace_error = 0.0;
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;

  bool within(const StateTolerance& tol) const {
    return trace_error <= tol.trace && hermiticity_defect <= tol.hermiticity && min_eigenvalue >= tol.min_eigenvalue;
  }
};

/// Measures how far an arbitrary matrix is from being a density matrix.
/// The spectrum is taken on the Hermitian part.
inline StateDefects state_defects(const CMatrix& m) {
  require_square(m, "state");
  StateDefects d;
  d.trace_error = std::abs(m.trace() - Complex{1.0, 0.0});
  d.hermiticity_defect = hermiticity_defect(m);
  if (m.size() > 0) {
    CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return d;
}

/// Hermitian, positive-semidefinite, unit-trace matrix. Checked on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m, const StateTolerance& tol = {}) : m_(std::move(m)) {
    StateDefects d = state_defects(m_);
    if (d.hermiticity_defect > tol.hermiticity) {
      throw InvalidState("state is not Hermitian (defect " + std::to_string(d.hermiticity_defect) + ")");
    }
    if (d.trace_error > tol.trace) {
      throw InvalidState("state trace differs from 1 by " + std::to_string(d.trace_error));
    }
    if (d.min_eigenvalue < tol.min_eigenvalue) {
      throw InvalidState("state has negative eigenvalue " + std::to_string(d.min_eigenvalue));
    }
  }

  /// |index><index|
  static DensityMatrix basis_state(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
    CMatrix m = CMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
  }

  /// |psi><psi| / <psi|psi>
  static DensityMatrix pure(const CVector& psi) {
    double norm2 = psi.squaredNorm();
    if (norm2 == 0.0) throw InvalidArgument("pure state from the zero vector");
    return DensityMatrix(psi * psi.adjoint() / norm2);
  }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    if (dim <= 0) throw InvalidArgument("dimension must be positive");
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

}  // namespace qswlab
