#pragma once

#include "qswlab/superoperator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

namespace qswlab {

/// exp(tF) as a dense d^2 x d^2 matrix.
inline CMatrix propagator(const Superoperator& f, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("evolution time must be >= 0");
  if (t == 0.0) return CMatrix::Identity(f.matrix().rows(), f.matrix().cols());
  CMatrix scaled = t * f.matrix();
  return scaled.exp();
}

namespace detail {

inline void require_state_dim(const Superoperator& f, const CMatrix& rho) {
  if (rho.rows() != f.dim() || rho.cols() != f.dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(rho.rows()) + " differs from superoperator dimension " +
                            std::to_string(f.dim()));
  }
}

// Re-Hermitize and check the trace before accepting an evolved state.
inline DensityMatrix accept_state(const CMatrix& raw) {
  CMatrix rho = 0.5 * (raw + raw.adjoint());
  const double drift = std::abs(rho.trace() - Complex{1.0, 0.0});
  if (drift > 1e-8) throw NumericalBreakdown("trace drifted by " + std::to_string(drift) + " during evolution");
  return DensityMatrix(std::move(rho), StateTolerance{1e-10, 1e-8, -1e-8});
}

}  // namespace detail

/// Unchecked rho_t = unvecc(exp(tF) vecc(rho0)).
inline CMatrix evolve_raw(const Superoperator& f, const CMatrix& rho0, double t) {
  detail::require_state_dim(f, rho0);
  if (t == 0.0) return rho0;
  return unvecc(propagator(f, t) * vecc(rho0), f.dim());
}

inline DensityMatrix evolve(const Superoperator& f, const DensityMatrix& rho0, double t) {
  detail::require_state_dim(f, rho0.matrix());
  if (!(t >= 0.0)) throw InvalidArgument("evolution time must be >= 0");
  if (t == 0.0) return rho0;
  return detail::accept_state(evolve_raw(f, rho0.matrix(), t));
}

/// States at each requested time. Times need not be sorted.
inline std::vector<DensityMatrix> trajectory(const Superoperator& f, const DensityMatrix& rho0,
                                             const std::vector<double>& times) {
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(evolve(f, rho0, t));
  return out;
}

struct StationarityOptions {
  double t_start = 64.0;
  double t_cap = 4096.0;
  double tol = 1e-6;
};

struct StationaryEstimate {
  DensityMatrix state;
  double time = 0.0;
  /// False when the cap was reached before the change dropped below tol.
  bool converged = false;
  double last_change = 0.0;
};

/// Doubles t from t_start, squaring the propagator each step, until
/// ||rho_2t - rho_t||_F < tol or t reaches t_cap.
inline StationaryEstimate evolve_to_stationarity(const Superoperator& f, const DensityMatrix& rho0,
                                                 const StationarityOptions& opts = {}) {
  detail::require_state_dim(f, rho0.matrix());
  if (!(opts.t_start > 0.0) || opts.t_cap < opts.t_start) throw InvalidArgument("invalid stationarity time range");
  CMatrix e = propagator(f, opts.t_start);
  const CVector v0 = vecc(rho0.matrix());
  CVector v = e * v0;
  double t = opts.t_start;
  double change = 0.0;
  bool converged = false;
  while (t < opts.t_cap) {
    e = e * e;
    CVector next = e * v0;
    change = (next - v).norm();
    v = std::move(next);
    t *= 2.0;
    if (change < opts.tol) {
      converged = true;
      break;
    }
  }
  return {detail::accept_state(unvecc(v, f.dim())), t, converged, change};
}

}  // namespace qswlab
