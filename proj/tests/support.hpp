#pragma once

// Independent oracles used by the unit and acceptance tests.

#include "qswlab/qswlab.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

namespace qswlab::oracle {

/// Integrates the master equation directly (no vectorized F) with an
/// adaptive Dormand-Prince 5(4) stepper.
inline CMatrix rk_evolve(const QswGenerator& gen, const CMatrix& rho0, double t, double tol = 1e-12) {
  namespace ode = boost::numeric::odeint;
  using State = std::vector<Complex>;
  const Eigen::Index d = gen.dim();
  State x(rho0.data(), rho0.data() + rho0.size());
  auto rhs = [&](const State& s, State& ds, double) {
    Eigen::Map<const CMatrix> rho(s.data(), d, d);
    CMatrix out = apply_generator(gen, CMatrix(rho));
    std::copy(out.data(), out.data() + out.size(), ds.begin());
  };
  if (t > 0) {
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol, tol), rhs, x, 0.0, t, 1e-3);
  }
  return Eigen::Map<const CMatrix>(x.data(), d, d);
}

/// Random full-rank density matrix G G^+ / tr.
inline DensityMatrix random_state(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = {normal(rng), normal(rng)};
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

/// Largest distance in a nearest-neighbour pairing of two equal-size
/// multisets; infinity if the sizes differ.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& z : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!used[k] && std::abs(z - b[k]) < bd) {
        bd = std::abs(z - b[k]);
        best = k;
      }
    }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

/// min over the spectrum of |lambda - target|.
inline double distance_to_spectrum(const std::vector<Complex>& spectrum, Complex target) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : spectrum) best = std::min(best, std::abs(z - target));
  return best;
}

/// Orthogonal projector onto the span of Hermitian matrices, in Hermitian-basis coordinates.
inline RMatrix span_projector(const std::vector<CMatrix>& mats, Eigen::Index d) {
  linalg::HermitianBasis basis(d);
  RMatrix cols(basis.size(), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = basis.coordinates(mats[i]);
  Eigen::HouseholderQR<RMatrix> qr(cols);
  RMatrix q = qr.householderQ() * RMatrix::Identity(cols.rows(), cols.cols());
  return q * q.transpose();
}

}  // namespace qswlab::oracle
