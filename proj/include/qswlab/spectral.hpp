#pragma once

#include "qswlab/linalg.hpp"
#include "qswlab/superoperator.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qswlab {

enum class Verdict { relaxing, convergent_not_relaxing, non_convergent };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::relaxing: return "relaxing";
    case Verdict::convergent_not_relaxing: return "convergent_not_relaxing";
    case Verdict::non_convergent: return "non_convergent";
  }
  return "unknown";
}

struct SpectrumOptions {
  /// Zero threshold on |lambda| / max|lambda|.
  double tol_zero = 1e-8;
  /// Extract a basis of stationary density matrices (needs an SVD of F).
  bool stationary_states = false;
  /// Count the null space a second time through singular values.
  bool cross_check = false;
};

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  double scale = 1.0;  // max |lambda|, or 1 when F = 0
  double tol_zero = 1e-8;
  std::size_t null_dim = 0;
  bool has_imaginary_pair = false;
  Verdict verdict = Verdict::relaxing;
  /// Trace-one positive stationary states spanning the null space (when requested).
  std::vector<DensityMatrix> stationary_basis;
  /// Null-space dimension by singular values (when requested).
  std::optional<std::size_t> singular_null_dim;
  std::vector<std::string> diagnostics;

  nlohmann::json to_json() const {
    nlohmann::json ev = nlohmann::json::array();
    for (const Complex& z : eigenvalues) ev.push_back({z.real(), z.imag()});
    nlohmann::json j{{"eigenvalues", ev},
                     {"null_dim", null_dim},
                     {"has_imaginary_pair", has_imaginary_pair},
                     {"verdict", to_string(verdict)},
                     {"tolerances", {{"tol_zero", tol_zero}, {"scale", scale}}}};
    if (singular_null_dim) j["singular_null_dim"] = *singular_null_dim;
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j;
  }
};

/// Classification from a list of eigenvalues alone.
inline SpectralReport classify_eigenvalues(std::vector<Complex> eigenvalues, double tol_zero) {
  SpectralReport r;
  r.tol_zero = tol_zero;
  double scale = 0.0;
  for (const Complex& z : eigenvalues) scale = std::max(scale, std::abs(z));
  r.scale = scale > 0.0 ? scale : 1.0;
  for (const Complex& z : eigenvalues) {
    const Complex u = z / r.scale;
    if (std::abs(u) <= tol_zero) {
      ++r.null_dim;
    } else if (std::abs(u.real()) <= tol_zero) {
      r.has_imaginary_pair = true;
    }
  }
  // Sort by decreasing real part, then imaginary part, so reports are stable.
  std::sort(eigenvalues.begin(), eigenvalues.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  r.eigenvalues = std::move(eigenvalues);
  if (r.has_imaginary_pair) {
    r.verdict = Verdict::non_convergent;
  } else if (r.null_dim == 1) {
    r.verdict = Verdict::relaxing;
  } else {
    r.verdict = Verdict::convergent_not_relaxing;
  }
  return r;
}

namespace detail {

struct RealSpectrumInput {
  bool hermiticity_preserving = false;
  linalg::RealForm form;
};

inline RealSpectrumInput real_input(const Superoperator& f, const linalg::HermitianBasis& basis) {
  RealSpectrumInput in;
  in.form = linalg::real_form(f.matrix(), basis);
  const double fmax = f.matrix().size() == 0 ? 0.0 : f.matrix().cwiseAbs().maxCoeff();
  in.hermiticity_preserving = in.form.imaginary_residual <= 1e-12 * std::max(1.0, fmax);
  return in;
}

// Trace-one positive states spanning the Hermitian kernel. Uses the fact
// that the positive and negative parts of a fixed point of a trace-preserving
// positive map are themselves fixed points.
inline std::vector<DensityMatrix> states_spanning(const std::vector<CMatrix>& kernel, const linalg::HermitianBasis& basis) {
  std::vector<CMatrix> candidates;
  for (const CMatrix& x : kernel) {
    CMatrix herm = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    const RVector& ev = es.eigenvalues();
    const CMatrix& vecs = es.eigenvectors();
    const double norm = ev.cwiseAbs().maxCoeff();
    if (norm == 0.0) continue;
    CMatrix pos = CMatrix::Zero(herm.rows(), herm.cols());
    CMatrix neg = pos;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      CMatrix proj = vecs.col(k) * vecs.col(k).adjoint();
      if (ev(k) > 0) {
        pos += ev(k) * proj;
      } else if (ev(k) < 0) {
        neg -= ev(k) * proj;
      }
    }
    for (CMatrix* part : {&pos, &neg}) {
      const double tr = part->trace().real();
      if (tr > 1e-8 * norm) candidates.push_back(*part / tr);
    }
  }

  std::vector<DensityMatrix> states;
  std::vector<RVector> span;
  for (const CMatrix& c : candidates) {
    if (states.size() == kernel.size()) break;
    RVector x = basis.coordinates(c);
    RVector residual = x;
    for (const RVector& q : span) residual -= q.dot(residual) * q;
    if (residual.norm() <= 1e-6 * x.norm()) continue;
    span.push_back(residual.normalized());
    CMatrix herm = 0.5 * (c + c.adjoint());
    states.emplace_back(herm, StateTolerance{1e-10, 1e-8, -1e-8});
  }
  return states;
}

}  // namespace detail

/// Orthonormal (Hilbert-Schmidt) basis of Hermitian matrices spanning the
/// null space of F: the right singular vectors of the real form whose
/// singular values are the `count` smallest. `count` defaults to the number
/// of singular values <= tol * scale.
struct HermitianKernel {
  std::vector<CMatrix> basis;
  RVector singular_values;
  std::size_t below_tolerance = 0;
};

inline HermitianKernel hermitian_kernel(const Superoperator& f, double tol, double scale,
                                        std::optional<std::size_t> count = std::nullopt) {
  linalg::HermitianBasis hb(f.dim());
  auto in = detail::real_input(f, hb);
  if (!in.hermiticity_preserving) throw InvalidArgument("superoperator does not preserve Hermiticity");
  linalg::RealSvd svd = linalg::svd(in.form.matrix, true);
  HermitianKernel k;
  k.singular_values = svd.singular_values;
  for (Eigen::Index i = 0; i < svd.singular_values.size(); ++i) {
    if (svd.singular_values(i) <= tol * scale) ++k.below_tolerance;
  }
  const std::size_t take = std::min<std::size_t>(count.value_or(k.below_tolerance),
                                                 static_cast<std::size_t>(svd.singular_values.size()));
  const Eigen::Index n = svd.v.cols();
  for (std::size_t i = 0; i < take; ++i) {
    k.basis.push_back(hb.matrix(svd.v.col(n - 1 - static_cast<Eigen::Index>(i))));
  }
  return k;
}

inline SpectralReport spectrum(const Superoperator& f, const SpectrumOptions& opts = {}) {
  linalg::HermitianBasis basis(f.dim());
  auto in = detail::real_input(f, basis);
  std::vector<Complex> ev = in.hermiticity_preserving ? linalg::eigenvalues(in.form.matrix)
                                                      : linalg::eigenvalues(CMatrix(f.matrix()));
  SpectralReport r = classify_eigenvalues(std::move(ev), opts.tol_zero);
  if (!in.hermiticity_preserving) {
    r.diagnostics.push_back("superoperator does not preserve Hermiticity; complex eigensolver used");
  }
  if ((opts.stationary_states || opts.cross_check) && in.hermiticity_preserving) {
    linalg::RealSvd svd = linalg::svd(in.form.matrix, opts.stationary_states);
    std::size_t below = 0;
    for (Eigen::Index i = 0; i < svd.singular_values.size(); ++i) {
      if (svd.singular_values(i) <= opts.tol_zero * r.scale) ++below;
    }
    r.singular_null_dim = below;
    if (below != r.null_dim) {
      r.diagnostics.push_back("null-space dimension by eigenvalues (" + std::to_string(r.null_dim) +
                              ") differs from singular-value count (" + std::to_string(below) + ")");
    }
    if (opts.stationary_states) {
      const Eigen::Index n = svd.v.cols();
      std::vector<CMatrix> kernel;
      for (std::size_t i = 0; i < r.null_dim && static_cast<Eigen::Index>(i) < n; ++i) {
        kernel.push_back(basis.matrix(svd.v.col(n - 1 - static_cast<Eigen::Index>(i))));
      }
      r.stationary_basis = detail::states_spanning(kernel, basis);
    }
  }
  return r;
}

/// Joint eigen-decomposition data for a generator whose H and Lindblad
/// operators are normal and pairwise commuting.
struct CommutingSpectrum {
  std::vector<double> hamiltonian_eigs;
  std::vector<std::vector<Complex>> lindblad_eigs;
  /// (i, j) entry: eigenvalue of F on |u_i><u_j|.
  CMatrix pair_eigenvalues;
  CMatrix unitary_basis;

  std::vector<Complex> flattened() const {
    return std::vector<Complex>(pair_eigenvalues.data(), pair_eigenvalues.data() + pair_eigenvalues.size());
  }
};

inline Complex undirected_global_pair_eigenvalue(double d_i, double d_j, double omega) {
  const double diff = d_i - d_j;
  return Complex{-0.5 * omega * diff * diff, -(1.0 - omega) * diff};
}

inline CommutingSpectrum commuting_spectrum(const QswGenerator& gen, double tol = 1e-10) {
  const CMatrix& h = gen.hamiltonian();
  std::vector<const CMatrix*> ops{&h};
  for (const CMatrix& l : gen.lindblads()) ops.push_back(&l);
  if (gen.has_local_hamiltonian()) ops.push_back(&gen.local_hamiltonian());
  for (std::size_t a = 0; a < ops.size(); ++a) {
    const CMatrix& x = *ops[a];
    if ((x * x.adjoint() - x.adjoint() * x).cwiseAbs().maxCoeff() > tol) {
      throw NotCommuting("operator " + std::to_string(a) + " is not normal");
    }
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      if ((x * *ops[b] - *ops[b] * x).cwiseAbs().maxCoeff() > tol) {
        throw NotCommuting("operators " + std::to_string(a) + " and " + std::to_string(b) + " do not commute");
      }
    }
  }

  // A generic Hermitian combination of commuting normal operators has their
  // common eigenbasis as its eigenbasis.
  CMatrix mix = h;
  for (std::size_t a = 1; a < ops.size(); ++a) {
    const double alpha = 1.0 / (std::numbers::sqrt2 + static_cast<double>(a));
    const double beta = 1.0 / (std::numbers::sqrt3 + 1.7 * static_cast<double>(a));
    const CMatrix& x = *ops[a];
    mix += alpha * (x + x.adjoint()) + beta * kI * (x - x.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (mix + mix.adjoint()));
  const CMatrix u = es.eigenvectors();

  auto diagonal_of = [&](const CMatrix& x) {
    CMatrix t = u.adjoint() * x * u;
    CMatrix off = t;
    off.diagonal().setZero();
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-8 * scale) {
      throw NotCommuting("could not find a common eigenbasis");
    }
    return CVector(t.diagonal());
  };

  CommutingSpectrum cs;
  cs.unitary_basis = u;
  CVector dh = diagonal_of(h);
  for (Eigen::Index i = 0; i < dh.size(); ++i) cs.hamiltonian_eigs.push_back(dh(i).real());
  std::vector<CVector> dl;
  for (const CMatrix& l : gen.lindblads()) {
    dl.push_back(diagonal_of(l));
    cs.lindblad_eigs.emplace_back(dl.back().data(), dl.back().data() + dl.back().size());
  }
  CVector dloc = gen.has_local_hamiltonian() ? diagonal_of(gen.local_hamiltonian()) : CVector::Zero(dh.size());

  const double w = gen.omega();
  const Eigen::Index d = gen.dim();
  cs.pair_eigenvalues.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex lam = -kI * (1.0 - w) * (dh(i).real() - dh(j).real()) - kI * w * (dloc(i).real() - dloc(j).real());
      for (const CVector& l : dl) {
        lam += w * (l(i) * std::conj(l(j)) - 0.5 * std::norm(l(i)) - 0.5 * std::norm(l(j)));
      }
      cs.pair_eigenvalues(i, j) = lam;
    }
  }
  return cs;
}

/// |C_i> with components exp(2 pi i * i * j / n) / sqrt(n).
inline CVector circulant_eigenvector(Eigen::Index n, Eigen::Index i) {
  if (n < 1 || i < 0 || i >= n) throw InvalidArgument("circulant eigenvector index out of range");
  CVector c(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((i * j) % n) / static_cast<double>(n);
    c(j) = norm * Complex{std::cos(phase), std::sin(phase)};
  }
  return c;
}

inline bool is_stationary(const QswGenerator& gen, const CMatrix& rho, double tol) {
  return apply_generator(gen, rho).norm() <= tol;
}

inline bool is_stationary(const QswGenerator& gen, const DensityMatrix& rho, double tol) {
  return is_stationary(gen, rho.matrix(), tol);
}

}  // namespace qswlab
