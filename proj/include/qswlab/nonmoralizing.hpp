#pragma once

// Enlarged-space global-interaction walk that removes co-parent
// interference ("spontaneous moralization").
//
// Every vertex w gets a subspace of dimension max(indegree(w), 1). For the
// parents v_0 < ... < v_{k-1} of w, the block of L~ mapping the subspace of
// v_l into the subspace of w is (column l of the k x k Fourier matrix) times
// an all-ones row. Distinct Fourier columns are orthogonal, so the cross
// terms between co-parents in L~^+ L~ vanish.

#include "qswlab/superoperator.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace qswlab {

class EnlargedSpace {
 public:
  EnlargedSpace() = default;
  explicit EnlargedSpace(std::vector<Eigen::Index> vertex_dims) : dims_(std::move(vertex_dims)) {
    Eigen::Index offset = 0;
    for (Eigen::Index d : dims_) {
      if (d < 1) throw InvalidArgument("vertex subspace dimension must be >= 1");
      offsets_.push_back(offset);
      offset += d;
    }
    total_ = offset;
  }

  std::size_t vertex_count() const { return dims_.size(); }
  const std::vector<Eigen::Index>& vertex_dims() const { return dims_; }
  const std::vector<Eigen::Index>& offsets() const { return offsets_; }
  Eigen::Index total_dim() const { return total_; }

  Subspace subspace(Vertex v) const { return {offsets_.at(v), dims_.at(v)}; }
  /// Basis index of |v^j>.
  Eigen::Index basis_index(Vertex v, Eigen::Index j) const {
    if (j < 0 || j >= dims_.at(v)) throw InvalidArgument("copy index out of range for vertex");
    return offsets_[v] + j;
  }

  std::vector<Subspace> subspaces() const {
    std::vector<Subspace> out;
    for (Vertex v = 0; v < dims_.size(); ++v) out.push_back(subspace(v));
    return out;
  }

  nlohmann::json to_json() const {
    return {{"vertex_dims", dims_}, {"offsets", offsets_}, {"total_dim", total_}};
  }

  static EnlargedSpace from_json(const nlohmann::json& j) {
    EnlargedSpace s(j.at("vertex_dims").get<std::vector<Eigen::Index>>());
    if (j.contains("offsets") && j.at("offsets").get<std::vector<Eigen::Index>>() != s.offsets()) {
      throw ParseError("layout offsets are inconsistent with vertex_dims", 1);
    }
    if (j.contains("total_dim") && j.at("total_dim").get<Eigen::Index>() != s.total_dim()) {
      throw ParseError("layout total_dim is inconsistent with vertex_dims", 1);
    }
    return s;
  }

 private:
  std::vector<Eigen::Index> dims_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index total_ = 0;
};

inline EnlargedSpace enlarge(const Digraph& g) {
  std::vector<Eigen::Index> dims;
  dims.reserve(g.size());
  for (Vertex v = 0; v < g.size(); ++v) dims.push_back(std::max<Eigen::Index>(static_cast<Eigen::Index>(g.indegree(v)), 1));
  return EnlargedSpace(std::move(dims));
}

/// Column scaling of the Fourier matrix. With `unnormalized` the entries are
/// exp(2 pi i j l / k); `unitary` divides by sqrt(k).
enum class FourierScaling { unnormalized, unitary };
/// Row attached to each Fourier column: all ones, or all 1/sqrt(dim).
enum class RowScaling { ones, normalized };

struct NonMoralizingOptions {
  // Defaults reproduce the reference limiting distributions on the
  // 7-vertex two-stationary-state example (0.6666 and 0.1190).
  FourierScaling fourier = FourierScaling::unnormalized;
  RowScaling row = RowScaling::ones;
};

inline CMatrix fourier_matrix(Eigen::Index k, FourierScaling scaling = FourierScaling::unitary) {
  if (k < 1) throw InvalidArgument("Fourier matrix size must be >= 1");
  CMatrix a(k, k);
  const double scale = scaling == FourierScaling::unitary ? 1.0 / std::sqrt(static_cast<double>(k)) : 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index l = 0; l < k; ++l) {
      // Reduce j*l mod k first so large k keeps full phase accuracy.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * l) % k) / static_cast<double>(k);
      a(j, l) = scale * Complex{std::cos(phase), std::sin(phase)};
    }
  }
  return a;
}

/// Tridiagonal d x d block with +i above and -i below the diagonal.
inline CMatrix rotating_block(Eigen::Index d) {
  if (d < 1) throw InvalidArgument("rotating block dimension must be >= 1");
  CMatrix h = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j + 1 < d; ++j) {
    h(j, j + 1) = kI;
    h(j + 1, j) = -kI;
  }
  return h;
}

class NonMoralizingGenerator {
 public:
  NonMoralizingGenerator(EnlargedSpace space, CMatrix l_tilde, CMatrix h_tilde, CMatrix h_rot, double omega)
      : space_(std::move(space)),
        l_tilde_(std::move(l_tilde)),
        h_tilde_(std::move(h_tilde)),
        h_rot_(std::move(h_rot)),
        omega_(omega) {}

  const EnlargedSpace& space() const { return space_; }
  const CMatrix& l_tilde() const { return l_tilde_; }
  const CMatrix& h_tilde() const { return h_tilde_; }
  const CMatrix& h_rot() const { return h_rot_; }
  double omega() const { return omega_; }

  /// The same dynamics as a generic generator: H = H~, H_loc = H~_rot, L = {L~}.
  QswGenerator generator() const {
    return QswGenerator(Model::nonmoralizing, h_tilde_, {l_tilde_}, omega_, h_rot_, space_.subspaces());
  }

 private:
  EnlargedSpace space_;
  CMatrix l_tilde_;
  CMatrix h_tilde_;
  CMatrix h_rot_;
  double omega_;
};

inline NonMoralizingGenerator build_nonmoralizing(const Digraph& g, double omega,
                                                  const NonMoralizingOptions& opts = {}) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw InvalidArgument("omega must lie in [0,1]");
  EnlargedSpace space = enlarge(g);
  const Eigen::Index total = space.total_dim();
  CMatrix l = CMatrix::Zero(total, total);
  for (Vertex w = 0; w < g.size(); ++w) {
    const auto& parents = g.predecessors(w);
    if (parents.empty()) continue;
    const auto k = static_cast<Eigen::Index>(parents.size());
    CMatrix a = fourier_matrix(k, opts.fourier);
    const Subspace target = space.subspace(w);
    for (Eigen::Index idx = 0; idx < k; ++idx) {
      const Vertex v = parents[static_cast<std::size_t>(idx)];
      const Subspace source = space.subspace(v);
      const double row = opts.row == RowScaling::normalized ? 1.0 / std::sqrt(static_cast<double>(source.dim)) : 1.0;
      const Complex c = *g.weight(v, w) * row;
      l.block(target.offset, source.offset, target.dim, source.dim) =
          (c * a.col(idx)) * Eigen::RowVectorXcd::Ones(source.dim);
    }
  }

  CMatrix h_tilde = CMatrix::Zero(total, total);
  for (Eigen::Index i = 0; i < total; ++i) {
    for (Eigen::Index j = 0; j < total; ++j) {
      if (l(i, j) != Complex{0.0, 0.0} || l(j, i) != Complex{0.0, 0.0}) h_tilde(i, j) = 1.0;
    }
  }

  CMatrix h_rot = CMatrix::Zero(total, total);
  for (Vertex v = 0; v < g.size(); ++v) {
    const Subspace s = space.subspace(v);
    h_rot.block(s.offset, s.offset, s.dim, s.dim) = rotating_block(s.dim);
  }
  return NonMoralizingGenerator(std::move(space), std::move(l), std::move(h_tilde), std::move(h_rot), omega);
}

inline Superoperator assemble_nonmoralizing_superoperator(const NonMoralizingGenerator& gen) {
  return assemble_superoperator(gen.generator());
}

/// Projectors onto the vertex subspaces.
class VertexMeasurement {
 public:
  explicit VertexMeasurement(std::vector<Subspace> subspaces) : subspaces_(std::move(subspaces)) {
    for (const Subspace& s : subspaces_) total_ = std::max(total_, s.offset + s.dim);
  }
  explicit VertexMeasurement(const EnlargedSpace& space) : VertexMeasurement(space.subspaces()) {}

  std::size_t outcome_count() const { return subspaces_.size(); }

  CMatrix projector(Vertex v) const {
    const Subspace s = subspaces_.at(v);
    CMatrix p = CMatrix::Zero(total_, total_);
    p.block(s.offset, s.offset, s.dim, s.dim).setIdentity();
    return p;
  }

  /// Pi(v) = tr(P_v rho).
  std::vector<double> distribution(const CMatrix& rho) const {
    if (rho.rows() != total_ || rho.cols() != total_) {
      throw DimensionMismatch("state dimension " + std::to_string(rho.rows()) + " differs from measurement dimension " +
                              std::to_string(total_));
    }
    std::vector<double> p;
    p.reserve(subspaces_.size());
    for (const Subspace& s : subspaces_) p.push_back(rho.diagonal().segment(s.offset, s.dim).real().sum());
    return p;
  }

 private:
  std::vector<Subspace> subspaces_;
  Eigen::Index total_ = 0;
};

inline std::vector<double> canonical_measurement(const EnlargedSpace& space, const CMatrix& rho) {
  return VertexMeasurement(space).distribution(rho);
}

inline std::vector<double> canonical_measurement(const EnlargedSpace& space, const DensityMatrix& rho) {
  return canonical_measurement(space, rho.matrix());
}

}  // namespace qswlab
