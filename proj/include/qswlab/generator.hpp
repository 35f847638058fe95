#pragma once

#include "qswlab/graph.hpp"
#include "qswlab/state.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qswlab {

enum class Model { local, global, nonmoralizing };

inline std::string to_string(Model m) {
  switch (m) {
    case Model::local: return "local";
    case Model::global: return "global";
    case Model::nonmoralizing: return "nonmoralizing";
  }
  return "unknown";
}

inline Model parse_model(const std::string& s) {
  if (s == "local") return Model::local;
  if (s == "global") return Model::global;
  if (s == "nonmoralizing") return Model::nonmoralizing;
  throw InvalidArgument("unknown model '" + s + "' (expected local, global or nonmoralizing)");
}

/// Contiguous block of basis indices attached to one vertex.
struct Subspace {
  Eigen::Index offset = 0;
  Eigen::Index dim = 1;
};

/// Hamiltonian selection for the local and global models.
class HamiltonianChoice {
 public:
  enum class Kind { underlying_adjacency, zero, custom };

  static HamiltonianChoice underlying_adjacency() { return HamiltonianChoice(Kind::underlying_adjacency, {}); }
  static HamiltonianChoice zero() { return HamiltonianChoice(Kind::zero, {}); }
  static HamiltonianChoice custom(CMatrix h) { return HamiltonianChoice(Kind::custom, std::move(h)); }

  Kind kind() const { return kind_; }

  CMatrix resolve(const Digraph& g) const {
    const auto n = static_cast<Eigen::Index>(g.size());
    switch (kind_) {
      case Kind::underlying_adjacency: return g.underlying_adjacency().cast<Complex>();
      case Kind::zero: return CMatrix::Zero(n, n);
      case Kind::custom:
        if (custom_.rows() != n || custom_.cols() != n) {
          throw DimensionMismatch("custom Hamiltonian must be " + std::to_string(n) + "x" + std::to_string(n));
        }
        return custom_;
    }
    return CMatrix::Zero(n, n);
  }

 private:
  HamiltonianChoice(Kind k, CMatrix h) : kind_(k), custom_(std::move(h)) {}
  Kind kind_;
  CMatrix custom_;
};

/// Time-independent generator of
///   drho/dt = -i(1-w)[H, rho] - i w [H_loc, rho] + w sum_L (L rho L^+ - {L^+ L, rho}/2).
/// H_loc is zero except in the non-moralizing model.
class QswGenerator {
 public:
  static constexpr double kHermitianTol = 1e-12;

  QswGenerator(Model model, CMatrix hamiltonian, std::vector<CMatrix> lindblads, double omega,
               CMatrix local_hamiltonian = {}, std::vector<Subspace> vertex_subspaces = {})
      : model_(model),
        hamiltonian_(std::move(hamiltonian)),
        local_hamiltonian_(std::move(local_hamiltonian)),
        lindblads_(std::move(lindblads)),
        omega_(omega),
        subspaces_(std::move(vertex_subspaces)) {
    require_square(hamiltonian_, "Hamiltonian");
    const Eigen::Index d = hamiltonian_.rows();
    if (d == 0) throw InvalidArgument("generator dimension must be positive");
    if (!(omega_ >= 0.0 && omega_ <= 1.0)) throw InvalidArgument("omega must lie in [0,1]");
    if (hermiticity_defect(hamiltonian_) > kHermitianTol) throw NonHermitian("Hamiltonian is not Hermitian");
    if (local_hamiltonian_.size() == 0) local_hamiltonian_ = CMatrix::Zero(d, d);
    if (local_hamiltonian_.rows() != d || local_hamiltonian_.cols() != d) {
      throw DimensionMismatch("local Hamiltonian dimension differs from the Hamiltonian");
    }
    if (hermiticity_defect(local_hamiltonian_) > kHermitianTol) {
      throw NonHermitian("local Hamiltonian is not Hermitian");
    }
    for (const CMatrix& l : lindblads_) {
      if (l.rows() != d || l.cols() != d) throw DimensionMismatch("Lindblad operator dimension mismatch");
    }
    if (model_ == Model::local) {
      for (const CMatrix& l : lindblads_) {
        if ((l.array() != Complex{0.0, 0.0}).count() != 1) {
          throw InvalidArgument("local-model Lindblad operators must have exactly one nonzero entry");
        }
      }
    }
    if (model_ == Model::global && lindblads_.size() != 1) {
      throw InvalidArgument("global model needs exactly one Lindblad operator");
    }
    has_local_ = local_hamiltonian_.cwiseAbs().maxCoeff() > 0.0;
    if (subspaces_.empty()) {
      for (Eigen::Index i = 0; i < d; ++i) subspaces_.push_back({i, 1});
    }
  }

  Model model() const { return model_; }
  Eigen::Index dim() const { return hamiltonian_.rows(); }
  double omega() const { return omega_; }
  const CMatrix& hamiltonian() const { return hamiltonian_; }
  const CMatrix& local_hamiltonian() const { return local_hamiltonian_; }
  bool has_local_hamiltonian() const { return has_local_; }
  const std::vector<CMatrix>& lindblads() const { return lindblads_; }
  const std::vector<Subspace>& vertex_subspaces() const { return subspaces_; }

  /// Non-fatal remarks gathered during construction (e.g. disconnected input).
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  void add_diagnostic(std::string d) { diagnostics_.push_back(std::move(d)); }

  /// Sum of L^+ L over all Lindblad operators.
  CMatrix lindblad_gram_sum() const {
    CMatrix k = CMatrix::Zero(dim(), dim());
    for (const CMatrix& l : lindblads_) k.noalias() += l.adjoint() * l;
    return k;
  }

 private:
  Model model_;
  CMatrix hamiltonian_;
  CMatrix local_hamiltonian_;
  std::vector<CMatrix> lindblads_;
  double omega_;
  std::vector<Subspace> subspaces_;
  bool has_local_ = false;
  std::vector<std::string> diagnostics_;
};

namespace detail {
inline void note_connectivity(const Digraph& g, QswGenerator& gen) {
  if (!is_weakly_connected(g)) gen.add_diagnostic("input graph is not weakly connected");
}
}  // namespace detail

/// One Lindblad operator c_(v,w)|w><v| per arc.
inline QswGenerator build_local(const Digraph& g, double omega,
                                const HamiltonianChoice& h = HamiltonianChoice::underlying_adjacency()) {
  const auto n = static_cast<Eigen::Index>(g.size());
  std::vector<CMatrix> lindblads;
  lindblads.reserve(g.arc_count());
  for (const Arc& a : g.arcs()) {
    CMatrix l = CMatrix::Zero(n, n);
    l(static_cast<Eigen::Index>(a.to), static_cast<Eigen::Index>(a.from)) = a.weight;
    lindblads.push_back(std::move(l));
  }
  QswGenerator gen(Model::local, h.resolve(g), std::move(lindblads), omega);
  detail::note_connectivity(g, gen);
  return gen;
}

/// Single Lindblad operator equal to the digraph adjacency matrix.
inline QswGenerator build_global(const Digraph& g, double omega,
                                 const HamiltonianChoice& h = HamiltonianChoice::underlying_adjacency()) {
  QswGenerator gen(Model::global, h.resolve(g), {g.adjacency_matrix()}, omega);
  detail::note_connectivity(g, gen);
  return gen;
}

/// M[rho] evaluated directly, without vectorization.
inline CMatrix apply_generator(const QswGenerator& gen, const CMatrix& rho) {
  if (rho.rows() != gen.dim() || rho.cols() != gen.dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(rho.rows()) + " differs from generator dimension " +
                            std::to_string(gen.dim()));
  }
  const double w = gen.omega();
  const CMatrix& h = gen.hamiltonian();
  CMatrix out = -kI * (1.0 - w) * (h * rho - rho * h);
  if (gen.has_local_hamiltonian()) {
    const CMatrix& hl = gen.local_hamiltonian();
    out += -kI * w * (hl * rho - rho * hl);
  }
  if (w != 0.0) {
    for (const CMatrix& l : gen.lindblads()) {
      CMatrix ll = l.adjoint() * l;
      out += w * (l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll));
    }
  }
  return out;
}

inline CMatrix apply_generator(const QswGenerator& gen, const DensityMatrix& rho) {
  return apply_generator(gen, rho.matrix());
}

}  // namespace qswlab
