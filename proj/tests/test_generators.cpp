#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace qswlab;
using oracle::distance_to_spectrum;
using oracle::multiset_distance;
using oracle::random_state;

namespace {

std::vector<Complex> dense_spectrum(const Superoperator& f) {
  Eigen::ComplexEigenSolver<CMatrix> es(f.matrix(), false);
  const CVector& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Kronecker-product oracle for the column-stacked generator.
CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

CMatrix kron_superoperator(const QswGenerator& gen) {
  const Eigen::Index d = gen.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const double w = gen.omega();
  CMatrix heff = (1 - w) * gen.hamiltonian() + w * gen.local_hamiltonian();
  CMatrix f = -kI * (kron(id, heff) - kron(heff.transpose(), id));
  for (const CMatrix& l : gen.lindblads()) {
    CMatrix ll = l.adjoint() * l;
    f += w * (kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id));
  }
  return f;
}

QswGenerator amplitude_damping() {
  CMatrix l = CMatrix::Zero(2, 2);
  l(1, 0) = 1.0;
  return QswGenerator(Model::local, CMatrix::Zero(2, 2), {l}, 1.0);
}

Walk random_walk(std::mt19937_64& rng, Model model) {
  std::uniform_int_distribution<int> nd(2, 5);
  std::uniform_real_distribution<double> wd(0.0, 1.0);
  const std::size_t n = static_cast<std::size_t>(nd(rng));
  Digraph g = sample_erdos_renyi(n, 0.5, true, rng());
  return build_walk(g, model, wd(rng));
}

}  // namespace

TEST(BuildLocal, SingleArc) {
  Digraph g = graphs::directed_path(2);
  QswGenerator gen = build_local(g, 0.5);
  ASSERT_EQ(gen.lindblads().size(), 1u);
  EXPECT_EQ(gen.lindblads()[0](1, 0), Complex(1.0, 0.0));
  EXPECT_EQ((gen.lindblads()[0].array() != Complex{0.0, 0.0}).count(), 1);
  CMatrix h(2, 2);
  h << 0, 1, 1, 0;
  EXPECT_EQ(gen.hamiltonian(), h);
}

TEST(BuildLocal, CountsAndHamiltonian) {
  Digraph c = graphs::circulant_chord_graph(2);
  EXPECT_EQ(build_local(c, 0.3).lindblads().size(), c.arc_count());
  QswGenerator bp = build_local(graphs::bidirected_path(2), 0.3);
  EXPECT_EQ(bp.lindblads().size(), 4u);
  EXPECT_EQ(bp.hamiltonian().real(), graphs::path(5).underlying_adjacency());
}

TEST(BuildLocal, ValidationAndDiagnostics) {
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = kI;
  EXPECT_THROW(build_local(graphs::directed_path(2), 0.5, HamiltonianChoice::custom(bad)), NonHermitian);
  EXPECT_THROW(build_local(graphs::directed_path(2), 1.5), InvalidArgument);
  EXPECT_THROW(build_local(graphs::directed_path(2), 0.5, HamiltonianChoice::custom(CMatrix::Zero(3, 3))),
               DimensionMismatch);
  EXPECT_FALSE(build_local(Digraph(2), 0.5).diagnostics().empty());
  EXPECT_TRUE(build_local(graphs::directed_path(2), 0.5).diagnostics().empty());
  EXPECT_EQ(build_local(graphs::directed_path(3), 0.5, HamiltonianChoice::zero()).hamiltonian(), CMatrix::Zero(3, 3));
}

TEST(BuildGlobal, LindbladIsAdjacency) {
  Digraph u = graphs::cycle(5);
  QswGenerator g = build_global(u, 0.4);
  ASSERT_EQ(g.lindblads().size(), 1u);
  EXPECT_EQ(g.lindblads()[0], g.hamiltonian());

  QswGenerator f5 = build_global(graphs::fig5_graph(), 1.0);
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(2, 0) = expected(2, 1) = 1.0;
  EXPECT_EQ(f5.lindblads()[0], expected);
  EXPECT_EQ(f5.hamiltonian(), expected + expected.transpose());

  QswGenerator empty = build_global(Digraph(3), 0.5);
  EXPECT_EQ(empty.lindblads()[0], CMatrix::Zero(3, 3));
}

TEST(Superoperator, EmptyGeneratorIsZero) {
  QswGenerator gen(Model::global, CMatrix::Zero(2, 2), {CMatrix::Zero(2, 2)}, 0.5);
  EXPECT_EQ(assemble_superoperator(gen).matrix(), CMatrix::Zero(4, 4));
}

TEST(Superoperator, DiagonalHamiltonianSpectrum) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  Superoperator f = assemble_superoperator(QswGenerator(Model::local, h, {}, 0.0));
  std::vector<Complex> expect{{0, 0}, {0, 0}, {0, 2}, {0, -2}};
  EXPECT_LT(multiset_distance(dense_spectrum(f), expect), 1e-12);
}

TEST(Superoperator, AmplitudeDampingByHand) {
  Superoperator f = assemble_superoperator(amplitude_damping());
  // Hand-assembled 4x4 matrix on vecc order (00, 10, 01, 11).
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = -1.0;
  expected(3, 0) = 1.0;
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.5;
  EXPECT_LT((f.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
  std::vector<Complex> expect{{0, 0}, {-0.5, 0}, {-0.5, 0}, {-1, 0}};
  EXPECT_LT(multiset_distance(dense_spectrum(f), expect), 1e-12);
  CVector null = f.matrix().fullPivLu().kernel().col(0);
  CMatrix rho = unvecc(null / null(3), 2);
  CMatrix target = CMatrix::Zero(2, 2);
  target(1, 1) = 1.0;
  EXPECT_LT((rho - target).norm(), 1e-12);
}

TEST(Superoperator, MatchesKroneckerOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    for (Model m : {Model::local, Model::global, Model::nonmoralizing}) {
      Walk w = random_walk(rng, m);
      EXPECT_LT((w.superoperator.matrix() - kron_superoperator(w.generator)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Superoperator, ComplexWeightsUseConjugateTransposeForm) {
  Digraph g(3, std::vector<Arc>{{0, 1, Complex{0.3, 0.8}}, {1, 2, Complex{-1.0, 0.5}}, {2, 0, Complex{0.0, 2.0}}});
  for (Model m : {Model::local, Model::global}) {
    Walk w = build_walk(g, m, 0.6);
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_state(3, rng);
    EXPECT_LT((w.superoperator.apply(rho.matrix()) - apply_generator(w.generator, rho)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Superoperator, ApplyAgreesWithDirectGenerator) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Walk w = random_walk(rng, static_cast<Model>(i % 3));
    DensityMatrix rho = random_state(w.generator.dim(), rng);
    const CMatrix direct = apply_generator(w.generator, rho);
    EXPECT_LT((w.superoperator.apply(rho.matrix()) - direct).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(std::abs(direct.trace()), 1e-10);
  }
}

TEST(Superoperator, TracePreservingAndStable) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 30; ++i) {
    Walk w = random_walk(rng, static_cast<Model>(i % 3));
    EXPECT_LE(w.superoperator.trace_preservation_residual(), 1e-10);
    const double norm = w.superoperator.matrix().norm();
    for (const Complex& z : dense_spectrum(w.superoperator)) EXPECT_LE(z.real(), 1e-8 * std::max(norm, 1.0));
  }
}

TEST(Superoperator, OmegaZeroIsCommutator) {
  Digraph g = graphs::fig7_graph();
  Walk w = build_walk(g, Model::local, 0.0);
  std::mt19937_64 rng(2);
  DensityMatrix rho = random_state(7, rng);
  const CMatrix& h = w.generator.hamiltonian();
  CMatrix expected = -kI * (h * rho.matrix() - rho.matrix() * h);
  EXPECT_LT((w.superoperator.apply(rho.matrix()) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyGenerator, AmplitudeDampingAndFig5StationaryState) {
  CMatrix out = apply_generator(amplitude_damping(), DensityMatrix::basis_state(2, 0));
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(0, 0) = -1.0;
  expected(1, 1) = 1.0;
  EXPECT_LT((out - expected).norm(), 1e-15);

  QswGenerator f5 = build_global(graphs::fig5_graph(), 1.0, HamiltonianChoice::zero());
  CVector minus(3);
  minus << 1, -1, 0;
  CMatrix rho = 0.25 * minus * minus.adjoint();
  rho(2, 2) = 0.5;
  EXPECT_LT(apply_generator(f5, DensityMatrix(rho)).norm(), 1e-12);
  EXPECT_THROW(apply_generator(f5, DensityMatrix::maximally_mixed(2)), DimensionMismatch);
}

TEST(LocalReachability, StronglyConnectedKrylovSpanIsFull) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SampledGraph s = sample_filtered(6, 0.35, true, SurveyFilter::strongly_connected, 77, seed);
    QswGenerator gen = build_local(s.graph, 1.0);
    const Eigen::Index n = gen.dim();
    // Span of L_k ... L_1 |0> over all words, grown breadth-first.
    std::vector<CVector> span{CVector::Unit(n, 0)};
    for (int iter = 0; iter < n; ++iter) {
      std::vector<CVector> next = span;
      for (const CVector& v : span)
        for (const CMatrix& l : gen.lindblads()) next.push_back(l * v);
      span = next;
      CMatrix m(n, static_cast<Eigen::Index>(span.size()));
      for (std::size_t i = 0; i < span.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = span[i];
      Eigen::FullPivLU<CMatrix> lu(m);
      if (lu.rank() == n) break;
      std::vector<CVector> basis;
      CMatrix img = lu.image(m);
      for (Eigen::Index c = 0; c < img.cols(); ++c) basis.push_back(img.col(c));
      span = basis;
    }
    CMatrix m(n, static_cast<Eigen::Index>(span.size()));
    for (std::size_t i = 0; i < span.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = span[i];
    EXPECT_EQ(Eigen::FullPivLU<CMatrix>(m).rank(), n);
  }
}

TEST(DensityMatrix, Validation) {
  CMatrix m = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, InvalidState);
  m *= 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, InvalidState);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, InvalidState);
  EXPECT_NO_THROW(DensityMatrix::pure(CVector::Ones(3)));
  EXPECT_THROW(DensityMatrix::basis_state(2, 2), InvalidArgument);
}

// ---------------------------------------------------------------------------

TEST(Enlarge, Layouts) {
  EnlargedSpace f6 = enlarge(graphs::fig6_graph());
  EXPECT_EQ(f6.vertex_dims(), (std::vector<Eigen::Index>{5, 1, 1, 1, 2, 2}));
  EXPECT_EQ(f6.total_dim(), 12);
  EXPECT_EQ(f6.offsets(), (std::vector<Eigen::Index>{0, 5, 6, 7, 8, 10}));
  EXPECT_EQ(enlarge(graphs::directed_path(2)).total_dim(), 2);
  EXPECT_EQ(enlarge(graphs::fig5_graph()).vertex_dims(), (std::vector<Eigen::Index>{1, 1, 2}));
  EXPECT_EQ(f6.basis_index(4, 1), 9);
  EXPECT_THROW(f6.basis_index(1, 1), InvalidArgument);
}

TEST(Enlarge, JsonRoundTrip) {
  EnlargedSpace s = enlarge(graphs::fig7_graph());
  EnlargedSpace back = EnlargedSpace::from_json(s.to_json());
  EXPECT_EQ(back.offsets(), s.offsets());
  nlohmann::json bad = s.to_json();
  bad["total_dim"] = 3;
  EXPECT_THROW(EnlargedSpace::from_json(bad), ParseError);
}

TEST(Fourier, UnitaryColumnsAreOrthonormal) {
  for (Eigen::Index k = 1; k <= 16; ++k) {
    CMatrix a = fourier_matrix(k, FourierScaling::unitary);
    EXPECT_LT((a.adjoint() * a - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-12) << k;
    CMatrix u = fourier_matrix(k, FourierScaling::unnormalized);
    EXPECT_LT((u.adjoint() * u - static_cast<double>(k) * CMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(RotatingBlock, Spectra) {
  EXPECT_EQ(rotating_block(1), CMatrix::Zero(1, 1));
  Eigen::SelfAdjointEigenSolver<CMatrix> e2(rotating_block(2));
  EXPECT_NEAR(e2.eigenvalues()(0), -1.0, 1e-14);
  EXPECT_NEAR(e2.eigenvalues()(1), 1.0, 1e-14);
  CMatrix b5 = rotating_block(5);
  EXPECT_LT(hermiticity_defect(b5), 1e-15);
  Eigen::SelfAdjointEigenSolver<CMatrix> e5(b5);
  RVector ev = e5.eigenvalues();
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_NEAR(ev(i), -ev(4 - i), 1e-12);
  EXPECT_NEAR(ev(4), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(ev(0), -std::sqrt(3.0), 1e-12);
}

TEST(NonMoralizing, DirectedPathHasTrivialLtilde) {
  NonMoralizingGenerator nm = build_nonmoralizing(graphs::directed_path(2), 1.0);
  CMatrix expected(2, 2);
  expected << 0, 0, 1, 0;
  EXPECT_EQ(nm.l_tilde(), expected);
  EXPECT_EQ(nm.h_rot(), CMatrix::Zero(2, 2));
}

TEST(NonMoralizing, Fig5ColumnsAreOrthogonalAndCrossBlockVanishes) {
  for (auto scaling : {FourierScaling::unitary, FourierScaling::unnormalized}) {
    NonMoralizingGenerator nm = build_nonmoralizing(graphs::fig5_graph(), 1.0, {scaling, RowScaling::ones});
    const CMatrix& l = nm.l_tilde();
    CVector c1 = l.block(2, 0, 2, 1), c2 = l.block(2, 1, 2, 1);
    EXPECT_LT(std::abs(c1.dot(c2)), 1e-12);
    if (scaling == FourierScaling::unitary) {
      EXPECT_NEAR(c1.norm(), 1.0, 1e-12);
      EXPECT_NEAR(c2.norm(), 1.0, 1e-12);
    }
    EXPECT_LT(std::abs((l.adjoint() * l)(0, 1)), 1e-12);
  }
}

TEST(NonMoralizing, StructuralInvariantsOnRandomDigraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Digraph g = sample_erdos_renyi(2 + seed % 7, 0.35, true, derive_seed(9, seed));
    NonMoralizingGenerator nm = build_nonmoralizing(g, 0.7);
    const EnlargedSpace& s = nm.space();
    const CMatrix& l = nm.l_tilde();
    CMatrix gram = l.adjoint() * l;
    for (Vertex w = 0; w < g.size(); ++w) {
      for (Vertex u : g.predecessors(w)) {
        for (Vertex u2 : g.predecessors(w)) {
          if (u == u2) continue;
          Subspace a = s.subspace(u), b = s.subspace(u2);
          EXPECT_LT(gram.block(a.offset, b.offset, a.dim, b.dim).cwiseAbs().maxCoeff(), 1e-12);
        }
      }
    }
    // H~ support equals the symmetrized support of L~ exactly.
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      for (Eigen::Index j = 0; j < l.cols(); ++j) {
        const bool support = l(i, j) != Complex{0.0, 0.0} || l(j, i) != Complex{0.0, 0.0};
        EXPECT_EQ(nm.h_tilde()(i, j), Complex(support ? 1.0 : 0.0, 0.0));
      }
    }
    // H_rot is block diagonal.
    CMatrix off = nm.h_rot();
    for (Vertex v = 0; v < g.size(); ++v) {
      Subspace sv = s.subspace(v);
      off.block(sv.offset, sv.offset, sv.dim, sv.dim).setZero();
    }
    EXPECT_EQ(off.cwiseAbs().maxCoeff(), 0.0);
    for (Vertex v = 0; v < g.size(); ++v) EXPECT_EQ(s.vertex_dims()[v], std::max<Eigen::Index>(1, g.indegree(v)));
  }
}

TEST(NonMoralizing, Fig6SpectrumContainsPeriodicPair) {
  for (double w : {0.25, 0.5, 1.0}) {
    Superoperator f = assemble_nonmoralizing_superoperator(build_nonmoralizing(graphs::fig6_graph(), w));
    auto ev = dense_spectrum(f);
    const double target = 2.0 * std::sqrt(3.0) * w;
    EXPECT_LT(distance_to_spectrum(ev, {0.0, target}), 1e-6) << w;
    EXPECT_LT(distance_to_spectrum(ev, {0.0, -target}), 1e-6) << w;
    EXPECT_LT(distance_to_spectrum(ev, {0.0, 0.0}), 1e-6) << w;
  }
}

TEST(NonMoralizing, OmegaZeroIsHamiltonianOfHtilde) {
  NonMoralizingGenerator nm = build_nonmoralizing(graphs::fig7_graph(), 0.0);
  QswGenerator pure(Model::global, nm.h_tilde(), {CMatrix::Zero(nm.h_tilde().rows(), nm.h_tilde().cols())}, 0.0);
  EXPECT_LT((assemble_nonmoralizing_superoperator(nm).matrix() - assemble_superoperator(pure).matrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(NonMoralizing, DirectedPathRelaxesOntoTheSink) {
  NonMoralizingGenerator nm = build_nonmoralizing(graphs::directed_path(2), 1.0);
  SpectralReport r = spectrum(assemble_nonmoralizing_superoperator(nm), {1e-8, true, true});
  EXPECT_EQ(r.verdict, Verdict::relaxing);
  ASSERT_EQ(r.stationary_basis.size(), 1u);
  EXPECT_NEAR(r.stationary_basis[0].matrix()(1, 1).real(), 1.0, 1e-10);
}

TEST(VertexMeasurement, ProjectorsAndDistribution) {
  EnlargedSpace s = enlarge(graphs::fig6_graph());
  VertexMeasurement m(s);
  CMatrix sum = CMatrix::Zero(12, 12);
  for (Vertex v = 0; v < 6; ++v) {
    CMatrix p = m.projector(v);
    EXPECT_LT((p * p - p).norm(), 1e-15);
    for (Vertex u = 0; u < v; ++u) EXPECT_LT((p * m.projector(u)).norm(), 1e-15);
    sum += p;
  }
  EXPECT_EQ(sum, CMatrix::Identity(12, 12));

  auto d = canonical_measurement(s, DensityMatrix::basis_state(12, 9));
  EXPECT_EQ(d, (std::vector<double>{0, 0, 0, 0, 1, 0}));
  std::mt19937_64 rng(1);
  auto r = canonical_measurement(s, random_state(12, rng));
  double total = 0;
  for (double p : r) total += p;
  EXPECT_NEAR(total, 1.0, 1e-10);
  EXPECT_THROW(canonical_measurement(s, DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}
