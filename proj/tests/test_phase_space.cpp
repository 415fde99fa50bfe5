#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "qgabor/phase_space.hpp"

using namespace qgabor;
using namespace qgabor::test;

TEST_CASE("unit roots are exact on the axes") {
  CHECK(unit_root(0, 12) == cplx(1.0, 0.0));
  CHECK(unit_root(3, 12) == cplx(0.0, 1.0));
  CHECK(unit_root(6, 12) == cplx(-1.0, 0.0));
  CHECK(unit_root(-3, 12) == cplx(0.0, -1.0));
  CHECK(std::abs(unit_root(5, 7) - std::polar(1.0, kTwoPi * 5 / 7)) < 1e-15);
}

TEST_CASE("residue helpers") {
  CHECK(mod(-1, 5) == 4);
  CHECK(mod(12, 5) == 2);
  CHECK(centered(3, 6) == 3);
  CHECK(centered(4, 6) == -2);
  const FinitePoint p(6, 5, -1);
  CHECK(p.x == 5);
  CHECK(p.w == 5);
  CHECK((p + FinitePoint(6, 2, 3)) == FinitePoint(6, 1, 2));
  CHECK((-p) == FinitePoint(6, 1, 1));
}

TEST_CASE("shift matrices match the entrywise definition") {
  for (int L : {3, 6}) {
    for (int x = 0; x < L; ++x) {
      for (int w = 0; w < L; ++w) {
        const CMatrix M = tf_shift_matrix(FinitePoint(L, x, w));
        CHECK((M - shift_matrix_oracle(L, x, w)).norm() < 1e-14);
        const CVector f = random_vector(L);
        CHECK((tf_shift(f, FinitePoint(L, x, w)) - M * f).norm() < 1e-13);
      }
    }
  }
}

TEST_CASE("operator product multiplier and commutator phase") {
  const int L = 6;
  for (int hx = 0; hx < L; ++hx) {
    for (int hw = 0; hw < L; ++hw) {
      const FinitePoint h(L, hx, hw);
      for (int kx = 0; kx < L; kx += 2) {
        for (int kw = 1; kw < L; kw += 2) {
          const FinitePoint k(L, kx, kw);
          const CMatrix Ph = shift_matrix_oracle(L, hx, hw);
          const CMatrix Pk = shift_matrix_oracle(L, kx, kw);
          const CMatrix Phk = shift_matrix_oracle(L, (hx + kx) % L, (hw + kw) % L);
          CHECK((Ph * Pk - multiplier(h, k) * Phk).norm() < 1e-13);
          CHECK((Ph * Pk - commutator_phase(h, k).value() * Pk * Ph).norm() < 1e-13);
          CHECK(std::abs(multiplier(h, k) - std::conj(cocycle(k, h).value())) < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("continuum cocycle") {
  const RPoint h{0.3, -1.25};
  const RPoint k{2.0, 0.7};
  CHECK(std::abs(cocycle(h, k).value() - std::polar(1.0, kTwoPi * h.w * k.x)) < 1e-14);
  const cplx eps = commutator_phase(h, k).value();
  CHECK(std::abs(eps - cocycle(h, k).value() * std::conj(cocycle(k, h).value())) < 1e-14);
  CHECK_THROWS_AS(UnitPhase(cplx(2.0, 0.0)), Error);
}

TEST_CASE("finite adjoint lattice is the commutant of the lattice") {
  for (int L : {4, 6, 12}) {
    for (int a : divisors(L)) {
      for (int b : divisors(L)) {
        const FiniteLattice D = make_finite_lattice(L, a, b);
        const FiniteLattice Dadj = adjoint_lattice(D);
        for (int x = 0; x < L; ++x) {
          for (int w = 0; w < L; ++w) {
            const FinitePoint z(L, x, w);
            bool commutes = true;
            for (int i = 0; i < D.count_x(); ++i) {
              for (int j = 0; j < D.count_w(); ++j) {
                const cplx e = commutator_phase(z, D.point(i, j)).value();
                commutes = commutes && std::abs(e - 1.0) < 1e-12;
              }
            }
            CHECK(commutes == Dadj.contains(z));
          }
        }
        CHECK(lattice_volume(D) * lattice_volume(Dadj) == doctest::Approx(1.0));
        CHECK(adjoint_lattice(Dadj) == D);
      }
    }
  }
  CHECK_THROWS_AS(make_finite_lattice(12, 5, 2), Error);
}

TEST_CASE("continuum adjoint lattices") {
  const ContinuumLattice D = make_continuum_lattice(0.8, 0.5);
  const ContinuumLattice Dadj = adjoint_lattice(D);
  CHECK(Dadj.a == doctest::Approx(2.0));
  CHECK(Dadj.b == doctest::Approx(1.25));
  CHECK(lattice_volume(D) * lattice_volume(Dadj) == doctest::Approx(1.0));
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      const cplx e = commutator_phase(D.point(1, 1), Dadj.point(i, j)).value();
      CHECK(std::abs(e - 1.0) < 1e-12);
    }
  }

  RMatrix M(2, 2);
  M << 0.9, 0.3, -0.2, 1.1;
  const GeneralLattice G(M);
  const GeneralLattice Gadj = adjoint_lattice(G);
  CHECK(lattice_volume(G) * lattice_volume(Gadj) == doctest::Approx(1.0));
  const RMatrix J = (RMatrix(2, 2) << 0, 1, -1, 0).finished();
  const RMatrix pairing = M.transpose() * J * Gadj.generator();
  for (Eigen::Index r = 0; r < 2; ++r) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      CHECK(std::abs(pairing(r, c) - std::round(pairing(r, c))) < 1e-12);
    }
  }
}

TEST_CASE("points within a radius match enumeration of an index box") {
  RMatrix M(2, 2);
  M << 0.7, 0.2, 0.1, 0.9;
  const GeneralLattice G(M);
  const double R = 3.3;
  std::size_t brute = 0;
  for (int i = -30; i <= 30; ++i) {
    for (int j = -30; j <= 30; ++j) {
      if ((M * Eigen::Vector2d(i, j)).norm() <= R) ++brute;
    }
  }
  const auto pts = G.points_within(R);
  CHECK(pts.size() == brute);
  for (const auto& p : pts) CHECK(p.norm() <= R + 1e-12);

  const ContinuumLattice D = make_continuum_lattice(0.8, 1.3);
  std::size_t brute2 = 0;
  for (int i = -30; i <= 30; ++i) {
    for (int j = -30; j <= 30; ++j) {
      if (std::hypot(0.8 * i, 1.3 * j) <= 5.0) ++brute2;
    }
  }
  CHECK(indices_within(D, 5.0).size() == brute2);

  const GeneralLattice S = GeneralLattice::separable(0.5, 0.25, 2);
  CHECK(S.dim() == 2);
  CHECK(lattice_volume(S) == doctest::Approx(0.5 * 0.5 * 0.25 * 0.25));
  CHECK(S.cell_diameter() == doctest::Approx(std::sqrt(2 * 0.25 + 2 * 0.0625)));
}

TEST_CASE("all_indices enumerates a finite lattice once") {
  const FiniteLattice D = make_finite_lattice(12, 3, 4);
  const auto idx = all_indices(D);
  CHECK(idx.size() == static_cast<std::size_t>(D.size()));
  std::set<LatticeIndex> seen(idx.begin(), idx.end());
  CHECK(seen.size() == idx.size());
}

TEST_CASE("continuum grid layout") {
  const ContinuumModel m = default_continuum_model();
  CHECK(m.size() == 256);
  CHECK(m.time(128) == 0.0);
  CHECK(m.time(0) == doctest::Approx(-8.0));
  CHECK(m.freq_step() == doctest::Approx(1.0 / 16.0));
  CHECK(m.freq(128) == 0.0);
  CHECK_THROWS_AS(make_continuum_model(1, 1.0, 0.3), Error);
  CHECK_THROWS_AS(make_finite_model(1), Error);
}

namespace {

GridFunction gaussian(const ContinuumModel& m, double x0 = 0.0, double w0 = 0.0) {
  CVector s(m.size());
  for (int i = 0; i < m.size(); ++i) {
    const double t = m.time(i);
    s(i) = std::exp(-kPi * (t - x0) * (t - x0)) * expi2pi(w0 * t);
  }
  return {m, s};
}

}  // namespace

TEST_CASE("grid shifts of sampled functions") {
  const ContinuumModel m = default_continuum_model();
  const GridFunction g = gaussian(m);
  CHECK(g.norm() * g.norm() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  std::int64_t steps = 0;
  CHECK(grid_commensurate(m, 0.5, &steps));
  CHECK(steps == 8);
  CHECK_FALSE(grid_commensurate(m, 0.8));

  const GridFunction exact = gaussian(m, 0.5, -1.25);
  CHECK((tf_shift(g, RPoint{0.5, -1.25}).samples - exact.samples).norm() < 1e-12);
  CHECK((fractional_tf_shift(g, RPoint{0.5, -1.25}).samples - exact.samples).norm() < 1e-12);
  CHECK_THROWS_AS(tf_shift(g, RPoint{0.8, 0.0}), Error);

  // non-grid translation, spectral
  const GridFunction frac = fractional_tf_shift(g, RPoint{0.8, 0.3});
  CHECK((frac.samples - gaussian(m, 0.8, 0.3).samples).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((translated_samples(g, -0.37) - gaussian(m, -0.37).samples).lpNorm<Eigen::Infinity>() <
        1e-12);
}
