#include <doctest.h>

#include "helpers.hpp"
#include "qgabor/theta.hpp"

using namespace qgabor;
using namespace qgabor::test;

namespace {

CMatrix decay_draw(int N) {
  RMatrix A(N, N), Q(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      A(i, j) = uniform(-1.0, 1.0);
      Q(i, j) = uniform(-1.0, 1.0);
    }
  }
  const RMatrix P = A * A.transpose() + 0.5 * RMatrix::Identity(N, N);
  return P.cast<cplx>() + cplx(0.0, 1.0) * (0.5 * (Q + Q.transpose())).cast<cplx>();
}

// <g_T, pi(x, w) g_T> on R^2 by a fine Riemann sum.
cplx ambiguity_quadrature_2d(const CMatrix& T, const Eigen::Vector4d& z) {
  const double h = 0.04;
  cplx acc = 0.0;
  for (double t1 = -6.0; t1 < 6.0; t1 += h) {
    for (double t2 = -6.0; t2 < 6.0; t2 += h) {
      const Eigen::Vector2cd t(t1, t2);
      const Eigen::Vector2cd s(t1 - z(0), t2 - z(1));
      const cplx g = std::exp(-(t.transpose() * T * t)(0, 0));
      const cplx gs = std::exp(-(s.transpose() * T * s)(0, 0)) * expi2pi(z(2) * t1 + z(3) * t2);
      acc += g * std::conj(gs);
    }
  }
  return acc * h * h;
}

double brute_tail(const RMatrix& G, const RMatrix& M, double R) {
  double acc = 0.0;
  for (int i = -40; i <= 40; ++i) {
    for (int j = -40; j <= 40; ++j) {
      const RVector h = M * Eigen::Vector2d(i, j);
      if (h.norm() > R) acc += std::exp(-kPi * h.dot(G * h));
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("Siegel matrix validation") {
  CHECK_NOTHROW(SiegelMatrix::scalar(kPi));
  CHECK_THROWS_AS(SiegelMatrix::scalar(-1.0), Error);
  CHECK_THROWS_AS(SiegelMatrix::scalar(cplx(1.0, 0.0), SiegelTag::siegel), Error);
  CMatrix nonsym(2, 2);
  nonsym << 1.0, 0.2, 0.3, 1.0;
  CHECK_THROWS_AS(SiegelMatrix(nonsym, SiegelTag::decay), Error);
  CHECK_THROWS_AS(SiegelMatrix(CMatrix::Identity(3, 3), SiegelTag::decay), Error);
  try {
    SiegelMatrix::scalar(cplx(0.0, 1.0));
    FAIL("expected invalid_argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("G_T structure") {
  const GTFactorization unit = gt_matrix(SiegelMatrix::scalar(cplx(0.0, 1.0), SiegelTag::siegel));
  CHECK((unit.G - RMatrix::Identity(2, 2)).norm() < 1e-15);

  for (int N : {1, 2}) {
    const RMatrix J = symplectic_form(N);
    CHECK((J.transpose() * J - RMatrix::Identity(2 * N, 2 * N)).norm() == 0.0);
    for (int k = 0; k < 20; ++k) {
      const GTFactorization gt = gt_matrix(SiegelMatrix(decay_draw(N), SiegelTag::decay));
      CHECK((gt.G - gt.G.transpose()).norm() < 1e-13);
      CHECK((gt.G - gt.S.transpose() * gt.S).norm() < 1e-12);
      CHECK((gt.G.transpose() * J * gt.G - J).norm() < 1e-11);
      Eigen::SelfAdjointEigenSolver<RMatrix> es(gt.G);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("Gaussian ambiguity in one dimension") {
  const ContinuumModel m = default_continuum_model();
  for (cplx t : {cplx(kPi), cplx(0.6, -0.9) * kPi, cplx(2.0, 1.0)}) {
    const SiegelMatrix T = SiegelMatrix::scalar(t);
    const GridFunction g = gaussian_window(T, m);
    for (const RPoint z : {RPoint{0.0, 0.0}, RPoint{0.8, -1.6}, RPoint{-2.4, 0.8}, RPoint{1.1, 2.3}}) {
      const cplx exact = gaussian_ambiguity(T, z);
      CHECK(std::abs(exact - stft_at(g, g, z)) < 1e-12);
      const cplx viaQ = gaussian_ambiguity(T, RPoint{}) *
                        std::exp(-(RVector(Eigen::Vector2d(z.x, z.w)).cast<cplx>().transpose() *
                                   ambiguity_exponent(T) *
                                   RVector(Eigen::Vector2d(z.x, z.w)).cast<cplx>())(0, 0));
      CHECK(std::abs(exact - viaQ) < 1e-13);
    }
  }
}

TEST_CASE("Gaussian ambiguity in two dimensions") {
  CMatrix T(2, 2);
  T << cplx(1.2, 0.3), cplx(0.2, -0.1), cplx(0.2, -0.1), cplx(0.9, 0.4);
  const SiegelMatrix S(T, SiegelTag::decay);
  const Eigen::Vector4d z(0.5, -0.3, 0.4, 0.7);
  CHECK(std::abs(gaussian_ambiguity(S, RVector(z)) - ambiguity_quadrature_2d(T, z)) < 1e-10);

  // diagonal T factors into one-dimensional pieces
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = cplx(1.1, 0.2);
  D(1, 1) = cplx(0.7, -0.5);
  const cplx prod = gaussian_ambiguity(SiegelMatrix::scalar(D(0, 0)), RPoint{z(0), z(2)}) *
                    gaussian_ambiguity(SiegelMatrix::scalar(D(1, 1)), RPoint{z(1), z(3)});
  CHECK(std::abs(gaussian_ambiguity(SiegelMatrix(D, SiegelTag::decay), RVector(z)) - prod) < 1e-14);
}

TEST_CASE("finite Gaussian is fixed by the DFT") {
  for (int L : {12, 25, 144}) {
    const FiniteSignal g = gaussian_window(SiegelMatrix::scalar(kPi), FiniteModel{L});
    CHECK((dft(g) - g).norm() < 1e-12 * g.norm());
  }
}

TEST_CASE("lattice tail bound dominates the true tail") {
  const RMatrix G = gt_matrix(SiegelMatrix::scalar(kPi)).G;
  for (double R : {1.0, 2.0, 4.0}) {
    const GeneralLattice D = GeneralLattice::separable(0.8, 0.8);
    const double bound = gaussian_lattice_tail(G, RVector::Zero(2), D, R);
    const double truth = brute_tail(G, D.generator(), R);
    CHECK(bound >= truth);
    if (truth > 1e-300) CHECK(bound < 1e6 * truth + 1e-300);
  }
  RMatrix M(2, 2);
  M << 0.7, 0.3, 0.0, 0.9;
  const RMatrix A = (RMatrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished();
  CHECK(gaussian_lattice_tail(A, RVector::Zero(2), GeneralLattice(M), 1.5) >=
        brute_tail(A, M, 1.5));
}

TEST_CASE("quantum theta coefficients") {
  const SiegelMatrix T = SiegelMatrix::scalar(cplx(1.0, 0.3) * kPi);
  const ContinuumLattice D = make_continuum_lattice(0.8, 0.8);
  const QuantumTheta qt = quantum_theta(T, D, 8.0);
  CHECK(qt.tail_bound < 1e-12);
  CHECK(std::get<ContinuumLattice>(qt.coeffs.lattice) == adjoint_lattice(D));
  const ContinuumLattice Dadj = adjoint_lattice(D);
  for (const auto& [k, v] : qt.coeffs.coeffs) {
    CHECK(std::abs(v - gaussian_ambiguity(T, Dadj.point(k.i, k.j)) / lattice_volume(D)) < 1e-15);
  }
  CHECK(quasi_periodicity_residual(qt.coeffs, T) < 1e-12);

  try {
    quantum_theta(T, D, 1.0);
    FAIL("expected insufficient_radius");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_radius);
  }
  const double R = default_truncation_radius(T, D);
  CHECK(std::fmod(R, 0.25) == doctest::Approx(0.0));
  CHECK_NOTHROW(quantum_theta(T, D, R));
  CHECK_THROWS_AS(quantum_theta(T, D, R - 0.25), Error);
}

TEST_CASE("finite theta element matches the Janssen coefficients") {
  const int L = 12;
  const FiniteLattice D = make_finite_lattice(L, 2, 3);
  const SiegelMatrix T = SiegelMatrix::scalar(kPi);
  const TwistedSequence th = finite_quantum_theta(T, D);
  const FiniteSignal g = gaussian_window(T, FiniteModel{L});
  const JanssenResult jr = janssen_operator(make_gabor_system(g, D), g);
  CHECK(max_coefficient_distance(th, jr.coeffs) < 1e-14);
}

TEST_CASE("theta series values") {
  // T = i with the Siegel tag gives G = I; the sum over Z^2 is theta_3(e^{-pi})^2.
  const SiegelMatrix T = SiegelMatrix::scalar(cplx(0.0, 1.0), SiegelTag::siegel);
  const double theta3 = std::pow(kPi, 0.25) / std::tgamma(0.75);
  const ThetaValue v = theta_series(T, GeneralLattice::separable(1.0, 1.0), RVector::Zero(2), 8.0);
  CHECK(std::abs(v.value - theta3 * theta3) < 1e-14);
  CHECK(v.tail_bound < 1e-12);
  CHECK_THROWS_AS(theta_series(T, GeneralLattice::separable(1.0, 1.0), RVector::Zero(2), 0.5),
                  Error);

  // brute force against a large box
  const SiegelMatrix U = SiegelMatrix::scalar(cplx(1.3, 0.4));
  const RMatrix G = gt_matrix(U).G;
  RVector x(2);
  x << 0.7, -1.1;
  cplx acc = 0.0;
  for (int i = -40; i <= 40; ++i) {
    for (int j = -40; j <= 40; ++j) {
      const Eigen::Vector2d h(0.8 * i, 0.8 * j);
      const double sigma = x(0) * h(1) - x(1) * h(0);
      acc += std::exp(cplx(-kPi * h.dot(G * h) - kPi * (G * x).dot(h), -kPi * sigma));
    }
  }
  const ThetaValue w = theta_series(U, GeneralLattice::separable(0.8, 0.8), x, 10.0);
  CHECK(std::abs(w.value - acc) < 1e-12 * std::abs(acc));
}

TEST_CASE("theta functional equation") {
  const SiegelMatrix T = SiegelMatrix::scalar(kPi);
  const GeneralLattice D = GeneralLattice::separable(0.8, 0.8);
  CHECK(functional_equation_residual(T, D, RVector::Zero(2), 8.0) < 1e-10);
  for (int k = 0; k < 5; ++k) {
    RVector x(2);
    x << uniform(-2.0, 2.0), uniform(-2.0, 2.0);
    CHECK(functional_equation_residual(T, D, x, 8.0) < 1e-10);
  }

  RMatrix M(2, 2);
  M << 0.9, 0.25, -0.1, 0.7;
  CHECK(functional_equation_residual(SiegelMatrix::scalar(cplx(1.1, 0.5)), GeneralLattice(M),
                                     RVector::Zero(2), 9.0) < 1e-10);

  CMatrix T2(2, 2);
  T2 << cplx(1.0, 0.2), cplx(0.1, 0.0), cplx(0.1, 0.0), cplx(1.2, -0.3);
  RVector x4(4);
  x4 << 0.3, -0.2, 0.1, 0.4;
  CHECK(functional_equation_residual(SiegelMatrix(T2, SiegelTag::decay),
                                     GeneralLattice::separable(1.0, 0.9, 2), x4, 7.0) < 1e-10);
}

TEST_CASE("invertibility probe picks a nearby finite system") {
  struct Pick {
    double ab;
    int L, a, b;
  };
  for (const Pick p : {Pick{0.49, 144, 8, 9}, Pick{0.64, 144, 8, 12}, Pick{0.81, 150, 5, 25},
                       Pick{1.0, 144, 12, 12}, Pick{1.21, 150, 6, 30}}) {
    const double s = std::sqrt(p.ab);
    const ProbeReport r = invertibility_probe(s, s, 144);
    CHECK(r.L == p.L);
    CHECK(std::min(r.a, r.b) == std::min(p.a, p.b));
    CHECK(std::max(r.a, r.b) == std::max(p.a, p.b));
    CHECK(r.invertible == (p.ab < 1.0));

    // frame bounds from a dense frame operator built here
    CVector g(r.L);
    for (int t = 0; t < r.L; ++t) {
      double acc = 0.0;
      for (int k = -3; k <= 3; ++k) {
        const double u = t + k * r.L;
        acc += std::exp(-kPi * (static_cast<double>(r.b) / r.a) * u * u / r.L);
      }
      g(t) = acc;
    }
    CMatrix S = CMatrix::Zero(r.L, r.L);
    for (int x = 0; x < r.L; x += r.a) {
      for (int w = 0; w < r.L; w += r.b) {
        const CVector v = shift_matrix_oracle(r.L, x, w) * g;
        S += v * v.adjoint();
      }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
    const double ratio = std::max(0.0, es.eigenvalues().minCoeff()) / es.eigenvalues().maxCoeff();
    CHECK(r.ratio == doctest::Approx(ratio).epsilon(1e-6));
  }
}
