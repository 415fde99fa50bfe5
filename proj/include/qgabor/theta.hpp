#pragma once

// Generalized Gaussians g_T(x) = e^{-<Tx, x>}, the symplectic matrix G_T and
// its factorization, closed-form ambiguity coefficients, quantum theta
// elements over the adjoint lattice, the scalar theta series with its
// functional equation, and a finite-model probe of theta invertibility.

#include <string>

#include "qgabor/gabor.hpp"
#include "qgabor/nctorus.hpp"

namespace qgabor {

// decay: Re T > 0 (windows and ambiguity functions).
// siegel: Im T > 0 (theta-constant normalization; T = i gives G = I).
enum class SiegelTag { decay, siegel };

class SiegelMatrix {
 public:
  SiegelMatrix(CMatrix T, SiegelTag tag);
  static SiegelMatrix scalar(cplx t, SiegelTag tag = SiegelTag::decay);

  const CMatrix& T() const { return T_; }
  SiegelTag tag() const { return tag_; }
  int dim() const { return static_cast<int>(T_.rows()); }

 private:
  CMatrix T_;
  SiegelTag tag_;
};

// Samples of e^{-T t^2} (N = 1, decay tag).
GridFunction gaussian_window(const SiegelMatrix& T, const ContinuumModel& model);
// Periodized e^{-T (t/sqrt(L))^2} on Z_L; T = pi gives a DFT eigenvector.
FiniteSignal gaussian_window(const SiegelMatrix& T, const FiniteModel& model);

struct GTFactorization {
  RMatrix G;  // 2N x 2N, symmetric, symplectic
  RMatrix S;  // G = S^T S
};

// With P the positive block (Re T for decay, Im T for siegel) and Q the
// other one: G = [[P + Q P^-1 Q, Q P^-1], [P^-1 Q, P^-1]].
GTFactorization gt_matrix(const SiegelMatrix& T);

// J = [[0, I], [-I, 0]]
RMatrix symplectic_form(int N);

// <g_T, pi(z) g_T>, z = (x, w) in R^{2N}, decay tag, by completing the square.
cplx gaussian_ambiguity(const SiegelMatrix& T, const RVector& z);
cplx gaussian_ambiguity(const SiegelMatrix& T, const RPoint& z);
// Complex symmetric Q with <g_T, pi(z) g_T> = <g_T, g_T> e^{-z^T Q z}.
CMatrix ambiguity_exponent(const SiegelMatrix& T);

// Upper bound for sum_{h in lattice, |h| > R} exp(-pi (h^T Gq h + b^T h)),
// Gq positive definite: lattice points are counted shell by shell and each
// shell is charged with the exact minimum of the quadratic outside its
// inner sphere.
double gaussian_lattice_tail(const RMatrix& Gq, const RVector& b,
                             const GeneralLattice& lattice, double R);

struct QuantumTheta {
  TwistedSequence coeffs;  // on the adjoint lattice
  ContinuumLattice lattice;
  double truncation_radius = 0.0;
  double tail_bound = 0.0;
};

// c_mu = vol(D)^-1 <g_T, pi(mu) g_T> for mu in D!, |mu| <= radius.
QuantumTheta quantum_theta(const SiegelMatrix& T, const ContinuumLattice& D, double radius,
                           double tolerance = 1e-12);
// Smallest radius (multiple of 1/4) whose tail bound is below tolerance.
double default_truncation_radius(const SiegelMatrix& T, const ContinuumLattice& D,
                                 double tolerance = 1e-12);

// max |c(h + k) - c(h) c(k) / c(0) e^{-2 h^T Q k}| over coefficient pairs
// with h, k, h + k inside the truncation radius.
double quasi_periodicity_residual(const TwistedSequence& c, const SiegelMatrix& T);

// Finite-model theta element: Janssen coefficients of the periodized
// Gaussian system on D, living on the adjoint lattice.
TwistedSequence finite_quantum_theta(const SiegelMatrix& T, const FiniteLattice& D);

struct ThetaValue {
  cplx value;
  double tail_bound = 0.0;
  double radius = 0.0;
};

// sum_{h in D, |h| <= R} e^{-pi G h.h - pi (G x.h + i sigma(x, h))} with
// sigma(x, h) = x_pos . h_freq - x_freq . h_pos.
ThetaValue theta_series(const SiegelMatrix& T, const GeneralLattice& D, const RVector& x,
                        double radius, double tolerance = 1e-12);

// |theta_D(x) - vol(D)^-1 theta_{D!}(x)|
double functional_equation_residual(const SiegelMatrix& T, const GeneralLattice& D,
                                    const RVector& x, double radius,
                                    double tolerance = 1e-12);

struct ProbeReport {
  double ab = 0.0;        // requested density
  int L = 0;              // model order used
  int a = 0;
  int b = 0;
  double density = 0.0;   // a b / L
  double A = 0.0;
  double B = 0.0;
  double ratio = 0.0;     // A / B
  bool invertible = false;
};

// Emulates the continuum Gaussian system on a lattice of density ab: picks
// the smallest L' >= L with divisors a', b' whose density a'b'/L' is within
// 5% of ab (closest density first, then aspect nearest 1) and dilates the
// Gaussian to the lattice aspect.
ProbeReport invertibility_probe(double a, double b, int L, double threshold = 1e-8);

}  // namespace qgabor
