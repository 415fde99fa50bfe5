#pragma once

// Gabor systems G(g, D) = { pi(h) g : h in D }: analysis, synthesis and frame
// operators, frame bounds, dual windows, the Janssen expansion over the
// adjoint lattice, and the FIGA / Poisson residuals.
//
// Janssen expansion as implemented (checked against dense matrices):
//   sum_D <f, pi(l) h> pi(l) g = vol(D)^-1 sum_{D!} <g, pi(mu) h> pi(mu) f
// FIGA:
//   sum_D V_{g1}f1 conj(V_{g2}f2) = vol(D)^-1 sum_{D!} V_{g1}g2 conj(V_{f1}f2)

#include <string>

#include "qgabor/nctorus.hpp"
#include "qgabor/transforms.hpp"

namespace qgabor {

inline constexpr double kFrameTolerance = 1e-8;  // frame iff A > tol * B

struct FiniteGaborSystem {
  FiniteSignal atom;
  FiniteLattice lattice;
};

struct ContinuumGaborSystem {
  GridFunction atom;
  ContinuumLattice lattice;
  double radius = 0.0;  // lattice sums run over |h| <= radius
};

FiniteGaborSystem make_gabor_system(FiniteSignal g, const FiniteLattice& D);
// radius <= 0 selects half the grid extent.
ContinuumGaborSystem make_gabor_system(GridFunction g, const ContinuumLattice& D,
                                       double radius = 0.0);

TwistedSequence analysis(const FiniteGaborSystem& sys, const FiniteSignal& f);
TwistedSequence analysis(const ContinuumGaborSystem& sys, const GridFunction& f);
FiniteSignal synthesis(const FiniteGaborSystem& sys, const TwistedSequence& c);
GridFunction synthesis(const ContinuumGaborSystem& sys, const TwistedSequence& c);

FiniteSignal frame_operator(const FiniteGaborSystem& sys, const FiniteSignal& f);
GridFunction frame_operator(const ContinuumGaborSystem& sys, const GridFunction& f);
// sum_D <f, pi(l) h> pi(l) g
FiniteSignal frame_type_operator(const FiniteGaborSystem& sys, const FiniteSignal& h,
                                 const FiniteSignal& f);
GridFunction frame_type_operator(const ContinuumGaborSystem& sys, const GridFunction& h,
                                 const GridFunction& f);

// Dense S_{g,h,D} as Phi_g Phi_h^H.
CMatrix frame_type_matrix(const FiniteGaborSystem& sys, const FiniteSignal& h,
                          Exec exec = default_exec());
CMatrix frame_operator_matrix(const FiniteGaborSystem& sys, Exec exec = default_exec());

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  bool is_frame() const { return A > kFrameTolerance * B; }
};

FrameBounds frame_bounds(const FiniteGaborSystem& sys);
// Not available: a truncated continuum eigensolve sees the grid edges.
FrameBounds frame_bounds(const ContinuumGaborSystem& sys);

enum class DualMode { dual, tight };

// S^-1 g or S^-1/2 g by Hermitian eigendecomposition.
FiniteSignal dual_window(const FiniteGaborSystem& sys, DualMode mode);

struct JanssenResult {
  TwistedSequence coeffs;  // on the adjoint lattice
  double tail = 0.0;       // l1 mass of the outermost shells inside the radius
  bool certified = true;
  double radius = 0.0;
};

JanssenResult janssen_operator(const FiniteGaborSystem& sys, const FiniteSignal& h);
// Coefficients for |mu| <= sys.radius. `certified` is false when the tail
// estimate exceeds the tolerance; the coefficients are still returned.
JanssenResult janssen_operator(const ContinuumGaborSystem& sys, const GridFunction& h,
                               double tolerance = 1e-12);

double figa_residual(const FiniteSignal& f1, const FiniteSignal& f2, const FiniteSignal& g1,
                     const FiniteSignal& g2, const FiniteLattice& D);
double figa_residual(const GridFunction& f1, const GridFunction& f2, const GridFunction& g1,
                     const GridFunction& g2, const ContinuumLattice& D, double radius);

// |sum_D F - vol(D)^-1 sum_{D!} F_s F|. Continuum lattices must sit on the
// TF grid; points outside the grid are dropped.
double poisson_residual(const TFMatrix& F, const SeparableLattice& D);

struct FrameReport {
  FiniteLattice lattice;
  std::string atom_descriptor;
  FrameBounds bounds;
  double redundancy = 0.0;
  double janssen_tail = 0.0;
  double truncation_radius = 0.0;
};

FrameReport frame_report(const FiniteGaborSystem& sys, std::string atom_descriptor);

}  // namespace qgabor
