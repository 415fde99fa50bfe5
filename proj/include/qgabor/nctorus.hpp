#pragma once

// Twisted group algebra of a lattice: sequences indexed by lattice points,
// twisted convolution, involution, the integrated representation
// a -> sum a_h pi(h), and the two algebra-valued inner products linking the
// algebras of D and of its adjoint lattice.
//
// With pi(l) pi(m) = conj(alpha(m, l)) pi(l + m) the product that makes the
// integrated representation multiplicative is
//   (a # b)(h) = sum_l a_l b_{h-l} conj(alpha(h - l, l)).
// Sequences produced by the right inner product carry the conjugate twist.

#include <map>

#include "qgabor/phase_space.hpp"

namespace qgabor {

enum class Twist { standard, conjugate };
enum class Side { left, right };

struct TwistedSequence {
  SeparableLattice lattice;
  double s = 0.0;
  Twist twist = Twist::standard;
  // Finite lattices key by residues (i mod L/a, j mod L/b); continuum keys
  // are plain integer pairs.
  std::map<LatticeIndex, cplx> coeffs;
  // Continuum sequences are truncations to |h| <= truncation_radius; 0 for
  // finite lattices.
  double truncation_radius = 0.0;

  TwistedSequence() = default;
  explicit TwistedSequence(SeparableLattice lattice_, double s_ = 0.0,
                           Twist twist_ = Twist::standard);
  static TwistedSequence delta(const SeparableLattice& lattice, LatticeIndex at = {},
                               cplx value = 1.0);

  bool is_finite() const { return std::holds_alternative<FiniteLattice>(lattice); }
  LatticeIndex canonical(LatticeIndex k) const;
  TFPoint point(LatticeIndex k) const;
  // Euclidean coordinates; finite residues are centered first.
  RPoint coordinates(LatticeIndex k) const;
  cplx at(LatticeIndex k) const;
  void add(LatticeIndex k, cplx v);
};

TwistedSequence twisted_convolution(const TwistedSequence& a, const TwistedSequence& b);
TwistedSequence involution(const TwistedSequence& a);
// sum |a_h| (1 + |h|^2)^{s/2}
double weighted_norm(const TwistedSequence& a, double s);

// Largest coefficient difference over the union of supports; both
// sequences must live on the same lattice.
double max_coefficient_distance(const TwistedSequence& a, const TwistedSequence& b);

FiniteSignal integrated_rep(const TwistedSequence& a, const FiniteSignal& f);
GridFunction integrated_rep(const TwistedSequence& a, const GridFunction& f);
// Dense L x L matrix of sum a_h pi(h) for a finite lattice.
CMatrix representation_matrix(const TwistedSequence& a);

// left:  <f, pi(h) g> on D
// right: <pi(mu) f, g> on the adjoint lattice of D (conjugate twist)
TwistedSequence rieffel_inner(Side side, const FiniteSignal& f, const FiniteSignal& g,
                              const FiniteLattice& D);
TwistedSequence rieffel_inner(Side side, const GridFunction& f, const GridFunction& g,
                              const ContinuumLattice& D, double radius);

// vol(D)^-1 sum_mu pi(mu) f conj(b_mu); b must live on the adjoint of D.
FiniteSignal right_action(const FiniteSignal& f, const TwistedSequence& b,
                          const FiniteLattice& D);
GridFunction right_action(const GridFunction& f, const TwistedSequence& b,
                          const ContinuumLattice& D);

// || D<f, g> . k - f . <g, k>D! ||_2
double associativity_residual(const FiniteSignal& f, const FiniteSignal& g,
                              const FiniteSignal& k, const FiniteLattice& D);
double associativity_residual(const GridFunction& f, const GridFunction& g,
                              const GridFunction& k, const ContinuumLattice& D,
                              double radius);

// Inverse in the algebra through the finite representation: invert the
// matrix, then read coefficients back with a_h = tr(M pi(h)^H) / L.
// Finite lattices only.
TwistedSequence invert_element(const TwistedSequence& a, double tolerance = 1e-8);

}  // namespace qgabor
