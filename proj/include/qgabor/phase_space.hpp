#pragma once

// Phase-space models, lattices, cocycles and time-frequency shifts.
//
// Two backends share one vocabulary:
//   * the finite cyclic model Z_L x Z_L, where every identity of Gabor
//     analysis is an exact finite-dimensional statement, and
//   * the sampled continuum R x R (N = 1 for signals), a uniform grid of
//     n = extent/step points t_m = (m - n/2) step with the matching DFT
//     frequency grid nu_k = (k - n/2) / (n step).
//
// The time-frequency shift is pi(x, w) f(t) = e^{2 pi i t w} f(t - x) in both.

#include <cstdint>
#include <variant>
#include <vector>

#include "qgabor/error.hpp"
#include "qgabor/types.hpp"

namespace qgabor {

struct FiniteModel {
  int L = 0;
};

struct ContinuumModel {
  int N = 1;
  double extent = 16.0;
  double step = 1.0 / 16.0;

  int size() const;                       // samples per axis
  double freq_step() const;               // 1 / (n step)
  double time(int m) const;               // t_m
  double freq(int k) const;               // nu_k
  double nyquist() const { return 0.5 / step; }
  bool operator==(const ContinuumModel&) const = default;
};

using ModelOrder = std::variant<FiniteModel, ContinuumModel>;

FiniteModel make_finite_model(int L);
ContinuumModel make_continuum_model(int N, double extent, double step);
ContinuumModel default_continuum_model();

// Residue of p modulo L in [0, L).
inline std::int64_t mod(std::int64_t p, std::int64_t L) {
  const std::int64_t r = p % L;
  return r < 0 ? r + L : r;
}

// Representative of p modulo L with smallest magnitude, in (-L/2, L/2].
inline std::int64_t centered(std::int64_t p, std::int64_t L) {
  std::int64_t r = mod(p, L);
  return 2 * r > L ? r - L : r;
}

// e^{2 pi i p / L} evaluated on the reduced residue.
cplx unit_root(std::int64_t p, std::int64_t L);

// A point of Z_L x Z_L in canonical residues.
struct FinitePoint {
  int L = 0;
  std::int64_t x = 0;
  std::int64_t w = 0;

  FinitePoint() = default;
  FinitePoint(int L_, std::int64_t x_, std::int64_t w_)
      : L(L_), x(mod(x_, L_)), w(mod(w_, L_)) {}

  FinitePoint operator+(const FinitePoint& o) const;
  FinitePoint operator-(const FinitePoint& o) const;
  FinitePoint operator-() const { return {L, -x, -w}; }
  bool operator==(const FinitePoint&) const = default;
};

struct RPoint {
  double x = 0.0;
  double w = 0.0;

  RPoint operator+(const RPoint& o) const { return {x + o.x, w + o.w}; }
  RPoint operator-(const RPoint& o) const { return {x - o.x, w - o.w}; }
  RPoint operator-() const { return {-x, -w}; }
  double norm() const;
};

using TFPoint = std::variant<FinitePoint, RPoint>;

// Lattice aZ_L x bZ_L with a | L and b | L.
struct FiniteLattice {
  int L = 0;
  int a = 1;
  int b = 1;

  int count_x() const { return L / a; }
  int count_w() const { return L / b; }
  int size() const { return count_x() * count_w(); }
  FinitePoint point(std::int64_t i, std::int64_t j) const {
    return {L, a * i, b * j};
  }
  bool contains(const FinitePoint& p) const {
    return p.L == L && p.x % a == 0 && p.w % b == 0;
  }
  bool operator==(const FiniteLattice&) const = default;
};

// Lattice aZ x bZ in the continuum (N = 1).
struct ContinuumLattice {
  double a = 1.0;
  double b = 1.0;

  RPoint point(std::int64_t i, std::int64_t j) const {
    return {a * static_cast<double>(i), b * static_cast<double>(j)};
  }
  bool operator==(const ContinuumLattice&) const = default;
};

using SeparableLattice = std::variant<FiniteLattice, ContinuumLattice>;

// A full-rank lattice M Z^{2N} in R^{2N}, N in {1, 2}; columns of M are the
// generators, coordinates ordered (positions, frequencies).
class GeneralLattice {
 public:
  explicit GeneralLattice(RMatrix generator);
  // aZ^N x bZ^N
  static GeneralLattice separable(double a, double b, int N = 1);
  static GeneralLattice from(const ContinuumLattice& lattice);

  int dim() const { return static_cast<int>(generator_.rows()) / 2; }
  const RMatrix& generator() const { return generator_; }
  // Lattice points with Euclidean norm <= radius, in lexicographic index order.
  std::vector<RVector> points_within(double radius) const;
  // Radius of the smallest ball around a lattice point covering its
  // fundamental parallelotope.
  double cell_diameter() const;

 private:
  RMatrix generator_;
};

FiniteLattice make_finite_lattice(int L, int a, int b);
ContinuumLattice make_continuum_lattice(double a, double b);

struct LatticeIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
  auto operator<=>(const LatticeIndex&) const = default;
};

// Indices (i, j) with |(a i, b j)| <= radius, lexicographic.
std::vector<LatticeIndex> indices_within(const ContinuumLattice& lattice,
                                         double radius);
// All indices of a finite lattice, lexicographic.
std::vector<LatticeIndex> all_indices(const FiniteLattice& lattice);

// D! = { z : pi(z) commutes with pi(h) for all h in D }.
FiniteLattice adjoint_lattice(const FiniteLattice& lattice);
ContinuumLattice adjoint_lattice(const ContinuumLattice& lattice);
GeneralLattice adjoint_lattice(const GeneralLattice& lattice);
SeparableLattice adjoint_lattice(const SeparableLattice& lattice);

// Finite model: ab / L, the normalization under which the Janssen
// representation is exact.
double lattice_volume(const FiniteLattice& lattice);
double lattice_volume(const ContinuumLattice& lattice);
double lattice_volume(const GeneralLattice& lattice);
double lattice_volume(const SeparableLattice& lattice);

class UnitPhase {
 public:
  explicit UnitPhase(cplx value);
  cplx value() const { return value_; }

 private:
  cplx value_;
};

// alpha(h, k) = e^{2 pi i h_w k_x}
UnitPhase cocycle(const FinitePoint& h, const FinitePoint& k);
UnitPhase cocycle(const RPoint& h, const RPoint& k);
UnitPhase cocycle(const TFPoint& h, const TFPoint& k);

// epsilon(h, k) with pi(h) pi(k) = epsilon(h, k) pi(k) pi(h).
UnitPhase commutator_phase(const FinitePoint& h, const FinitePoint& k);
UnitPhase commutator_phase(const RPoint& h, const RPoint& k);
UnitPhase commutator_phase(const TFPoint& h, const TFPoint& k);

// Multiplier of the operator product: pi(h) pi(k) = multiplier(h, k) pi(h+k).
// Equals conj(alpha(k, h)).
cplx multiplier(const FinitePoint& h, const FinitePoint& k);
cplx multiplier(const RPoint& h, const RPoint& k);

// Uniform samples of a function R -> C on a continuum grid.
struct GridFunction {
  ContinuumModel model;
  CVector samples;

  GridFunction() = default;
  GridFunction(ContinuumModel m, CVector s);
  static GridFunction zeros(const ContinuumModel& m);

  // Riemann-sum inner product and norm.
  cplx inner(const GridFunction& other) const;
  double norm() const;
};

using FiniteSignal = CVector;

FiniteSignal tf_shift(const FiniteSignal& f, const FinitePoint& p);
// Requires p.x to be an integer multiple of the grid step.
GridFunction tf_shift(const GridFunction& f, const RPoint& p);
// Any real shift; non-grid translations use trigonometric interpolation on
// the periodic grid.
GridFunction fractional_tf_shift(const GridFunction& f, const RPoint& p);

// Samples of f(t - x); zero fill for grid shifts, spectral otherwise.
CVector translated_samples(const GridFunction& f, double x);

// If x is within 1e-9 steps of a grid multiple, its integer step count.
bool grid_commensurate(const ContinuumModel& model, double x,
                       std::int64_t* steps = nullptr);

// Dense matrix of pi(p) on C^L.
CMatrix tf_shift_matrix(const FinitePoint& p);

}  // namespace qgabor
