#pragma once

// DFT, STFT, cross-Wigner and symplectic Fourier transform on both models,
// with the Moyal residual and a modulation-norm estimator.
//
// Conventions:
//   V_g f(x, w) = <f, pi(x, w) g>
//   W(f, g)(x, w) = 2 e^{4 pi i x w} V_{g~} f(2x, 2w),  g~(t) = g(-t)
//   F_s F(x, w) = sum/int F(y, e) e^{2 pi i (y w - x e)}
// Finite sums carry no weight except the symplectic transform (1/L); the
// continuum uses Riemann sums with the grid measure.

#include <iosfwd>

#include "qgabor/kernels.hpp"
#include "qgabor/phase_space.hpp"

namespace qgabor {

// Values on a full time-frequency grid; rows are positions, columns
// frequencies. Finite: residues 0..L-1. Continuum: t_j by nu_k.
struct TFMatrix {
  ModelOrder model;
  CMatrix values;

  RPoint coordinate(Eigen::Index row, Eigen::Index col) const;
  bool is_finite() const { return std::holds_alternative<FiniteModel>(model); }
};

// Unitary DFT with the e^{-2 pi i t w / L} kernel.
FiniteSignal dft(const FiniteSignal& f);
FiniteSignal idft(const FiniteSignal& f);
// Riemann-sum Fourier transform sampled on nu_k; the result lives on the
// frequency grid (extent 1/step, step 1/(n step)).
GridFunction dft(const GridFunction& f);
GridFunction idft(const GridFunction& f);

FiniteSignal reflect(const FiniteSignal& f);
// g(-t); the sample at t = -extent/2 has no mirror and is set to zero.
GridFunction reflect(const GridFunction& f);

TFMatrix stft(const FiniteSignal& f, const FiniteSignal& g, Exec exec = default_exec());
// Grid shifts use zero fill.
TFMatrix stft(const GridFunction& f, const GridFunction& g, Exec exec = default_exec());

cplx stft_at(const FiniteSignal& f, const FiniteSignal& g, const FinitePoint& p);
// Any real point; non-grid translations are spectral.
cplx stft_at(const GridFunction& f, const GridFunction& g, const RPoint& p);

// Via the STFT with index doubling. Finite L must be even. The continuum
// version evaluates the STFT on a grid refined by 2 so that doubled
// frequencies stay below the Nyquist limit.
TFMatrix cross_wigner(const FiniteSignal& f, const FiniteSignal& g);
TFMatrix cross_wigner(const GridFunction& f, const GridFunction& g);
// Second evaluation path: the lag integral sum f(x + v/2) conj g(x - v/2).
TFMatrix cross_wigner_direct(const FiniteSignal& f, const FiniteSignal& g);
TFMatrix cross_wigner_direct(const GridFunction& f, const GridFunction& g);

TFMatrix symplectic_fourier(const TFMatrix& F, Exec exec = default_exec());

// Measure of one TF grid cell: 1/L, or step * freq_step = 1/n.
double tf_measure(const ModelOrder& model);

double moyal_residual(const FiniteSignal& f1, const FiniteSignal& f2,
                      const FiniteSignal& g1, const FiniteSignal& g2);
double moyal_residual(const GridFunction& f1, const GridFunction& f2,
                      const GridFunction& g1, const GridFunction& g2);

struct WeightSpec {
  double s = 0.0;
};

// v_s(x, w) = (1 + x^2 + w^2)^{s/2}; finite coordinates are centered residues.
double weight(const WeightSpec& spec, const RPoint& z);

// Mixed norm || || V_g f v_s ||_{L^p(dx)} ||_{L^q(dw)}; p or q = infinity
// means the grid maximum. Finite measures: dx = 1, dw = 1/L.
double modulation_norm(const FiniteSignal& f, const FiniteSignal& g, double p, double q,
                       WeightSpec weight);
double modulation_norm(const GridFunction& f, const GridFunction& g, double p, double q,
                       WeightSpec weight);

// CSV with header "x,omega,re,im", one row per grid point.
void write_csv(const TFMatrix& m, std::ostream& out);
// Plain PGM (P2) of |values| scaled to 0..255; image rows are positions.
void write_pgm(const TFMatrix& m, std::ostream& out);

}  // namespace qgabor
