#pragma once

// Data-parallel kernels. Each kernel has an OpenMP path and a sequential
// path; both compute every output element with the same arithmetic, so the
// results are bitwise identical. `reference` holds naive serial versions that
// follow the defining formulas term by term; they back the benchmark and the
// cross-checks in the test suite.

#include <functional>
#include <span>
#include <vector>

#include "qgabor/types.hpp"

namespace qgabor {

enum class Exec { sequential, parallel };

// Process-wide default used by the high-level operations. The CLI switches
// it to sequential under --deterministic.
Exec default_exec();
void set_default_exec(Exec exec);

namespace kernels {

// Unnormalized in-place DFT: sign = -1 gives sum x_m e^{-2 pi i m k / n}.
void fft(std::span<cplx> data, int sign);

// sum_m p_m e^{sign 2 pi i (m - n/2)(k - n/2) / n}; n must be even.
CVector centered_dft(const CVector& p, int sign);

// V(x, w) = sum_t f(t) conj(g(t - x mod L)) e^{-2 pi i t w / L}; rows are x.
CMatrix stft_finite(const CVector& f, const CVector& g, Exec exec);

// Centered-grid STFT without the quadrature weight:
// V(j, k) = sum_m f_m conj(g_{m - (j - n/2)}) e^{-2 pi i (m - c)(k - c)/n}
// with zero fill outside the grid.
CMatrix stft_grid(const CVector& f, const CVector& g, Exec exec);

// S = Phi Psi^H computed row by row.
CMatrix outer_sum(const CMatrix& phi, const CMatrix& psi, Exec exec);

// F_s F(x, w) = scale * sum_{y, e} F(y, e) e^{2 pi i (y w - x e) / n}, where
// indices are residues (centered = false) or offsets from n/2 (centered =
// true).
CMatrix symplectic_fourier(const CMatrix& values, bool centered, double scale,
                           Exec exec);

// out[i] = fn(i) for i in [0, n).
std::vector<cplx> map_indices(std::size_t n,
                              const std::function<cplx(std::size_t)>& fn,
                              Exec exec);

// Left-to-right sum; the only reduction order used by the library.
cplx ordered_sum(std::span<const cplx> terms);

}  // namespace kernels

namespace reference {

CVector dft(const CVector& f, int sign);
CMatrix stft_finite(const CVector& f, const CVector& g);
CMatrix outer_sum(const CMatrix& phi, const CMatrix& psi);
CMatrix symplectic_fourier(const CMatrix& values, bool centered, double scale);

}  // namespace reference

}  // namespace qgabor
