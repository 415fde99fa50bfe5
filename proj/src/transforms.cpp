#include "qgabor/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace qgabor {

namespace {

void require_window(double norm) {
  require(norm > 0.0, ErrorCode::degenerate_window, "window is identically zero");
}

void require_same(const FiniteSignal& f, const FiniteSignal& g) {
  require(f.size() == g.size(), ErrorCode::model_mismatch, "signals of different length");
  require(f.size() >= 2, ErrorCode::invalid_argument, "finite signals need L >= 2");
}

void require_same(const GridFunction& f, const GridFunction& g) {
  require(f.model == g.model, ErrorCode::model_mismatch, "grid functions on different grids");
}

// Samples on the grid refined by 2: index p sits at (p - n) step / 2.
CVector refine(const GridFunction& f) {
  const int n = f.model.size();
  const CVector half = translated_samples(f, -0.5 * f.model.step);
  CVector out(2 * n);
  for (int m = 0; m < n; ++m) {
    out[2 * m] = f.samples[m];
    out[2 * m + 1] = half[m];
  }
  return out;
}

}  // namespace

RPoint TFMatrix::coordinate(Eigen::Index row, Eigen::Index col) const {
  if (const auto* c = std::get_if<ContinuumModel>(&model)) {
    return {c->time(static_cast<int>(row)), c->freq(static_cast<int>(col))};
  }
  return {static_cast<double>(row), static_cast<double>(col)};
}

FiniteSignal dft(const FiniteSignal& f) {
  CVector out = f;
  kernels::fft(std::span<cplx>(out.data(), out.size()), -1);
  return out / std::sqrt(static_cast<double>(f.size()));
}

FiniteSignal idft(const FiniteSignal& f) {
  CVector out = f;
  kernels::fft(std::span<cplx>(out.data(), out.size()), +1);
  return out / std::sqrt(static_cast<double>(f.size()));
}

GridFunction dft(const GridFunction& f) {
  const ContinuumModel& m = f.model;
  const ContinuumModel spectrum = make_continuum_model(m.N, 1.0 / m.step, m.freq_step());
  return GridFunction(spectrum, m.step * kernels::centered_dft(f.samples, -1));
}

GridFunction idft(const GridFunction& f) {
  const ContinuumModel& m = f.model;
  const ContinuumModel time = make_continuum_model(m.N, 1.0 / m.step, m.freq_step());
  return GridFunction(time, m.step * kernels::centered_dft(f.samples, +1));
}

FiniteSignal reflect(const FiniteSignal& f) {
  const auto L = f.size();
  FiniteSignal out(L);
  for (Eigen::Index t = 0; t < L; ++t) out[t] = f[mod(-t, L)];
  return out;
}

GridFunction reflect(const GridFunction& f) {
  const int n = f.model.size();
  GridFunction out = GridFunction::zeros(f.model);
  for (int m = 1; m < n; ++m) out.samples[m] = f.samples[n - m];
  return out;
}

TFMatrix stft(const FiniteSignal& f, const FiniteSignal& g, Exec exec) {
  require_same(f, g);
  require_window(g.norm());
  return {FiniteModel{static_cast<int>(f.size())}, kernels::stft_finite(f, g, exec)};
}

TFMatrix stft(const GridFunction& f, const GridFunction& g, Exec exec) {
  require_same(f, g);
  require_window(g.samples.norm());
  return {f.model, f.model.step * kernels::stft_grid(f.samples, g.samples, exec)};
}

cplx stft_at(const FiniteSignal& f, const FiniteSignal& g, const FinitePoint& p) {
  require_same(f, g);
  return inner(f, tf_shift(g, p));
}

cplx stft_at(const GridFunction& f, const GridFunction& g, const RPoint& p) {
  require_same(f, g);
  return f.inner(fractional_tf_shift(g, p));
}

TFMatrix cross_wigner(const FiniteSignal& f, const FiniteSignal& g) {
  require_same(f, g);
  const int L = static_cast<int>(f.size());
  require(L % 2 == 0, ErrorCode::unsupported, "finite cross-Wigner needs even L");
  const CMatrix V = kernels::stft_finite(f, reflect(g), default_exec());
  CMatrix W(L, L);
  for (int x = 0; x < L; ++x) {
    for (int w = 0; w < L; ++w) {
      W(x, w) = 2.0 * unit_root(2 * x * w, L) * V(mod(2 * x, L), mod(2 * w, L));
    }
  }
  return {FiniteModel{L}, W};
}

TFMatrix cross_wigner_direct(const FiniteSignal& f, const FiniteSignal& g) {
  require_same(f, g);
  const int L = static_cast<int>(f.size());
  require(L % 2 == 0, ErrorCode::unsupported, "finite cross-Wigner needs even L");
  CMatrix W(L, L);
  for (int x = 0; x < L; ++x) {
    for (int w = 0; w < L; ++w) {
      cplx acc{};
      for (int t = 0; t < L; ++t) {
        acc += f[t] * std::conj(g[mod(2 * x - t, L)]) *
               unit_root(-2 * static_cast<std::int64_t>(t - x) * w, L);
      }
      W(x, w) = 2.0 * acc;
    }
  }
  return {FiniteModel{L}, W};
}

TFMatrix cross_wigner(const GridFunction& f, const GridFunction& g) {
  require_same(f, g);
  const ContinuumModel& model = f.model;
  const int n = model.size();
  const int c = n / 2;
  const CVector F2 = refine(f);
  const CVector G2 = refine(g);
  // g~ on the fine grid: index p <-> 2n - p.
  CVector Gt2 = CVector::Zero(2 * n);
  for (int p = 1; p < 2 * n; ++p) Gt2[p] = G2[2 * n - p];
  const double fine_step = 0.5 * model.step;
  CMatrix W(n, n);
#pragma omp parallel if (default_exec() == Exec::parallel)
  {
    CVector q(2 * n);
#pragma omp for schedule(static)
    for (int j = 0; j < n; ++j) {
      const int s = 4 * (j - c);
      for (int p = 0; p < 2 * n; ++p) {
        const int src = p - s;
        q[p] = (src >= 0 && src < 2 * n) ? F2[p] * std::conj(Gt2[src]) : cplx{};
      }
      const CVector spec = kernels::centered_dft(q, -1);
      for (int k = 0; k < n; ++k) {
        const cplx v = fine_step * spec[n + 2 * (k - c)];
        W(j, k) = 2.0 * unit_root(2 * static_cast<std::int64_t>(j - c) * (k - c), n) * v;
      }
    }
  }
  return {model, W};
}

TFMatrix cross_wigner_direct(const GridFunction& f, const GridFunction& g) {
  require_same(f, g);
  const ContinuumModel& model = f.model;
  const int n = model.size();
  const int c = n / 2;
  const CVector F2 = refine(f);
  const CVector G2 = refine(g);
  CMatrix W(n, n);
  CVector q(n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const int a = 2 * j + m - c;
      const int b = 2 * j - m + c;
      q[m] = (a >= 0 && a < 2 * n && b >= 0 && b < 2 * n) ? F2[a] * std::conj(G2[b])
                                                            : cplx{};
    }
    W.row(j) = model.step * kernels::centered_dft(q, -1).transpose();
  }
  return {model, W};
}

TFMatrix symplectic_fourier(const TFMatrix& F, Exec exec) {
  if (const auto* fm = std::get_if<FiniteModel>(&F.model)) {
    return {F.model, kernels::symplectic_fourier(F.values, false, 1.0 / fm->L, exec)};
  }
  const auto& cm = std::get<ContinuumModel>(F.model);
  require(F.values.rows() == cm.size(), ErrorCode::invalid_argument,
          "TF matrix does not match its grid");
  return {F.model, kernels::symplectic_fourier(F.values, true, 1.0 / cm.size(), exec)};
}

double tf_measure(const ModelOrder& model) {
  if (const auto* fm = std::get_if<FiniteModel>(&model)) return 1.0 / fm->L;
  return 1.0 / std::get<ContinuumModel>(model).size();
}

double moyal_residual(const FiniteSignal& f1, const FiniteSignal& f2,
                      const FiniteSignal& g1, const FiniteSignal& g2) {
  const CMatrix V1 = kernels::stft_finite(f1, g1, default_exec());
  const CMatrix V2 = kernels::stft_finite(f2, g2, default_exec());
  const cplx lhs = (V1.array() * V2.array().conjugate()).sum() / static_cast<double>(f1.size());
  return std::abs(lhs - inner(f1, f2) * std::conj(inner(g1, g2)));
}

double moyal_residual(const GridFunction& f1, const GridFunction& f2,
                      const GridFunction& g1, const GridFunction& g2) {
  require_same(f1, f2);
  require_same(f1, g1);
  require_same(f1, g2);
  const double h = f1.model.step;
  const CMatrix V1 = h * kernels::stft_grid(f1.samples, g1.samples, default_exec());
  const CMatrix V2 = h * kernels::stft_grid(f2.samples, g2.samples, default_exec());
  const cplx lhs = (V1.array() * V2.array().conjugate()).sum() * tf_measure(f1.model);
  return std::abs(lhs - f1.inner(f2) * std::conj(g1.inner(g2)));
}

double weight(const WeightSpec& spec, const RPoint& z) {
  return std::pow(1.0 + z.x * z.x + z.w * z.w, 0.5 * spec.s);
}

namespace {

double mixed_norm(const TFMatrix& V, double p, double q, WeightSpec spec, double dx,
                  double dw) {
  require(p >= 1.0 && q >= 1.0, ErrorCode::invalid_argument,
          "norm exponents must satisfy p, q >= 1");
  require(spec.s >= 0.0, ErrorCode::invalid_argument, "weight order s must be >= 0");
  const auto rows = V.values.rows();
  const auto cols = V.values.cols();
  const auto* fm = std::get_if<FiniteModel>(&V.model);
  double outer = 0.0;
  for (Eigen::Index k = 0; k < cols; ++k) {
    double inner_acc = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      RPoint z = V.coordinate(r, k);
      if (fm != nullptr) {
        z = {static_cast<double>(centered(r, fm->L)), static_cast<double>(centered(k, fm->L))};
      }
      const double m = std::abs(V.values(r, k)) * weight(spec, z);
      if (std::isinf(p)) {
        inner_acc = std::max(inner_acc, m);
      } else {
        inner_acc += std::pow(m, p) * dx;
      }
    }
    const double row_norm = std::isinf(p) ? inner_acc : std::pow(inner_acc, 1.0 / p);
    if (std::isinf(q)) {
      outer = std::max(outer, row_norm);
    } else {
      outer += std::pow(row_norm, q) * dw;
    }
  }
  return std::isinf(q) ? outer : std::pow(outer, 1.0 / q);
}

}  // namespace

double modulation_norm(const FiniteSignal& f, const FiniteSignal& g, double p, double q,
                       WeightSpec spec) {
  const TFMatrix V = stft(f, g);
  return mixed_norm(V, p, q, spec, 1.0, 1.0 / static_cast<double>(f.size()));
}

double modulation_norm(const GridFunction& f, const GridFunction& g, double p, double q,
                       WeightSpec spec) {
  const TFMatrix V = stft(f, g);
  return mixed_norm(V, p, q, spec, f.model.step, f.model.freq_step());
}

void write_csv(const TFMatrix& m, std::ostream& out) {
  out << "x,omega,re,im\n";
  char line[160];
  for (Eigen::Index r = 0; r < m.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.values.cols(); ++c) {
      const RPoint z = m.coordinate(r, c);
      const cplx v = m.values(r, c);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", z.x, z.w, v.real(),
                    v.imag());
      out << line;
    }
  }
}

void write_pgm(const TFMatrix& m, std::ostream& out) {
  const auto rows = m.values.rows();
  const auto cols = m.values.cols();
  const double peak = m.values.cwiseAbs().maxCoeff();
  out << "P2\n" << cols << ' ' << rows << "\n255\n";
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double v = peak > 0.0 ? std::abs(m.values(r, c)) / peak : 0.0;
      out << static_cast<int>(std::lround(255.0 * v)) << (c + 1 < cols ? ' ' : '\n');
    }
  }
}

}  // namespace qgabor
