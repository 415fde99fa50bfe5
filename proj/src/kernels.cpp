#include "qgabor/kernels.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

#include "qgabor/error.hpp"
#include "qgabor/phase_space.hpp"

namespace qgabor {

namespace {

std::atomic<Exec> g_default_exec{Exec::parallel};

class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (plan == nullptr) fail(ErrorCode::numerical, "fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

inline double sign_flip(std::int64_t m) { return (m & 1) ? -1.0 : 1.0; }

}  // namespace

Exec default_exec() { return g_default_exec.load(); }
void set_default_exec(Exec exec) { g_default_exec.store(exec); }

namespace kernels {

void fft(std::span<cplx> data, int sign) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return;
  fftw_plan plan = plan_cache().get(n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

CVector centered_dft(const CVector& p, int sign) {
  const auto n = p.size();
  CVector buf(n);
  for (Eigen::Index m = 0; m < n; ++m) buf[m] = sign_flip(m) * p[m];
  fft(std::span<cplx>(buf.data(), static_cast<std::size_t>(n)), sign);
  const double global = sign_flip(n / 2);
  for (Eigen::Index k = 0; k < n; ++k) buf[k] *= global * sign_flip(k);
  return buf;
}

CMatrix stft_finite(const CVector& f, const CVector& g, Exec exec) {
  const int L = static_cast<int>(f.size());
  CMatrix out(L, L);
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> buf(L);
#pragma omp for schedule(static)
    for (int x = 0; x < L; ++x) {
      for (int t = 0; t < L; ++t) buf[t] = f[t] * std::conj(g[mod(t - x, L)]);
      fft(buf, -1);
      for (int w = 0; w < L; ++w) out(x, w) = buf[w];
    }
  }
  return out;
}

CMatrix stft_grid(const CVector& f, const CVector& g, Exec exec) {
  const int n = static_cast<int>(f.size());
  CMatrix out(n, n);
#pragma omp parallel if (exec == Exec::parallel)
  {
    CVector buf(n);
#pragma omp for schedule(static)
    for (int j = 0; j < n; ++j) {
      const int s = j - n / 2;
      for (int m = 0; m < n; ++m) {
        const int src = m - s;
        buf[m] = (src >= 0 && src < n) ? f[m] * std::conj(g[src]) : cplx{};
      }
      out.row(j) = centered_dft(buf, -1).transpose();
    }
  }
  return out;
}

CMatrix outer_sum(const CMatrix& phi, const CMatrix& psi, Exec exec) {
  const auto rows = phi.rows();
  const auto cols = psi.rows();
  CMatrix out(rows, cols);
  const CMatrix psi_h = psi.adjoint();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      cplx acc{};
      for (Eigen::Index l = 0; l < phi.cols(); ++l) acc += phi(r, l) * psi_h(l, c);
      out(r, c) = acc;
    }
  }
  return out;
}

CMatrix symplectic_fourier(const CMatrix& values, bool centered, double scale,
                           Exec exec) {
  const int n = static_cast<int>(values.rows());
  require(values.cols() == n, ErrorCode::invalid_argument,
          "symplectic Fourier transform needs a square TF grid");
  // G(y, x) = sum_e F(y, e) e^{-2 pi i x e / n}
  CMatrix G(n, n);
#pragma omp parallel if (exec == Exec::parallel)
  {
    CVector buf(n);
#pragma omp for schedule(static)
    for (int y = 0; y < n; ++y) {
      buf = values.row(y).transpose();
      if (centered) {
        buf = centered_dft(buf, -1);
      } else {
        fft(std::span<cplx>(buf.data(), n), -1);
      }
      G.row(y) = buf.transpose();
    }
  }
  // out(x, w) = scale * sum_y G(y, x) e^{2 pi i y w / n}
  CMatrix out(n, n);
#pragma omp parallel if (exec == Exec::parallel)
  {
    CVector buf(n);
#pragma omp for schedule(static)
    for (int x = 0; x < n; ++x) {
      buf = G.col(x);
      if (centered) {
        buf = centered_dft(buf, +1);
      } else {
        fft(std::span<cplx>(buf.data(), n), +1);
      }
      out.row(x) = scale * buf.transpose();
    }
  }
  return out;
}

std::vector<cplx> map_indices(std::size_t n,
                              const std::function<cplx(std::size_t)>& fn,
                              Exec exec) {
  std::vector<cplx> out(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < count; ++i) out[i] = fn(static_cast<std::size_t>(i));
  return out;
}

cplx ordered_sum(std::span<const cplx> terms) {
  cplx acc{};
  for (const cplx& t : terms) acc += t;
  return acc;
}

}  // namespace kernels

namespace reference {

CVector dft(const CVector& f, int sign) {
  const auto n = f.size();
  CVector out = CVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index m = 0; m < n; ++m) out[k] += f[m] * unit_root(sign * m * k, n);
  }
  return out;
}

CMatrix stft_finite(const CVector& f, const CVector& g) {
  const int L = static_cast<int>(f.size());
  CMatrix out = CMatrix::Zero(L, L);
  for (int x = 0; x < L; ++x) {
    for (int w = 0; w < L; ++w) {
      for (int t = 0; t < L; ++t) {
        out(x, w) += f[t] * std::conj(g[mod(t - x, L)]) * unit_root(-t * w, L);
      }
    }
  }
  return out;
}

CMatrix outer_sum(const CMatrix& phi, const CMatrix& psi) {
  return phi * psi.adjoint();
}

CMatrix symplectic_fourier(const CMatrix& values, bool centered, double scale) {
  const int n = static_cast<int>(values.rows());
  const int c = centered ? n / 2 : 0;
  CMatrix out = CMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int w = 0; w < n; ++w) {
      cplx acc{};
      for (int y = 0; y < n; ++y) {
        for (int e = 0; e < n; ++e) {
          const std::int64_t phase = static_cast<std::int64_t>(y - c) * (w - c) -
                                     static_cast<std::int64_t>(x - c) * (e - c);
          acc += values(y, e) * unit_root(phase, n);
        }
      }
      out(x, w) = scale * acc;
    }
  }
  return out;
}

}  // namespace reference

}  // namespace qgabor
