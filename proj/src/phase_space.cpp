#include "qgabor/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgabor/kernels.hpp"

namespace qgabor {

int ContinuumModel::size() const {
  return static_cast<int>(std::lround(extent / step));
}
double ContinuumModel::freq_step() const { return 1.0 / (size() * step); }
double ContinuumModel::time(int m) const { return (m - size() / 2) * step; }
double ContinuumModel::freq(int k) const { return (k - size() / 2) * freq_step(); }

FiniteModel make_finite_model(int L) {
  require(L >= 2, ErrorCode::invalid_argument, "finite model needs L >= 2");
  return {L};
}

ContinuumModel make_continuum_model(int N, double extent, double step) {
  require(N == 1 || N == 2, ErrorCode::invalid_argument, "dimension N must be 1 or 2");
  require(step > 0.0 && extent > 0.0, ErrorCode::invalid_argument,
          "extent and step must be positive");
  const double ratio = extent / step;
  const long n = std::lround(ratio);
  require(std::abs(ratio - n) < 1e-9 * std::max(1.0, ratio) && n >= 2 && n % 2 == 0,
          ErrorCode::invalid_argument, "extent/step must be a positive even integer");
  return {N, extent, step};
}

ContinuumModel default_continuum_model() { return make_continuum_model(1, 16.0, 1.0 / 16.0); }

cplx unit_root(std::int64_t p, std::int64_t L) {
  const std::int64_t r = mod(p, L);
  // Exact values on the axes keep finite-model identities at machine precision.
  if (r == 0) return {1.0, 0.0};
  if (4 * r == L) return {0.0, 1.0};
  if (2 * r == L) return {-1.0, 0.0};
  if (4 * r == 3 * L) return {0.0, -1.0};
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(L));
}

FinitePoint FinitePoint::operator+(const FinitePoint& o) const {
  require(L == o.L, ErrorCode::model_mismatch, "points from different finite models");
  return {L, x + o.x, w + o.w};
}

FinitePoint FinitePoint::operator-(const FinitePoint& o) const {
  require(L == o.L, ErrorCode::model_mismatch, "points from different finite models");
  return {L, x - o.x, w - o.w};
}

double RPoint::norm() const { return std::hypot(x, w); }

GeneralLattice::GeneralLattice(RMatrix generator) : generator_(std::move(generator)) {
  const auto d = generator_.rows();
  require(generator_.cols() == d && (d == 2 || d == 4), ErrorCode::invalid_argument,
          "lattice generator must be 2Nx2N with N in {1, 2}");
  const double det = generator_.determinant();
  require(std::abs(det) > 1e-12, ErrorCode::invalid_argument,
          "lattice generator must be invertible");
}

GeneralLattice GeneralLattice::separable(double a, double b, int N) {
  require(a > 0 && b > 0, ErrorCode::invalid_argument, "lattice steps must be positive");
  require(N == 1 || N == 2, ErrorCode::invalid_argument, "dimension N must be 1 or 2");
  RVector diag(2 * N);
  for (int i = 0; i < N; ++i) {
    diag[i] = a;
    diag[N + i] = b;
  }
  return GeneralLattice(diag.asDiagonal());
}

GeneralLattice GeneralLattice::from(const ContinuumLattice& lattice) {
  return separable(lattice.a, lattice.b, 1);
}

std::vector<RVector> GeneralLattice::points_within(double radius) const {
  // |k_i| <= radius * ||row i of M^{-1}||_2 for every point M k inside the ball.
  const RMatrix inv = generator_.inverse();
  const int d = static_cast<int>(generator_.rows());
  std::vector<std::int64_t> bound(d);
  for (int i = 0; i < d; ++i) {
    bound[i] = static_cast<std::int64_t>(std::floor(radius * inv.row(i).norm() + 1e-9));
  }
  std::vector<RVector> out;
  std::vector<std::int64_t> k(d);
  for (int i = 0; i < d; ++i) k[i] = -bound[i];
  const double r2 = radius * radius * (1.0 + 1e-12);
  while (true) {
    RVector idx(d);
    for (int i = 0; i < d; ++i) idx[i] = static_cast<double>(k[i]);
    RVector p = generator_ * idx;
    if (p.squaredNorm() <= r2) out.push_back(p);
    int pos = d - 1;
    while (pos >= 0 && k[pos] == bound[pos]) {
      k[pos] = -bound[pos];
      --pos;
    }
    if (pos < 0) break;
    ++k[pos];
  }
  return out;
}

double GeneralLattice::cell_diameter() const {
  // Farthest vertex of the parallelotope sum t_i m_i, t in [0,1]^d.
  const int d = static_cast<int>(generator_.rows());
  double best = 0.0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    RVector v = RVector::Zero(d);
    for (int i = 0; i < d; ++i) {
      if (mask & (1 << i)) v += generator_.col(i);
    }
    best = std::max(best, v.norm());
  }
  return best;
}

FiniteLattice make_finite_lattice(int L, int a, int b) {
  make_finite_model(L);
  require(a > 0 && b > 0 && L % a == 0 && L % b == 0, ErrorCode::invalid_argument,
          "finite lattice steps must divide L");
  return {L, a, b};
}

ContinuumLattice make_continuum_lattice(double a, double b) {
  require(a > 0 && b > 0, ErrorCode::invalid_argument, "lattice steps must be positive");
  return {a, b};
}

std::vector<LatticeIndex> indices_within(const ContinuumLattice& lattice, double radius) {
  std::vector<LatticeIndex> out;
  const auto imax = static_cast<std::int64_t>(std::floor(radius / lattice.a + 1e-9));
  const auto jmax = static_cast<std::int64_t>(std::floor(radius / lattice.b + 1e-9));
  const double r2 = radius * radius * (1.0 + 1e-12);
  for (std::int64_t i = -imax; i <= imax; ++i) {
    for (std::int64_t j = -jmax; j <= jmax; ++j) {
      const RPoint p = lattice.point(i, j);
      if (p.x * p.x + p.w * p.w <= r2) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<LatticeIndex> all_indices(const FiniteLattice& lattice) {
  std::vector<LatticeIndex> out;
  out.reserve(lattice.size());
  for (std::int64_t i = 0; i < lattice.count_x(); ++i) {
    for (std::int64_t j = 0; j < lattice.count_w(); ++j) out.push_back({i, j});
  }
  return out;
}

FiniteLattice adjoint_lattice(const FiniteLattice& lattice) {
  return make_finite_lattice(lattice.L, lattice.L / lattice.b, lattice.L / lattice.a);
}

ContinuumLattice adjoint_lattice(const ContinuumLattice& lattice) {
  return make_continuum_lattice(1.0 / lattice.b, 1.0 / lattice.a);
}

GeneralLattice adjoint_lattice(const GeneralLattice& lattice) {
  // sigma(h, z) = h^T J z with J = [[0, I], [-I, 0]]; D! = -J M^{-T} Z^{2N}.
  const int N = lattice.dim();
  RMatrix J = RMatrix::Zero(2 * N, 2 * N);
  J.topRightCorner(N, N) = RMatrix::Identity(N, N);
  J.bottomLeftCorner(N, N) = -RMatrix::Identity(N, N);
  return GeneralLattice(-J * lattice.generator().inverse().transpose());
}

SeparableLattice adjoint_lattice(const SeparableLattice& lattice) {
  return std::visit([](const auto& l) -> SeparableLattice { return adjoint_lattice(l); },
                    lattice);
}

double lattice_volume(const FiniteLattice& lattice) {
  return static_cast<double>(lattice.a) * lattice.b / lattice.L;
}
double lattice_volume(const ContinuumLattice& lattice) { return lattice.a * lattice.b; }
double lattice_volume(const GeneralLattice& lattice) {
  return std::abs(lattice.generator().determinant());
}
double lattice_volume(const SeparableLattice& lattice) {
  return std::visit([](const auto& l) { return lattice_volume(l); }, lattice);
}

UnitPhase::UnitPhase(cplx value) : value_(value) {
  require(std::abs(std::abs(value) - 1.0) <= 1e-12, ErrorCode::numerical,
          "phase is not unimodular");
}

UnitPhase cocycle(const FinitePoint& h, const FinitePoint& k) {
  require(h.L == k.L, ErrorCode::model_mismatch, "cocycle of points from different models");
  return UnitPhase(unit_root(h.w * k.x, h.L));
}

UnitPhase cocycle(const RPoint& h, const RPoint& k) { return UnitPhase(expi2pi(h.w * k.x)); }

UnitPhase cocycle(const TFPoint& h, const TFPoint& k) {
  require(h.index() == k.index(), ErrorCode::model_mismatch,
          "cocycle of a finite and a continuum point");
  if (const auto* fh = std::get_if<FinitePoint>(&h)) return cocycle(*fh, std::get<FinitePoint>(k));
  return cocycle(std::get<RPoint>(h), std::get<RPoint>(k));
}

UnitPhase commutator_phase(const FinitePoint& h, const FinitePoint& k) {
  require(h.L == k.L, ErrorCode::model_mismatch, "points from different finite models");
  return UnitPhase(unit_root(k.x * h.w - h.x * k.w, h.L));
}

UnitPhase commutator_phase(const RPoint& h, const RPoint& k) {
  return UnitPhase(expi2pi(k.x * h.w - h.x * k.w));
}

UnitPhase commutator_phase(const TFPoint& h, const TFPoint& k) {
  require(h.index() == k.index(), ErrorCode::model_mismatch,
          "commutator of a finite and a continuum point");
  if (const auto* fh = std::get_if<FinitePoint>(&h)) {
    return commutator_phase(*fh, std::get<FinitePoint>(k));
  }
  return commutator_phase(std::get<RPoint>(h), std::get<RPoint>(k));
}

cplx multiplier(const FinitePoint& h, const FinitePoint& k) {
  require(h.L == k.L, ErrorCode::model_mismatch, "points from different finite models");
  return unit_root(-h.x * k.w, h.L);
}

cplx multiplier(const RPoint& h, const RPoint& k) { return expi2pi(-h.x * k.w); }

GridFunction::GridFunction(ContinuumModel m, CVector s) : model(m), samples(std::move(s)) {
  require(samples.size() == model.size(), ErrorCode::invalid_argument,
          "sample count does not match the grid");
}

GridFunction GridFunction::zeros(const ContinuumModel& m) {
  return GridFunction(m, CVector::Zero(m.size()));
}

cplx GridFunction::inner(const GridFunction& other) const {
  require(model == other.model, ErrorCode::model_mismatch, "grid functions on different grids");
  return qgabor::inner(samples, other.samples) * model.step;
}

double GridFunction::norm() const { return samples.norm() * std::sqrt(model.step); }

FiniteSignal tf_shift(const FiniteSignal& f, const FinitePoint& p) {
  require(f.size() == p.L, ErrorCode::model_mismatch, "signal length differs from point model");
  const int L = p.L;
  FiniteSignal out(L);
  for (int t = 0; t < L; ++t) out[t] = unit_root(t * p.w, L) * f[mod(t - p.x, L)];
  return out;
}

bool grid_commensurate(const ContinuumModel& model, double x, std::int64_t* steps) {
  const double q = x / model.step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return false;
  if (steps != nullptr) *steps = static_cast<std::int64_t>(r);
  return true;
}

CVector translated_samples(const GridFunction& f, double x) {
  const int n = f.model.size();
  std::int64_t s = 0;
  if (grid_commensurate(f.model, x, &s)) {
    CVector out = CVector::Zero(n);
    for (std::int64_t m = 0; m < n; ++m) {
      const std::int64_t src = m - s;
      if (src >= 0 && src < n) out[m] = f.samples[src];
    }
    return out;
  }
  // f(t - x) = sum_k F_k e^{2 pi i nu_k (t - x)} with signed frequencies.
  CVector spec = f.samples;
  kernels::fft(std::span<cplx>(spec.data(), n), -1);
  const double df = f.model.freq_step();
  for (int k = 0; k < n; ++k) {
    const int signed_k = k < n / 2 ? k : k - n;
    spec[k] *= std::polar(1.0, -kTwoPi * signed_k * df * x);
  }
  // The Nyquist bin has no symmetric partner; split it so real data stays real.
  spec[n / 2] *= std::cos(kPi * n * df * x) / std::polar(1.0, kPi * n * df * x);
  kernels::fft(std::span<cplx>(spec.data(), n), +1);
  // The grid origin sits at index n/2; phases above refer to index 0, which
  // is consistent because a translation commutes with the index offset.
  return spec / static_cast<double>(n);
}

namespace {

GridFunction modulate(const ContinuumModel& model, CVector shifted, double w) {
  const int n = model.size();
  for (int m = 0; m < n; ++m) shifted[m] *= expi2pi(model.time(m) * w);
  return GridFunction(model, std::move(shifted));
}

}  // namespace

GridFunction tf_shift(const GridFunction& f, const RPoint& p) {
  require(grid_commensurate(f.model, p.x), ErrorCode::incommensurate_shift,
          "translation is not an integer multiple of the grid step");
  return modulate(f.model, translated_samples(f, p.x), p.w);
}

GridFunction fractional_tf_shift(const GridFunction& f, const RPoint& p) {
  return modulate(f.model, translated_samples(f, p.x), p.w);
}

CMatrix tf_shift_matrix(const FinitePoint& p) {
  const int L = p.L;
  CMatrix m = CMatrix::Zero(L, L);
  for (int t = 0; t < L; ++t) m(t, mod(t - p.x, L)) = unit_root(t * p.w, L);
  return m;
}

}  // namespace qgabor
