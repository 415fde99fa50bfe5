#include "qgabor/nctorus.hpp"

#include <cmath>

#include "qgabor/kernels.hpp"
#include "qgabor/transforms.hpp"

namespace qgabor {

namespace {

cplx alpha(const TwistedSequence& a, LatticeIndex h, LatticeIndex k) {
  return cocycle(a.point(h), a.point(k)).value();
}

void require_same_algebra(const TwistedSequence& a, const TwistedSequence& b) {
  require(a.lattice == b.lattice, ErrorCode::model_mismatch,
          "sequences live on different lattices");
  require(a.twist == b.twist, ErrorCode::model_mismatch, "sequences carry different twists");
}

const FiniteLattice& finite_lattice(const TwistedSequence& a) {
  const auto* D = std::get_if<FiniteLattice>(&a.lattice);
  require(D != nullptr, ErrorCode::model_mismatch, "expected a sequence on a finite lattice");
  return *D;
}

const ContinuumLattice& continuum_lattice(const TwistedSequence& a) {
  const auto* D = std::get_if<ContinuumLattice>(&a.lattice);
  require(D != nullptr, ErrorCode::model_mismatch,
          "expected a sequence on a continuum lattice");
  return *D;
}

std::vector<std::pair<LatticeIndex, cplx>> entries(const TwistedSequence& a) {
  return {a.coeffs.begin(), a.coeffs.end()};
}

}  // namespace

TwistedSequence::TwistedSequence(SeparableLattice lattice_, double s_, Twist twist_)
    : lattice(lattice_), s(s_), twist(twist_) {
  require(s >= 0.0, ErrorCode::invalid_argument, "weight order s must be >= 0");
}

TwistedSequence TwistedSequence::delta(const SeparableLattice& lattice, LatticeIndex at,
                                       cplx value) {
  TwistedSequence out(lattice);
  out.add(at, value);
  return out;
}

LatticeIndex TwistedSequence::canonical(LatticeIndex k) const {
  if (const auto* D = std::get_if<FiniteLattice>(&lattice)) {
    return {mod(k.i, D->count_x()), mod(k.j, D->count_w())};
  }
  return k;
}

TFPoint TwistedSequence::point(LatticeIndex k) const {
  if (const auto* D = std::get_if<FiniteLattice>(&lattice)) return D->point(k.i, k.j);
  return std::get<ContinuumLattice>(lattice).point(k.i, k.j);
}

RPoint TwistedSequence::coordinates(LatticeIndex k) const {
  const TFPoint p = point(k);
  if (const auto* fp = std::get_if<FinitePoint>(&p)) {
    return {static_cast<double>(centered(fp->x, fp->L)),
            static_cast<double>(centered(fp->w, fp->L))};
  }
  return std::get<RPoint>(p);
}

cplx TwistedSequence::at(LatticeIndex k) const {
  const auto it = coeffs.find(canonical(k));
  return it == coeffs.end() ? cplx{} : it->second;
}

void TwistedSequence::add(LatticeIndex k, cplx v) { coeffs[canonical(k)] += v; }

TwistedSequence twisted_convolution(const TwistedSequence& a, const TwistedSequence& b) {
  require_same_algebra(a, b);
  TwistedSequence out(a.lattice, a.s, a.twist);
  if (!a.is_finite()) out.truncation_radius = a.truncation_radius + b.truncation_radius;
  for (const auto& [l, al] : a.coeffs) {
    for (const auto& [m, bm] : b.coeffs) {
      const cplx phase = alpha(a, m, l);
      const cplx twist = a.twist == Twist::standard ? std::conj(phase) : phase;
      out.add({l.i + m.i, l.j + m.j}, al * bm * twist);
    }
  }
  return out;
}

TwistedSequence involution(const TwistedSequence& a) {
  TwistedSequence out(a.lattice, a.s, a.twist);
  out.truncation_radius = a.truncation_radius;
  for (const auto& [h, v] : a.coeffs) {
    const cplx phase = alpha(a, h, h);
    const cplx value = a.twist == Twist::standard ? std::conj(phase * v) : phase * std::conj(v);
    out.add({-h.i, -h.j}, value);
  }
  return out;
}

double weighted_norm(const TwistedSequence& a, double s) {
  require(s >= 0.0, ErrorCode::invalid_argument, "weight order s must be >= 0");
  double acc = 0.0;
  for (const auto& [h, v] : a.coeffs) {
    const RPoint z = a.coordinates(h);
    acc += std::abs(v) * std::pow(1.0 + z.x * z.x + z.w * z.w, 0.5 * s);
  }
  return acc;
}

double max_coefficient_distance(const TwistedSequence& a, const TwistedSequence& b) {
  require(a.lattice == b.lattice, ErrorCode::model_mismatch,
          "sequences live on different lattices");
  double worst = 0.0;
  for (const auto& [h, v] : a.coeffs) worst = std::max(worst, std::abs(v - b.at(h)));
  for (const auto& [h, v] : b.coeffs) worst = std::max(worst, std::abs(v - a.at(h)));
  return worst;
}

FiniteSignal integrated_rep(const TwistedSequence& a, const FiniteSignal& f) {
  const FiniteLattice& D = finite_lattice(a);
  require(f.size() == D.L, ErrorCode::model_mismatch, "signal length differs from lattice L");
  FiniteSignal out = FiniteSignal::Zero(D.L);
  for (const auto& [h, v] : a.coeffs) out += v * tf_shift(f, D.point(h.i, h.j));
  return out;
}

GridFunction integrated_rep(const TwistedSequence& a, const GridFunction& f) {
  const ContinuumLattice& D = continuum_lattice(a);
  const auto terms = entries(a);
  const int n = f.model.size();
  // One shifted copy per coefficient, then a fixed-order sum.
  std::vector<CVector> shifted(terms.size());
  const auto count = static_cast<std::int64_t>(terms.size());
#pragma omp parallel for schedule(dynamic, 4) if (default_exec() == Exec::parallel)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto& [h, v] = terms[t];
    shifted[t] = v * fractional_tf_shift(f, D.point(h.i, h.j)).samples;
  }
  CVector acc = CVector::Zero(n);
  for (const auto& s : shifted) acc += s;
  return GridFunction(f.model, acc);
}

CMatrix representation_matrix(const TwistedSequence& a) {
  const FiniteLattice& D = finite_lattice(a);
  CMatrix M = CMatrix::Zero(D.L, D.L);
  for (const auto& [h, v] : a.coeffs) {
    const FinitePoint p = D.point(h.i, h.j);
    for (int t = 0; t < D.L; ++t) M(t, mod(t - p.x, D.L)) += v * unit_root(t * p.w, D.L);
  }
  return M;
}

TwistedSequence rieffel_inner(Side side, const FiniteSignal& f, const FiniteSignal& g,
                              const FiniteLattice& D) {
  require(f.size() == D.L && g.size() == D.L, ErrorCode::model_mismatch,
          "signal length differs from lattice L");
  if (side == Side::left) {
    const CMatrix V = kernels::stft_finite(f, g, default_exec());
    TwistedSequence out(D);
    for (const LatticeIndex& k : all_indices(D)) out.add(k, V(D.a * k.i, D.b * k.j));
    return out;
  }
  const FiniteLattice Dadj = adjoint_lattice(D);
  const CMatrix V = kernels::stft_finite(g, f, default_exec());
  TwistedSequence out(Dadj, 0.0, Twist::conjugate);
  for (const LatticeIndex& k : all_indices(Dadj)) {
    out.add(k, std::conj(V(Dadj.a * k.i, Dadj.b * k.j)));
  }
  return out;
}

TwistedSequence rieffel_inner(Side side, const GridFunction& f, const GridFunction& g,
                              const ContinuumLattice& D, double radius) {
  require(radius > 0.0, ErrorCode::invalid_argument, "truncation radius must be positive");
  const ContinuumLattice L = side == Side::left ? D : adjoint_lattice(D);
  const auto idx = indices_within(L, radius);
  const auto values = kernels::map_indices(
      idx.size(),
      [&](std::size_t t) {
        const RPoint p = L.point(idx[t].i, idx[t].j);
        return side == Side::left ? stft_at(f, g, p) : std::conj(stft_at(g, f, p));
      },
      default_exec());
  TwistedSequence out(L, 0.0, side == Side::left ? Twist::standard : Twist::conjugate);
  out.truncation_radius = radius;
  for (std::size_t t = 0; t < idx.size(); ++t) out.add(idx[t], values[t]);
  return out;
}

FiniteSignal right_action(const FiniteSignal& f, const TwistedSequence& b,
                          const FiniteLattice& D) {
  require(b.lattice == SeparableLattice(adjoint_lattice(D)), ErrorCode::model_mismatch,
          "right coefficients must live on the adjoint lattice");
  const FiniteLattice& Dadj = std::get<FiniteLattice>(b.lattice);
  FiniteSignal out = FiniteSignal::Zero(D.L);
  for (const auto& [h, v] : b.coeffs) out += std::conj(v) * tf_shift(f, Dadj.point(h.i, h.j));
  return out / lattice_volume(D);
}

GridFunction right_action(const GridFunction& f, const TwistedSequence& b,
                          const ContinuumLattice& D) {
  require(b.lattice == SeparableLattice(adjoint_lattice(D)), ErrorCode::model_mismatch,
          "right coefficients must live on the adjoint lattice");
  TwistedSequence conj_b(b.lattice);
  for (const auto& [h, v] : b.coeffs) conj_b.add(h, std::conj(v) / lattice_volume(D));
  return integrated_rep(conj_b, f);
}

double associativity_residual(const FiniteSignal& f, const FiniteSignal& g,
                              const FiniteSignal& k, const FiniteLattice& D) {
  const FiniteSignal lhs = integrated_rep(rieffel_inner(Side::left, f, g, D), k);
  const FiniteSignal rhs = right_action(f, rieffel_inner(Side::right, g, k, D), D);
  return (lhs - rhs).norm();
}

double associativity_residual(const GridFunction& f, const GridFunction& g,
                              const GridFunction& k, const ContinuumLattice& D,
                              double radius) {
  const GridFunction lhs = integrated_rep(rieffel_inner(Side::left, f, g, D, radius), k);
  const GridFunction rhs = right_action(f, rieffel_inner(Side::right, g, k, D, radius), D);
  return GridFunction(lhs.model, lhs.samples - rhs.samples).norm();
}

TwistedSequence invert_element(const TwistedSequence& a, double tolerance) {
  require(a.is_finite(), ErrorCode::unsupported,
          "algebra inversion is implemented for finite lattices only");
  const FiniteLattice& D = finite_lattice(a);
  const CMatrix M = representation_matrix(a);
  Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (smin <= tolerance) {
    fail(ErrorCode::not_invertible,
         "representation is singular (min singular value " + std::to_string(smin) + ")");
  }
  const CMatrix Minv = svd.solve(CMatrix::Identity(D.L, D.L));
  TwistedSequence out(a.lattice, a.s, a.twist);
  for (const LatticeIndex& k : all_indices(D)) {
    const FinitePoint p = D.point(k.i, k.j);
    // tr(Minv pi(p)^H) = sum_t Minv(t, t - x) conj(e^{2 pi i t w / L})
    cplx acc{};
    for (int t = 0; t < D.L; ++t) {
      acc += Minv(t, mod(t - p.x, D.L)) * std::conj(unit_root(t * p.w, D.L));
    }
    out.add(k, acc / static_cast<double>(D.L));
  }
  return out;
}

}  // namespace qgabor
