#include "qgabor/gabor.hpp"

#include <cmath>

namespace qgabor {

namespace {

void require_model(const FiniteGaborSystem& sys, const FiniteSignal& f) {
  require(f.size() == sys.lattice.L, ErrorCode::model_mismatch,
          "signal length differs from the system's L");
}

void require_model(const ContinuumGaborSystem& sys, const GridFunction& f) {
  require(f.model == sys.atom.model, ErrorCode::model_mismatch,
          "signal grid differs from the system's grid");
}

// Columns pi(l) w for l in D, in all_indices order.
CMatrix shifted_atoms(const FiniteLattice& D, const FiniteSignal& w) {
  const auto idx = all_indices(D);
  CMatrix phi(D.L, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    phi.col(static_cast<Eigen::Index>(c)) = tf_shift(w, D.point(idx[c].i, idx[c].j));
  }
  return phi;
}

cplx sum_on_lattice(const CMatrix& values, const FiniteLattice& D) {
  cplx acc{};
  for (const LatticeIndex& k : all_indices(D)) acc += values(D.a * k.i, D.b * k.j);
  return acc;
}

cplx figa_side(const GridFunction& f1, const GridFunction& f2, const GridFunction& g1,
               const GridFunction& g2, const ContinuumLattice& L, double radius) {
  const auto idx = indices_within(L, radius);
  const auto terms = kernels::map_indices(
      idx.size(),
      [&](std::size_t t) {
        const RPoint p = L.point(idx[t].i, idx[t].j);
        return stft_at(f1, g1, p) * std::conj(stft_at(f2, g2, p));
      },
      default_exec());
  return kernels::ordered_sum(terms);
}

}  // namespace

FiniteGaborSystem make_gabor_system(FiniteSignal g, const FiniteLattice& D) {
  make_finite_lattice(D.L, D.a, D.b);
  require(g.size() == D.L, ErrorCode::model_mismatch, "atom length differs from lattice L");
  require(g.norm() > 0.0, ErrorCode::degenerate_window, "atom is identically zero");
  return {std::move(g), D};
}

ContinuumGaborSystem make_gabor_system(GridFunction g, const ContinuumLattice& D,
                                       double radius) {
  require(g.samples.norm() > 0.0, ErrorCode::degenerate_window, "atom is identically zero");
  if (radius <= 0.0) radius = 0.5 * g.model.extent;
  return {std::move(g), make_continuum_lattice(D.a, D.b), radius};
}

TwistedSequence analysis(const FiniteGaborSystem& sys, const FiniteSignal& f) {
  require_model(sys, f);
  return rieffel_inner(Side::left, f, sys.atom, sys.lattice);
}

TwistedSequence analysis(const ContinuumGaborSystem& sys, const GridFunction& f) {
  require_model(sys, f);
  return rieffel_inner(Side::left, f, sys.atom, sys.lattice, sys.radius);
}

FiniteSignal synthesis(const FiniteGaborSystem& sys, const TwistedSequence& c) {
  require(c.lattice == SeparableLattice(sys.lattice), ErrorCode::model_mismatch,
          "coefficients are not indexed by the system's lattice");
  return integrated_rep(c, sys.atom);
}

GridFunction synthesis(const ContinuumGaborSystem& sys, const TwistedSequence& c) {
  require(c.lattice == SeparableLattice(sys.lattice), ErrorCode::model_mismatch,
          "coefficients are not indexed by the system's lattice");
  return integrated_rep(c, sys.atom);
}

FiniteSignal frame_operator(const FiniteGaborSystem& sys, const FiniteSignal& f) {
  return synthesis(sys, analysis(sys, f));
}

GridFunction frame_operator(const ContinuumGaborSystem& sys, const GridFunction& f) {
  return synthesis(sys, analysis(sys, f));
}

FiniteSignal frame_type_operator(const FiniteGaborSystem& sys, const FiniteSignal& h,
                                 const FiniteSignal& f) {
  require_model(sys, h);
  require_model(sys, f);
  return integrated_rep(rieffel_inner(Side::left, f, h, sys.lattice), sys.atom);
}

GridFunction frame_type_operator(const ContinuumGaborSystem& sys, const GridFunction& h,
                                 const GridFunction& f) {
  require_model(sys, h);
  require_model(sys, f);
  return integrated_rep(rieffel_inner(Side::left, f, h, sys.lattice, sys.radius), sys.atom);
}

CMatrix frame_type_matrix(const FiniteGaborSystem& sys, const FiniteSignal& h, Exec exec) {
  require_model(sys, h);
  return kernels::outer_sum(shifted_atoms(sys.lattice, sys.atom),
                            shifted_atoms(sys.lattice, h), exec);
}

CMatrix frame_operator_matrix(const FiniteGaborSystem& sys, Exec exec) {
  const CMatrix phi = shifted_atoms(sys.lattice, sys.atom);
  return kernels::outer_sum(phi, phi, exec);
}

FrameBounds frame_bounds(const FiniteGaborSystem& sys) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(frame_operator_matrix(sys),
                                             Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    fail(ErrorCode::numerical, "Hermitian eigensolver did not converge for L = " +
                                   std::to_string(sys.lattice.L));
  }
  const RVector& ev = eig.eigenvalues();
  return {std::max(0.0, ev[0]), ev[ev.size() - 1]};
}

FrameBounds frame_bounds(const ContinuumGaborSystem&) {
  fail(ErrorCode::unsupported, "frame bounds are computed in the finite model only");
}

FiniteSignal dual_window(const FiniteGaborSystem& sys, DualMode mode) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(frame_operator_matrix(sys));
  if (eig.info() != Eigen::Success) fail(ErrorCode::numerical, "eigensolver failed");
  const RVector& ev = eig.eigenvalues();
  const FrameBounds fb{std::max(0.0, ev[0]), ev[ev.size() - 1]};
  if (!fb.is_frame()) {
    fail(ErrorCode::not_a_frame, "not a frame: A/B = " + std::to_string(fb.A / fb.B));
  }
  RVector scale(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    scale[i] = mode == DualMode::dual ? 1.0 / ev[i] : 1.0 / std::sqrt(ev[i]);
  }
  const CMatrix& U = eig.eigenvectors();
  return U * (scale.cast<cplx>().asDiagonal() * (U.adjoint() * sys.atom));
}

JanssenResult janssen_operator(const FiniteGaborSystem& sys, const FiniteSignal& h) {
  require_model(sys, h);
  const FiniteLattice Dadj = adjoint_lattice(sys.lattice);
  const CMatrix V = kernels::stft_finite(sys.atom, h, default_exec());
  const double inv_vol = 1.0 / lattice_volume(sys.lattice);
  JanssenResult out{TwistedSequence(Dadj), 0.0, true, 0.0};
  for (const LatticeIndex& k : all_indices(Dadj)) {
    out.coeffs.add(k, inv_vol * V(Dadj.a * k.i, Dadj.b * k.j));
  }
  return out;
}

JanssenResult janssen_operator(const ContinuumGaborSystem& sys, const GridFunction& h,
                               double tolerance) {
  require_model(sys, h);
  const ContinuumLattice Dadj = adjoint_lattice(sys.lattice);
  const double inv_vol = 1.0 / lattice_volume(sys.lattice);
  const double R = sys.radius;
  const double shell = 2.0 * std::hypot(Dadj.a, Dadj.b);
  const auto idx = indices_within(Dadj, R);
  const auto values = kernels::map_indices(
      idx.size(),
      [&](std::size_t t) {
        return inv_vol * stft_at(sys.atom, h, Dadj.point(idx[t].i, idx[t].j));
      },
      default_exec());
  JanssenResult out{TwistedSequence(Dadj), 0.0, true, R};
  out.coeffs.truncation_radius = R;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    out.coeffs.add(idx[t], values[t]);
    if (Dadj.point(idx[t].i, idx[t].j).norm() > R - shell) out.tail += std::abs(values[t]);
  }
  out.certified = out.tail < tolerance;
  return out;
}

double figa_residual(const FiniteSignal& f1, const FiniteSignal& f2, const FiniteSignal& g1,
                     const FiniteSignal& g2, const FiniteLattice& D) {
  for (const FiniteSignal* s : {&f1, &f2, &g1, &g2}) {
    require(s->size() == D.L, ErrorCode::model_mismatch, "signal length differs from L");
  }
  const Exec exec = default_exec();
  const CMatrix lhs = kernels::stft_finite(f1, g1, exec).array() *
                      kernels::stft_finite(f2, g2, exec).array().conjugate();
  const CMatrix rhs = kernels::stft_finite(g2, g1, exec).array() *
                      kernels::stft_finite(f2, f1, exec).array().conjugate();
  const FiniteLattice Dadj = adjoint_lattice(D);
  return std::abs(sum_on_lattice(lhs, D) - sum_on_lattice(rhs, Dadj) / lattice_volume(D));
}

double figa_residual(const GridFunction& f1, const GridFunction& f2, const GridFunction& g1,
                     const GridFunction& g2, const ContinuumLattice& D, double radius) {
  require(radius > 0.0, ErrorCode::invalid_argument, "truncation radius must be positive");
  const cplx lhs = figa_side(f1, f2, g1, g2, D, radius);
  const cplx rhs = figa_side(g2, f2, g1, f1, adjoint_lattice(D), radius);
  return std::abs(lhs - rhs / lattice_volume(D));
}

double poisson_residual(const TFMatrix& F, const SeparableLattice& D) {
  const TFMatrix Fs = symplectic_fourier(F);
  if (const auto* fl = std::get_if<FiniteLattice>(&D)) {
    const auto* fm = std::get_if<FiniteModel>(&F.model);
    require(fm != nullptr && fm->L == fl->L, ErrorCode::model_mismatch,
            "TF matrix and lattice belong to different models");
    const cplx lhs = sum_on_lattice(F.values, *fl);
    const cplx rhs = sum_on_lattice(Fs.values, adjoint_lattice(*fl));
    return std::abs(lhs - rhs / lattice_volume(*fl));
  }
  const auto* cm = std::get_if<ContinuumModel>(&F.model);
  require(cm != nullptr, ErrorCode::model_mismatch,
          "TF matrix and lattice belong to different models");
  const auto& cl = std::get<ContinuumLattice>(D);
  auto grid_sum = [&](const CMatrix& values, const ContinuumLattice& L) {
    std::int64_t sx = 0;
    std::int64_t sw = 0;
    ContinuumModel freq_axis = *cm;
    freq_axis.step = cm->freq_step();
    require(grid_commensurate(*cm, L.a, &sx) && grid_commensurate(freq_axis, L.b, &sw),
            ErrorCode::incommensurate_shift, "lattice does not sit on the TF grid");
    const std::int64_t n = cm->size();
    const std::int64_t c = n / 2;
    cplx acc{};
    for (std::int64_t i = -c / sx; i <= c / sx; ++i) {
      for (std::int64_t j = -c / sw; j <= c / sw; ++j) {
        const std::int64_t r = c + i * sx;
        const std::int64_t k = c + j * sw;
        if (r >= 0 && r < n && k >= 0 && k < n) acc += values(r, k);
      }
    }
    return acc;
  };
  const cplx lhs = grid_sum(F.values, cl);
  const cplx rhs = grid_sum(Fs.values, adjoint_lattice(cl));
  return std::abs(lhs - rhs / lattice_volume(cl));
}

FrameReport frame_report(const FiniteGaborSystem& sys, std::string atom_descriptor) {
  FrameReport r;
  r.lattice = sys.lattice;
  r.atom_descriptor = std::move(atom_descriptor);
  r.bounds = frame_bounds(sys);
  r.redundancy = 1.0 / lattice_volume(sys.lattice);
  r.janssen_tail = janssen_operator(sys, sys.atom).tail;
  r.truncation_radius = 0.0;
  return r;
}

}  // namespace qgabor
