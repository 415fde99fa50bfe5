#include "qgabor/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgabor/kernels.hpp"

namespace qgabor {

namespace {

RMatrix positive_block(const SiegelMatrix& T) {
  return T.tag() == SiegelTag::decay ? RMatrix(T.T().real()) : RMatrix(T.T().imag());
}

RMatrix other_block(const SiegelMatrix& T) {
  return T.tag() == SiegelTag::decay ? RMatrix(T.T().imag()) : RMatrix(T.T().real());
}

void require_decay(const SiegelMatrix& T) {
  require(T.tag() == SiegelTag::decay, ErrorCode::invalid_argument,
          "non-decaying Gaussian: sampling needs a decay-tagged matrix (Re T > 0)");
}

// log(<g_T, pi(z) g_T> / <g_T, g_T>)
cplx ambiguity_log(const SiegelMatrix& T, const RVector& z) {
  const int N = T.dim();
  require(z.size() == 2 * N, ErrorCode::invalid_argument, "point dimension differs from 2N");
  const CMatrix A = (2.0 * T.T().real()).cast<cplx>();
  const CVector x = z.head(N).cast<cplx>();
  const CVector w = z.tail(N).cast<cplx>();
  const CVector b = 2.0 * (T.T().conjugate() * x) - cplx(0.0, kTwoPi) * w;
  const CVector Ainv_b = A.partialPivLu().solve(b);
  const cplx bAb = (b.transpose() * Ainv_b)(0);
  const cplx xTx = (x.transpose() * T.T().conjugate() * x)(0);
  return 0.25 * bAb - xTx;
}

// Exact min of h^T G h + b^T h over |h| >= rho (G positive definite).
double min_outside_ball(const RMatrix& G, const RVector& b, double rho) {
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(G);
  const RVector& lam = eig.eigenvalues();
  const RVector beta = eig.eigenvectors().transpose() * b;
  auto value = [&](const RVector& u) {
    return (lam.array() * u.array().square()).sum() + beta.dot(u);
  };
  auto point = [&](double mu) {
    RVector u(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) u[i] = -beta[i] / (2.0 * (lam[i] + mu));
    return u;
  };
  const RVector u0 = point(0.0);
  if (u0.norm() >= rho) return value(u0);
  // |u(mu)| decreases on (-lam_0, 0]; find |u| = rho.
  double lo = -lam[0];
  double hi = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (point(mid).norm() > rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  RVector u = point(hi);
  const double n2 = u.squaredNorm();
  if (n2 < rho * rho) {
    // beta has (almost) no component along the softest direction: put the
    // missing radius there.
    const double rest = n2 - u[0] * u[0];
    u[0] = (beta[0] > 0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, rho * rho - rest));
  }
  const double q = value(u);
  return q - 1e-9 * (1.0 + std::abs(q));
}

double ball_volume(int dim, double r) {
  r = std::max(0.0, r);
  return dim == 2 ? kPi * r * r : 0.5 * kPi * kPi * r * r * r * r;
}

}  // namespace

SiegelMatrix::SiegelMatrix(CMatrix T, SiegelTag tag) : T_(std::move(T)), tag_(tag) {
  require(T_.rows() == T_.cols() && (T_.rows() == 1 || T_.rows() == 2),
          ErrorCode::invalid_argument, "T must be N x N with N in {1, 2}");
  const double scale = std::max(1.0, T_.norm());
  require((T_ - T_.transpose()).norm() <= 1e-12 * scale, ErrorCode::invalid_argument,
          "T is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(positive_block(*this));
  require(eig.eigenvalues()[0] > 0.0, ErrorCode::invalid_argument,
          tag_ == SiegelTag::decay ? "Re T is not positive definite"
                                   : "Im T is not positive definite");
}

SiegelMatrix SiegelMatrix::scalar(cplx t, SiegelTag tag) {
  CMatrix T(1, 1);
  T(0, 0) = t;
  return SiegelMatrix(T, tag);
}

GridFunction gaussian_window(const SiegelMatrix& T, const ContinuumModel& model) {
  require_decay(T);
  require(T.dim() == 1 && model.N == 1, ErrorCode::unsupported,
          "sampled windows are one-dimensional");
  const cplx t = T.T()(0, 0);
  GridFunction g = GridFunction::zeros(model);
  for (int m = 0; m < model.size(); ++m) {
    const double x = model.time(m);
    g.samples[m] = std::exp(-t * x * x);
  }
  return g;
}

FiniteSignal gaussian_window(const SiegelMatrix& T, const FiniteModel& model) {
  require_decay(T);
  require(T.dim() == 1, ErrorCode::unsupported, "finite windows are one-dimensional");
  const cplx t = T.T()(0, 0);
  const int L = model.L;
  const int M = 2 + static_cast<int>(std::ceil(std::sqrt(50.0 / (t.real() * L))));
  FiniteSignal g(L);
  for (int n = 0; n < L; ++n) {
    cplx acc{};
    for (int m = -M; m <= M; ++m) {
      const double u = static_cast<double>(n + m * L);
      acc += std::exp(-t * (u * u / L));
    }
    g[n] = acc;
  }
  return g;
}

RMatrix symplectic_form(int N) {
  RMatrix J = RMatrix::Zero(2 * N, 2 * N);
  J.topRightCorner(N, N) = RMatrix::Identity(N, N);
  J.bottomLeftCorner(N, N) = -RMatrix::Identity(N, N);
  return J;
}

GTFactorization gt_matrix(const SiegelMatrix& T) {
  const int N = T.dim();
  const RMatrix P = positive_block(T);
  const RMatrix Q = other_block(T);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(P);
  if (eig.info() != Eigen::Success || eig.eigenvalues()[0] <= 0.0) {
    fail(ErrorCode::numerical, "positive block of T is singular");
  }
  const RMatrix Pinv = eig.operatorInverseSqrt() * eig.operatorInverseSqrt();
  const RMatrix Psqrt = eig.operatorSqrt();
  const RMatrix Pisqrt = eig.operatorInverseSqrt();
  GTFactorization out{RMatrix(2 * N, 2 * N), RMatrix::Zero(2 * N, 2 * N)};
  out.G.topLeftCorner(N, N) = P + Q * Pinv * Q;
  out.G.topRightCorner(N, N) = Q * Pinv;
  out.G.bottomLeftCorner(N, N) = Pinv * Q;
  out.G.bottomRightCorner(N, N) = Pinv;
  out.S.topLeftCorner(N, N) = Psqrt;
  out.S.bottomLeftCorner(N, N) = Pisqrt * Q;
  out.S.bottomRightCorner(N, N) = Pisqrt;
  return out;
}

cplx gaussian_ambiguity(const SiegelMatrix& T, const RVector& z) {
  require_decay(T);
  const int N = T.dim();
  const double detA = (2.0 * RMatrix(T.T().real())).determinant();
  const double norm2 = std::pow(kPi, 0.5 * N) / std::sqrt(detA);
  return norm2 * std::exp(ambiguity_log(T, z));
}

cplx gaussian_ambiguity(const SiegelMatrix& T, const RPoint& z) {
  RVector v(2);
  v << z.x, z.w;
  return gaussian_ambiguity(T, v);
}

CMatrix ambiguity_exponent(const SiegelMatrix& T) {
  require_decay(T);
  const int d = 2 * T.dim();
  CMatrix Q(d, d);
  auto E = [&](int i, int j) {
    RVector z = RVector::Zero(d);
    z[i] += 1.0;
    z[j] += 1.0;
    return ambiguity_log(T, z);
  };
  for (int i = 0; i < d; ++i) Q(i, i) = -0.25 * E(i, i);
  // E(e_i + e_j) = -(Q_ii + Q_jj + 2 Q_ij)
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Q(i, j) = Q(j, i) = -0.5 * (E(i, j) + Q(i, i) + Q(j, j));
    }
  }
  return Q;
}

double gaussian_lattice_tail(const RMatrix& Gq, const RVector& b,
                             const GeneralLattice& lattice, double R) {
  const int dim = 2 * lattice.dim();
  require(Gq.rows() == dim && b.size() == dim, ErrorCode::invalid_argument,
          "tail form dimension differs from the lattice");
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(Gq);
  require(eig.eigenvalues()[0] > 0.0, ErrorCode::invalid_argument,
          "tail form is not positive definite");
  const double d = lattice.cell_diameter();
  const double vol = lattice_volume(lattice);
  const double peak_radius = 0.5 * Gq.ldlt().solve(b).norm();
  double total = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100000; ++k) {
    const double rho = R + k * d;
    const double m = min_outside_ball(Gq, b, rho);
    const double count =
        (ball_volume(dim, rho + 2.0 * d) - ball_volume(dim, rho - d)) / vol;
    const double term = count * std::exp(-kPi * m);
    total += term;
    if (rho > peak_radius && term < previous &&
        (term == 0.0 || term < 1e-30 * total)) {
      break;
    }
    previous = term;
  }
  return total;
}

QuantumTheta quantum_theta(const SiegelMatrix& T, const ContinuumLattice& D, double radius,
                           double tolerance) {
  require_decay(T);
  require(T.dim() == 1, ErrorCode::unsupported, "quantum theta elements use N = 1");
  require(radius > 0.0, ErrorCode::invalid_argument, "truncation radius must be positive");
  const ContinuumLattice Dadj = adjoint_lattice(D);
  const double inv_vol = 1.0 / lattice_volume(D);
  const double c0 = std::abs(gaussian_ambiguity(T, RPoint{0.0, 0.0}));
  const RMatrix decay = ambiguity_exponent(T).real() / kPi;
  const double tail =
      inv_vol * c0 *
      gaussian_lattice_tail(decay, RVector::Zero(2), GeneralLattice::from(Dadj), radius);
  if (!(tail < tolerance)) {
    fail(ErrorCode::insufficient_radius,
         "theta coefficient tail bound " + std::to_string(tail) + " at radius " +
             std::to_string(radius) + " exceeds tolerance");
  }
  QuantumTheta out{TwistedSequence(Dadj), Dadj, radius, tail};
  out.coeffs.truncation_radius = radius;
  for (const LatticeIndex& k : indices_within(Dadj, radius)) {
    out.coeffs.add(k, inv_vol * gaussian_ambiguity(T, Dadj.point(k.i, k.j)));
  }
  return out;
}

double default_truncation_radius(const SiegelMatrix& T, const ContinuumLattice& D,
                                 double tolerance) {
  require_decay(T);
  const ContinuumLattice Dadj = adjoint_lattice(D);
  const double c0 = std::abs(gaussian_ambiguity(T, RPoint{0.0, 0.0})) / lattice_volume(D);
  const RMatrix decay = ambiguity_exponent(T).real() / kPi;
  const GeneralLattice G = GeneralLattice::from(Dadj);
  for (double R = 0.25; R <= 1000.0; R += 0.25) {
    if (c0 * gaussian_lattice_tail(decay, RVector::Zero(2), G, R) < tolerance) return R;
  }
  fail(ErrorCode::insufficient_radius, "no truncation radius up to 1000 meets the tolerance");
}

double quasi_periodicity_residual(const TwistedSequence& c, const SiegelMatrix& T) {
  const CMatrix Q = ambiguity_exponent(T);
  require(Q.rows() == 2, ErrorCode::unsupported, "coefficient sequences are two-dimensional");
  const cplx c0 = c.at({0, 0});
  require(std::abs(c0) > 0.0, ErrorCode::invalid_argument, "zero coefficient at the origin");
  double worst = 0.0;
  for (const auto& [h, ch] : c.coeffs) {
    const RPoint zh = c.coordinates(h);
    for (const auto& [k, ck] : c.coeffs) {
      const auto it = c.coeffs.find(c.canonical({h.i + k.i, h.j + k.j}));
      if (it == c.coeffs.end()) continue;
      const RPoint zk = c.coordinates(k);
      const cplx cross = zh.x * (Q(0, 0) * zk.x + Q(0, 1) * zk.w) +
                         zh.w * (Q(1, 0) * zk.x + Q(1, 1) * zk.w);
      const cplx predicted = ch * ck / c0 * std::exp(-2.0 * cross);
      worst = std::max(worst, std::abs(it->second - predicted));
    }
  }
  return worst;
}

TwistedSequence finite_quantum_theta(const SiegelMatrix& T, const FiniteLattice& D) {
  const FiniteSignal g = gaussian_window(T, FiniteModel{D.L});
  return janssen_operator(make_gabor_system(g, D), g).coeffs;
}

ThetaValue theta_series(const SiegelMatrix& T, const GeneralLattice& D, const RVector& x,
                        double radius, double tolerance) {
  const int N = T.dim();
  require(D.dim() == N, ErrorCode::model_mismatch, "lattice dimension differs from T");
  require(x.size() == 2 * N, ErrorCode::invalid_argument, "x must have 2N coordinates");
  require(radius > 0.0, ErrorCode::invalid_argument, "truncation radius must be positive");
  const RMatrix G = gt_matrix(T).G;
  const RVector Gx = G * x;
  const double tail = gaussian_lattice_tail(G, Gx, D, radius);
  if (!(tail < tolerance)) {
    fail(ErrorCode::insufficient_radius,
         "theta tail bound " + std::to_string(tail) + " at radius " + std::to_string(radius) +
             " exceeds tolerance");
  }
  const RMatrix J = symplectic_form(N);
  const auto points = D.points_within(radius);
  const auto terms = kernels::map_indices(
      points.size(),
      [&](std::size_t t) {
        const RVector& h = points[t];
        const double sigma = x.dot(J * h);
        return std::exp(cplx(-kPi * (h.dot(G * h) + Gx.dot(h)), -kPi * sigma));
      },
      default_exec());
  return {kernels::ordered_sum(terms), tail, radius};
}

double functional_equation_residual(const SiegelMatrix& T, const GeneralLattice& D,
                                    const RVector& x, double radius, double tolerance) {
  const ThetaValue lhs = theta_series(T, D, x, radius, tolerance);
  const ThetaValue rhs = theta_series(T, adjoint_lattice(D), x, radius, tolerance);
  return std::abs(lhs.value - rhs.value / lattice_volume(D));
}

ProbeReport invertibility_probe(double a, double b, int L, double threshold) {
  require(a > 0.0 && b > 0.0, ErrorCode::invalid_argument, "lattice steps must be positive");
  make_finite_model(L);
  const double ab = a * b;
  for (int Lp = L; Lp <= 4 * L; ++Lp) {
    std::vector<int> divisors;
    for (int d = 1; d <= Lp; ++d) {
      if (Lp % d == 0) divisors.push_back(d);
    }
    int best_a = 0;
    int best_b = 0;
    double best_err = 0.0;
    double best_aspect = 0.0;
    for (int da : divisors) {
      for (int db : divisors) {
        const double err = std::abs(static_cast<double>(da) * db / Lp - ab) / ab;
        if (err > 0.05) continue;
        const double aspect = std::abs(std::log(static_cast<double>(da) / db));
        const bool better = best_a == 0 || err < best_err - 1e-12 ||
                            (std::abs(err - best_err) <= 1e-12 && aspect < best_aspect);
        if (better) {
          best_a = da;
          best_b = db;
          best_err = err;
          best_aspect = aspect;
        }
      }
    }
    if (best_a == 0) continue;
    const SiegelMatrix T = SiegelMatrix::scalar(kPi * best_b / best_a);
    const FiniteGaborSystem sys =
        make_gabor_system(gaussian_window(T, FiniteModel{Lp}), make_finite_lattice(Lp, best_a, best_b));
    const FrameBounds fb = frame_bounds(sys);
    ProbeReport r;
    r.ab = ab;
    r.L = Lp;
    r.a = best_a;
    r.b = best_b;
    r.density = static_cast<double>(best_a) * best_b / Lp;
    r.A = fb.A;
    r.B = fb.B;
    r.ratio = fb.A / fb.B;
    r.invertible = r.ratio > threshold;
    return r;
  }
  fail(ErrorCode::lattice_approximation,
       "no divisor pair approximates density " + std::to_string(ab) + " within 5%");
}

}  // namespace qgabor
