#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qgabor {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i t}
inline cplx expi2pi(double t) { return std::polar(1.0, kTwoPi * t); }

// <a, b> = sum a conj(b), linear in the first slot.
inline cplx inner(const CVector& a, const CVector& b) { return b.dot(a); }

}  // namespace qgabor
