#include "qtt/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtt/errors.hpp"

// Plane-wave convention
// ---------------------
// Outside any barrier the wavefunction is psi = A e^{ikx} + B e^{-ikx} with
// k = sqrt(E) (units 2m = hbar = 1, so E = k^2) and with A, B referenced to
// the global origin, not to the segment edges. The transfer matrix maps the
// coefficients on the right of a region to those on its left,
//   (A_l, B_l)^T = M (A_r, B_r)^T,
// so for a wave incident from the left, t = 1/M11 and r = M21/M11. A region
// of zero potential is then exactly the identity, and the product of segment
// matrices taken left to right is the matrix of the whole structure.
//
// For one constant segment of height V on [0, w] the matching of psi and
// psi' at both edges gives
//   M11 = e^{ikw} [ C + i ((V - 2E)/2k) S ],      M22 = conj(M11),
//   M12 = e^{-ikw} i (V/2k) S,                    M21 = conj(M12),
// with C = cosh(q w), S = sinh(q w)/q for E < V (q = sqrt(V-E)),
// C = cos(k'w), S = sin(k'w)/k' for E > V (k' = sqrt(E-V)), and both
// replaced by their common power series in (V-E) w^2 near E = V. Shifting
// the segment to [x0, x0+w] multiplies M12 by e^{-2ikx0} and M21 by
// e^{+2ikx0}; M11 is unaffected. The determinant is C^2 - (V-E) S^2 = 1.
//
// For E < V the hyperbolic growth e^{qw} is pulled out into the scale
// exponent, so the stored entries stay order one no matter how opaque the
// segment is.

namespace qtt {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void ScaledMatrix2::normalize() {
  const double mag = std::max(std::max(std::abs(m11), std::abs(m12)),
                              std::max(std::abs(m21), std::abs(m22)));
  if (mag > 0.0 && std::isfinite(mag) && (mag > 4.0 || mag < 0.25)) {
    m11 /= mag;
    m12 /= mag;
    m21 /= mag;
    m22 /= mag;
    scale += std::log(mag);
  }
}

ScaledMatrix2 operator*(const ScaledMatrix2& a, const ScaledMatrix2& b) {
  ScaledMatrix2 r;
  r.m11 = a.m11 * b.m11 + a.m12 * b.m21;
  r.m12 = a.m11 * b.m12 + a.m12 * b.m22;
  r.m21 = a.m21 * b.m11 + a.m22 * b.m21;
  r.m22 = a.m21 * b.m12 + a.m22 * b.m22;
  r.scale = a.scale + b.scale;
  r.normalize();
  return r;
}

double TransmissionCoefficient::v() const {
  return std::exp(-2.0 * log_magnitude);
}

double TransmissionCoefficient::sqrt_v() const {
  return std::exp(-log_magnitude);
}

Complex TransmissionCoefficient::amplitude() const {
  return std::polar(std::exp(log_magnitude), phase);
}

ScaledMatrix2 segment_matrix(double energy, double height, double width,
                             double x0) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw std::invalid_argument("segment energy must be positive");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("segment width must be positive");
  }
  if (!std::isfinite(height)) {
    throw std::invalid_argument("segment height must be finite");
  }
  if (!std::isfinite(x0)) {
    throw std::invalid_argument("segment position must be finite");
  }

  const double k = std::sqrt(energy);
  const double u = height - energy;  // q^2 (negative above the barrier)

  double big_c;         // cosh(qw) / cos(k'w), scaled by e^{-sigma}
  double big_s;         // sinh(qw)/q / sin(k'w)/k', scaled by e^{-sigma}
  double sigma;
  const double switch_tol = 1e-8 * std::max(1.0, std::abs(height));
  if (std::abs(u) < switch_tol) {
    // series around q = 0; exact to O((u w^2)^4)
    const double uw2 = u * width * width;
    big_c = 1.0 + uw2 * (0.5 + uw2 * (1.0 / 24.0 + uw2 / 720.0));
    big_s = width *
            (1.0 + uw2 * (1.0 / 6.0 + uw2 * (1.0 / 120.0 + uw2 / 5040.0)));
    sigma = 0.0;
  } else if (u > 0.0) {
    const double q = std::sqrt(u);
    const double d = std::exp(-2.0 * q * width);
    sigma = q * width;
    big_c = 0.5 * (1.0 + d);
    big_s = -std::expm1(-2.0 * q * width) / (2.0 * q);
  } else {
    const double kp = std::sqrt(-u);
    big_c = std::cos(kp * width);
    big_s = std::sin(kp * width) / kp;
    sigma = 0.0;
  }

  const double diag_coeff = (height - 2.0 * energy) / (2.0 * k);
  const double off_coeff = height / (2.0 * k);
  const Complex edge = std::polar(1.0, k * width);
  const Complex m11 = edge * Complex(big_c, diag_coeff * big_s);
  const Complex m12 = std::conj(edge) * Complex(0.0, off_coeff * big_s);

  const Complex shift = std::polar(1.0, 2.0 * k * x0);
  ScaledMatrix2 m;
  m.m11 = m11;
  m.m12 = m12 * std::conj(shift);
  m.m21 = std::conj(m12) * shift;
  m.m22 = std::conj(m11);
  m.scale = sigma;
  return m;
}

ScaledMatrix2 cell_matrix(double energy,
                          const PiecewiseConstantPotential& potential,
                          double x0) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw std::invalid_argument("cell energy must be positive");
  }
  ScaledMatrix2 acc = ScaledMatrix2::identity();
  double pos = x0;
  for (const auto& seg : potential.segments()) {
    // free stretches are exactly the identity in this convention
    if (seg.height != 0.0) {
      acc = acc * segment_matrix(energy, seg.height, seg.width, pos);
    }
    pos += seg.width;
  }
  return acc;
}

TransmissionCoefficient transmission(const ScaledMatrix2& m, double energy) {
  const double mag = std::abs(m.m11);
  if (!(mag > 0.0) || !std::isfinite(mag)) {
    throw DegenerateMatrixError(
        "transfer matrix (1,1) entry vanishes; no transmission amplitude");
  }
  TransmissionCoefficient t;
  t.log_magnitude = -(m.scale + std::log(mag));
  t.phase = wrap_phase(-std::arg(m.m11));
  t.energy = energy;
  return t;
}

Complex reflection(const ScaledMatrix2& m) {
  const double mag = std::abs(m.m11);
  if (!(mag > 0.0) || !std::isfinite(mag)) {
    throw DegenerateMatrixError(
        "transfer matrix (1,1) entry vanishes; no reflection amplitude");
  }
  return m.m21 / m.m11;
}

double wrap_phase(double angle) {
  double w = std::remainder(angle, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
  std::vector<double> out;
  out.reserve(wrapped.size());
  if (wrapped.empty()) return out;
  out.push_back(wrapped.front());
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    const double jump = wrap_phase(wrapped[i] - wrapped[i - 1]);
    out.push_back(out.back() + jump);
  }
  return out;
}

}  // namespace qtt
