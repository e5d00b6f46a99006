#ifndef QTT_TRANSFER_HPP
#define QTT_TRANSFER_HPP

#include <complex>
#include <vector>

#include "qtt/potential.hpp"

namespace qtt {

using Complex = std::complex<double>;

// 2x2 complex transfer matrix stored as order-one entries plus a real
// log-scale exponent: the true matrix is exp(scale) times the stored
// entries. The separate exponent keeps products over opaque barriers
// (exponentially growing entries) representable in ordinary doubles.
//
// Convention: the matrix relates plane-wave coefficients referenced to the
// global origin, (A_left, B_left)^T = M (A_right, B_right)^T for
// psi = A e^{ikx} + B e^{-ikx}. A zero potential therefore maps to the
// identity and the transmission amplitude is t = 1/M11.
struct ScaledMatrix2 {
  Complex m11{1.0, 0.0};
  Complex m12{0.0, 0.0};
  Complex m21{0.0, 0.0};
  Complex m22{1.0, 0.0};
  double scale = 0.0;

  static ScaledMatrix2 identity() { return ScaledMatrix2{}; }

  // Determinant of the stored entries; the true determinant is
  // exp(2*scale) times this.
  Complex det_stored() const { return m11 * m22 - m12 * m21; }

  // Fold a factor into `scale` so the largest stored entry is order one.
  void normalize();
};

// Product of true matrices, entries renormalized after the multiply.
ScaledMatrix2 operator*(const ScaledMatrix2& a, const ScaledMatrix2& b);

// Transmission amplitude t = |t| e^{i delta} of a cell, kept as ln|t| plus
// the phase wrapped to (-pi, pi]. Unwrapping is a scan-level operation; a
// single point carries no branch information.
struct TransmissionCoefficient {
  double log_magnitude;  // ln|t|; <= 0 for passive real potentials
  double phase;          // delta, wrapped to (-pi, pi]
  double energy;

  double v() const;       // 1/|t|^2
  double sqrt_v() const;  // 1/|t| = e^{-log_magnitude}
  Complex amplitude() const;
};

// Transfer matrix of a constant segment of the given height occupying
// [x0, x0+width], with coefficients referenced to the global origin.
// Evanescent (E < height), oscillatory (E > height) and the E ~ height
// series limit are all handled; the evanescent growth goes into `scale`.
ScaledMatrix2 segment_matrix(double energy, double height, double width,
                             double x0);

// Ordered product of segment matrices of the potential, which is laid out
// starting at x0. Zero-height segments contribute the identity.
ScaledMatrix2 cell_matrix(double energy,
                          const PiecewiseConstantPotential& potential,
                          double x0 = 0.0);

// t = 1/M11 in log-magnitude / wrapped-phase form.
TransmissionCoefficient transmission(const ScaledMatrix2& m, double energy);

// r = M21/M11 (the scale exponent cancels).
Complex reflection(const ScaledMatrix2& m);

// Wrap an angle to (-pi, pi].
double wrap_phase(double angle);

// Shift each value after the first by an integer multiple of 2*pi so that
// consecutive differences lie in (-pi, pi]. Correctness relies on the
// caller sampling densely enough that true consecutive gaps stay below pi.
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

}  // namespace qtt

#endif  // QTT_TRANSFER_HPP
