#include "qtt/periodic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qtt {

namespace {

// Relative floor below which a continued-fraction denominator has lost all
// significance.
bool denominator_vanishes(double denom, double a, double b) {
  const double floor =
      1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  return std::abs(denom) < floor;
}

}  // namespace

PeriodicSpec::PeriodicSpec(int n, double gap_length, double cell_width)
    : repetitions(n), gap(gap_length), period(cell_width + gap_length) {
  if (n < 1) {
    throw std::invalid_argument("repetition count must be >= 1");
  }
  if (!(gap_length >= 0.0) || !std::isfinite(gap_length)) {
    throw std::invalid_argument("gap length must be >= 0");
  }
  if (!(cell_width > 0.0) || !std::isfinite(cell_width)) {
    throw std::invalid_argument("cell width must be positive");
  }
}

ChebyshevRatios chebyshev_ratios(double x, int n) {
  if (n < 1) {
    throw std::invalid_argument("chebyshev_ratios needs n >= 1");
  }
  bool flagged = false;
  double sigma = 0.0;  // sigma_1 = U_{-1}/U_0 = 0
  for (int j = 1; j < n; ++j) {
    const double denom = 2.0 * x - sigma;
    if (denominator_vanishes(denom, 2.0 * x, sigma)) flagged = true;
    sigma = denom == 0.0 ? std::numeric_limits<double>::infinity()
                         : 1.0 / denom;
  }
  const double rho_denom = x - sigma;
  if (denominator_vanishes(rho_denom, x, sigma)) flagged = true;
  const double rho = rho_denom == 0.0
                         ? std::numeric_limits<double>::infinity()
                         : 1.0 / rho_denom;
  return {sigma, rho, flagged};
}

double bloch_parameter(const TransmissionCoefficient& cell, double k,
                       double period) {
  return cell.sqrt_v() * std::cos(cell.phase + k * period);
}

PeriodicTransmission t_periodic(const TransmissionCoefficient& cell,
                                const PeriodicSpec& spec, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("wavevector must be positive");
  }
  const double theta = cell.phase + k * spec.period;
  const double sqrt_v = cell.sqrt_v();
  const double chi = sqrt_v * std::cos(theta);

  // U_{N-1}(chi), U_{N-2}(chi) by the three-term recurrence, rescaled each
  // step so the stored pair stays bounded by one; lambda collects the
  // factored-out magnitude.
  double u_cur = 1.0;   // U_0
  double u_prev = 0.0;  // U_{-1}
  double lambda = 0.0;
  for (int j = 1; j <= spec.repetitions - 1; ++j) {
    const double u_next = 2.0 * chi * u_cur - u_prev;
    u_prev = u_cur;
    u_cur = u_next;
    const double mag = std::max(std::abs(u_cur), std::abs(u_prev));
    if (mag > 1.0) {
      u_cur /= mag;
      u_prev /= mag;
      lambda += std::log(mag);
    }
  }

  // denominator of t_N: e^{lambda} (T_N - i sqrt(v) sin(theta) U_{N-1})
  const double t_cheb = chi * u_cur - u_prev;  // T_N, scaled
  const double numer = sqrt_v * std::sin(theta) * u_cur;
  const bool flagged = std::abs(t_cheb) < 1e-12 && std::abs(numer) < 1e-12;

  PeriodicTransmission out;
  out.chi = chi;
  out.phase = flagged ? 0.0 : std::atan2(numer, t_cheb);
  out.total_phase = out.phase - k * spec.repetitions * spec.period;
  out.log_magnitude = -(lambda + std::log(std::hypot(t_cheb, numer)));
  out.energy = cell.energy;
  out.near_singular = flagged;
  return out;
}

PiecewiseConstantPotential direct_array(const PiecewiseConstantPotential& cell,
                                        const PeriodicSpec& spec) {
  std::vector<Segment> segments;
  segments.reserve(cell.segments().size() * spec.repetitions +
                   spec.repetitions - 1);
  for (int i = 0; i < spec.repetitions; ++i) {
    segments.insert(segments.end(), cell.segments().begin(),
                    cell.segments().end());
    if (i + 1 < spec.repetitions && spec.gap > 0.0) {
      segments.push_back({spec.gap, 0.0});
    }
  }
  return PiecewiseConstantPotential(std::move(segments));
}

}  // namespace qtt
