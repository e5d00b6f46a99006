#ifndef QTT_PERIODIC_HPP
#define QTT_PERIODIC_HPP

#include "qtt/potential.hpp"
#include "qtt/transfer.hpp"

namespace qtt {

// N repetitions of a unit cell of width b separated by gaps of length L;
// the lattice period is s = b + L.
struct PeriodicSpec {
  int repetitions;  // N >= 1
  double gap;       // L >= 0
  double period;    // s = b + L

  PeriodicSpec(int n, double gap_length, double cell_width);

  double cell_width() const { return period - gap; }
};

// Stable Chebyshev ratios sigma = U_{N-2}(x)/U_{N-1}(x) and
// rho = U_{N-1}(x)/T_N(x), evaluated by the continued-fraction recurrence
// sigma_1 = 0, sigma_{j+1} = 1/(2x - sigma_j), rho = 1/(x - sigma_N).
// No intermediate grows beyond O(max(1,|x|)), so the huge raw polynomial
// values never appear. near_singular is set when a recurrence denominator
// loses all significance (band edge / resonance vicinity).
struct ChebyshevRatios {
  double sigma;
  double rho;
  bool near_singular;
};

ChebyshevRatios chebyshev_ratios(double x, int n);

// Bloch-type parameter chi = sqrt(v) cos(delta + k s) of the periodic
// arrangement; grows like 1/|t| for opaque cells.
double bloch_parameter(const TransmissionCoefficient& cell, double k,
                       double period);

// Transmission of the N-cell periodic system in log-magnitude form.
// phase is the point-wrapped phase-delay angle phi_N; total_phase is the
// phase of t_N itself, phi_N - k N s.
struct PeriodicTransmission {
  double chi;
  double phase;          // phi_N, wrapped to (-pi, pi]
  double total_phase;    // phi_N - k N s
  double log_magnitude;  // ln|t_N|
  double energy;
  bool near_singular;
};

// Chebyshev closed form for the N-cell transmission. The denominator
// T_N(chi) - i sqrt(v) sin(delta + k s) U_{N-1}(chi) is evaluated with a
// separately tracked magnitude exponent so opaque cells do not overflow.
// At a point where both denominator parts drop below 1e-12 in scaled units
// the result is flagged near-singular instead of being fabricated.
PeriodicTransmission t_periodic(const TransmissionCoefficient& cell,
                                const PeriodicSpec& spec, double k);

// Explicit segment list of the periodic arrangement: N copies of the cell
// with N-1 zero-height gaps between them (no gap segments when L = 0).
// Total width is (N-1)s + b. Serves as the direct oracle for t_periodic.
PiecewiseConstantPotential direct_array(const PiecewiseConstantPotential& cell,
                                        const PeriodicSpec& spec);

}  // namespace qtt

#endif  // QTT_PERIODIC_HPP
