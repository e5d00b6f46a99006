#ifndef QTT_SPM_HPP
#define QTT_SPM_HPP

#include <functional>
#include <optional>
#include <vector>

#include "qtt/periodic.hpp"
#include "qtt/potential.hpp"

namespace qtt {

enum class TimeMethod {
  kNumericSpm,    // numerical phase derivative of the cell transmission
  kRectAnalytic,  // closed-form rectangular-barrier derivative
  kPeriodicSpm,   // numerical phase derivative of the periodic phase
};

// Stationary-phase tunneling time tau = phase_derivative + geometric_term,
// in units of 1/energy (2m = hbar = 1 throughout).
struct TunnelingTimeResult {
  double tau;
  double phase_derivative;  // d(delta)/dE or d(phi_N)/dE
  double geometric_term;    // b/2k for a cell, b/2k - s/2k for a lattice
  TimeMethod method;
  double energy;
};

// d(phase)/dE at the given energy by 5-point Richardson-extrapolated
// central differences. The stencil phases are unwrapped before differencing,
// so phase_fn may return point-wrapped values. Default step is
// max(|E|,1) * eps^(1/3). phase_fn may throw ResonanceProximityError to
// reject a flagged stencil point; the error propagates.
double phase_derivative(const std::function<double(double)>& phase_fn,
                        double energy,
                        std::optional<double> step = std::nullopt);

// Tunneling time through a single cell, tau = delta' + b/(2k).
TunnelingTimeResult tunneling_time_single(
    const PiecewiseConstantPotential& potential, double energy,
    std::optional<double> step = std::nullopt);

// Closed-form tunneling time for a rectangular barrier in the tunneling
// regime 0 < E < V. Independent oracle for the numeric pipeline.
TunnelingTimeResult tunneling_time_rect_analytic(double height, double width,
                                                 double energy);

// Thickness-saturated tunneling time 1/(qk) of a rectangular barrier.
double hartman_limit_rect(double height, double energy);

// Tunneling time through the N-cell periodic system,
// tau_N = phi_N' - s/(2k) + b/(2k).
TunnelingTimeResult tunneling_time_periodic(
    const PiecewiseConstantPotential& cell, const PeriodicSpec& spec,
    double energy, std::optional<double> step = std::nullopt);

struct SaturationScan {
  std::vector<double> tau;      // tau at each grid thickness, in order
  double tau_limit_estimate;    // last tau value
  bool converged;
};

// Evaluate tau over an increasing thickness grid (>= 4 points) and decide
// whether it has saturated: the last three successive |differences| must be
// non-increasing with a genuine decrease, and the final two below the
// tolerance. Families without a thickness limit (e.g. free cells) report
// converged = false.
SaturationScan saturation_scan(
    const std::function<PiecewiseConstantPotential(double)>& cell_family,
    double energy, const std::vector<double>& thickness_grid,
    double tolerance = 1e-6, std::optional<double> step = std::nullopt);

}  // namespace qtt

#endif  // QTT_SPM_HPP
