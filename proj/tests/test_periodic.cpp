#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qtt/periodic.hpp"
#include "qtt/transfer.hpp"
#include "test_util.hpp"

using namespace qtt;

namespace {

// plain three-term recurrences, safe for the small |x| used in identity
// checks; independent of the continued-fraction path under test
double cheb_t(double x, int n) {
  double prev = 1.0, cur = x;
  if (n == 0) return prev;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cheb_u(double x, int n) {
  if (n < 0) return 0.0;
  double prev = 1.0, cur = 2.0 * x;
  if (n == 0) return prev;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TEST_CASE("periodic spec invariants") {
  const PeriodicSpec spec(3, 1.5, 2.0);
  CHECK(spec.period == doctest::Approx(3.5));
  CHECK(spec.cell_width() == doctest::Approx(2.0));
  CHECK_THROWS_AS(PeriodicSpec(0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicSpec(1, -0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicSpec(1, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("chebyshev ratio spot values") {
  const auto r2 = chebyshev_ratios(2.0, 2);
  CHECK(r2.sigma == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r2.rho == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK_FALSE(r2.near_singular);

  const auto rhalf = chebyshev_ratios(0.5, 2);
  CHECK(rhalf.rho == doctest::Approx(-2.0).epsilon(1e-15));

  const auto big = chebyshev_ratios(1e8, 5);
  CHECK(std::abs(big.rho - 1e-8) <= 1e-6 * 1e-8);

  CHECK_THROWS_AS(chebyshev_ratios(1.0, 0), std::invalid_argument);
}

TEST_CASE("chebyshev identity T_N = x U_{N-1} - U_{N-2}") {
  for (int n = 1; n <= 10; ++n) {
    for (double x = -3.0; x <= 3.0 + 1e-12; x += 0.125) {
      const double lhs = cheb_t(x, n);
      const double rhs = x * cheb_u(x, n - 1) - cheb_u(x, n - 2);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("continued-fraction ratios match direct polynomial ratios") {
  for (int n = 1; n <= 8; ++n) {
    for (double x : {-2.5, -1.7, -0.4, 0.3, 1.2, 2.8, 14.0}) {
      const auto r = chebyshev_ratios(x, n);
      if (r.near_singular) continue;
      const double direct_sigma = cheb_u(x, n - 2) / cheb_u(x, n - 1);
      const double direct_rho = cheb_u(x, n - 1) / cheb_t(x, n);
      CHECK(r.sigma ==
            doctest::Approx(direct_sigma).epsilon(1e-10));
      CHECK(r.rho == doctest::Approx(direct_rho).epsilon(1e-10));
    }
  }
}

TEST_CASE("ratio asymptote rho -> 1/x with relative error ~ 1/(2 x^2)") {
  for (int n : {2, 3, 5}) {
    const double rel4 = std::abs(chebyshev_ratios(1e4, n).rho * 1e4 - 1.0);
    const double rel6 = std::abs(chebyshev_ratios(1e6, n).rho * 1e6 - 1.0);
    const double rel8 = std::abs(chebyshev_ratios(1e8, n).rho * 1e8 - 1.0);
    // successive relative errors shrink by the squared chi ratio
    CHECK(rel4 / rel6 > 1e3);
    CHECK(rel4 / rel6 < 1e5);
    CHECK(rel8 < 1e-12);
    CHECK(rel4 == doctest::Approx(0.5e-8).epsilon(0.05));
  }
}

TEST_CASE("near-singular recurrence points are flagged, not fabricated") {
  // 2x - sigma_1 = 0 at x = 0, so sigma_2 blows up
  const auto r = chebyshev_ratios(0.0, 3);
  CHECK(r.near_singular);
  // T_2(x) = 0 at x = 1/sqrt(2): rho denominator collapses
  const auto band = chebyshev_ratios(std::sqrt(0.5), 2);
  CHECK(band.near_singular);
}

TEST_CASE("bloch parameter") {
  // v = 1, delta = 0: chi = cos(k s)
  TransmissionCoefficient unit{0.0, 0.0, 1.0};
  CHECK(bloch_parameter(unit, 1.0, std::numbers::pi) ==
        doctest::Approx(-1.0).epsilon(1e-14));

  const auto t = transmission(cell_matrix(1.0, make_rectangular(2.0, 1.0)), 1.0);
  CHECK(bloch_parameter(t, 1.0, 2.0) ==
        doctest::Approx(std::cosh(1.0) * std::cos(1.0)).epsilon(1e-12));

  const auto opaque =
      transmission(cell_matrix(1.0, make_rectangular(2.0, 30.0)), 1.0);
  const double chi = bloch_parameter(opaque, 1.0, 31.0);
  CHECK(std::isfinite(chi));
  // delta = -k b at E = V/2, so chi = cosh(30) cos(-30 + 31)
  CHECK(std::abs(chi) ==
        doctest::Approx(std::cosh(30.0) * std::abs(std::cos(1.0)))
            .epsilon(1e-12));
}

TEST_CASE("N = 1 reduces to the cell transmission exactly") {
  testutil::Rng rng(424242u);
  for (int i = 0; i < 100; ++i) {
    const auto cell = testutil::random_cell(rng, 3, 0.2, 2.5, 5.0);
    const double e = testutil::random_energy_avoiding(rng, cell, 0.05, 6.0);
    const double k = std::sqrt(e);
    const auto t = transmission(cell_matrix(e, cell), e);
    std::uniform_real_distribution<double> gaps(0.0, 4.0);
    const PeriodicSpec spec(1, gaps(rng), cell.total_width());
    const auto p = t_periodic(t, spec, k);
    CHECK(std::abs(p.log_magnitude - t.log_magnitude) < 1e-10);
    CHECK(std::abs(wrap_phase(p.phase - (t.phase + k * spec.period))) <
          1e-10);
    CHECK(p.chi ==
          doctest::Approx(bloch_parameter(t, k, spec.period)).epsilon(1e-12));
  }
}

TEST_CASE("closed form matches the direct-array oracle") {
  testutil::Rng rng(1234567u);
  std::uniform_int_distribution<int> reps(1, 6);
  std::uniform_real_distribution<double> gaps(0.0, 4.0);
  int accepted = 0;
  while (accepted < 200) {
    const auto cell = testutil::random_cell(rng, 4, 0.2, 3.0, 5.0);
    const double e = testutil::random_energy_avoiding(rng, cell, 0.05, 6.0);
    const double k = std::sqrt(e);
    const PeriodicSpec spec(reps(rng), gaps(rng), cell.total_width());

    const auto t = transmission(cell_matrix(e, cell), e);
    const auto closed = t_periodic(t, spec, k);
    if (closed.near_singular) continue;
    ++accepted;

    const auto array = direct_array(cell, spec);
    CHECK(array.total_width() ==
          doctest::Approx((spec.repetitions - 1) * spec.period +
                          cell.total_width()));
    const auto oracle = transmission(cell_matrix(e, array), e);
    CHECK(std::abs(closed.log_magnitude - oracle.log_magnitude) < 1e-9);
    CHECK(std::abs(wrap_phase(closed.total_phase - oracle.phase)) < 1e-9);
    // passivity of the N-cell system
    CHECK(closed.log_magnitude <= 1e-10);
  }
}

TEST_CASE("vanishing denominator pair is flagged, not fabricated") {
  // both scaled denominator parts below 1e-12 cannot arise from a passive
  // cell; a synthetic gain coefficient (|t| >> 1) drives the branch
  TransmissionCoefficient gain{std::log(1e13), 0.0, 1.0};
  const auto p = t_periodic(gain, PeriodicSpec(1, 0.0, 1.0), 1.0);
  CHECK(p.near_singular);

  // passive draws never trip it
  const auto t = transmission(cell_matrix(1.0, make_rectangular(2.0, 1.0)), 1.0);
  CHECK_FALSE(t_periodic(t, PeriodicSpec(4, 2.0, 1.0), 1.0).near_singular);
}

TEST_CASE("opaque cell: periodic phase collapses to delta + k s") {
  const auto cell = make_rectangular(2.0, 30.0);
  const auto t = transmission(cell_matrix(1.0, cell), 1.0);
  const PeriodicSpec spec(3, 5.0, 30.0);
  const auto p = t_periodic(t, spec, 1.0);
  CHECK_FALSE(p.near_singular);
  CHECK(std::abs(wrap_phase(p.phase - (t.phase + spec.period))) < 1e-9);
}

TEST_CASE("direct array construction") {
  const auto cell = make_rectangular(2.0, 1.0);
  const auto two = direct_array(cell, PeriodicSpec(2, 1.0, 1.0));
  const std::vector<Segment> expected = {{1.0, 2.0}, {1.0, 0.0}, {1.0, 2.0}};
  CHECK(two.segments() == expected);

  const auto one = direct_array(cell, PeriodicSpec(1, 7.0, 1.0));
  CHECK(one == cell);

  const auto three = direct_array(cell, PeriodicSpec(3, 0.5, 1.0));
  CHECK(three.total_width() == doctest::Approx(4.0));

  // L = 0 concatenates: N rectangular cells fuse into one wide barrier
  const auto fused = direct_array(cell, PeriodicSpec(3, 0.0, 1.0));
  CHECK(fused.segments().size() == 3);
  const auto t_fused = transmission(cell_matrix(1.0, fused), 1.0);
  const auto t_wide =
      transmission(cell_matrix(1.0, make_rectangular(2.0, 3.0)), 1.0);
  CHECK(t_fused.log_magnitude ==
        doctest::Approx(t_wide.log_magnitude).epsilon(1e-12));
  CHECK(std::abs(wrap_phase(t_fused.phase - t_wide.phase)) < 1e-12);
}
