#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cbs/errors.hpp"
#include "cbs/single_atom.hpp"
#include "oracle.hpp"

using namespace cbs;
using namespace cbs::single_atom;

namespace {

const auto kRes = AtomResonance::make();

// Power series of 1/p(s) for a polynomial p with p(0) = 1, by long division.
std::vector<Rational> invert_series(const std::vector<Rational>& p, std::size_t order) {
  std::vector<Rational> q(order, Rational(0));
  q[0] = Rational(1) / p[0];
  for (std::size_t n = 1; n < order; ++n) {
    Rational acc(0);
    for (std::size_t k = 1; k <= n && k < p.size(); ++k) acc += p[k] * q[n - k];
    q[n] = -acc / p[0];
  }
  return q;
}

}  // namespace

TEST_CASE("single-photon amplitude") {
  CHECK(t1_amplitude(0.0, kRes) == cplx(0.0, -2.0));
  CHECK(std::abs(t1_amplitude(3.0, kRes)) == doctest::Approx(1.0 / std::sqrt(9.25)));
}

TEST_CASE("inelastic kernel is even in the laser offset") {
  for (double delta : {-3.0, 0.0, 0.7, 5.0})
    for (double x : {0.1, 1.0, 4.2}) {
      const auto drive = Drive::make(delta, 0.1, kRes);
      CHECK(inelastic_kernel(x, drive, kRes) == inelastic_kernel(-x, drive, kRes));
    }
}

TEST_CASE("two-photon kernel carries the laser denominators") {
  const auto drive = Drive::make(1.0, 0.1, kRes);
  const cplx laser(1.0, 0.5);
  CHECK(std::abs(t2_kernel(0.3, drive, kRes) * laser * laser - inelastic_kernel(0.3, drive, kRes)) < 1e-14);
}

TEST_CASE("kernel normalization integral is 4 pi / Gamma") {
  for (double d : {0.0, 1.0, 3.0}) CHECK(oracle::real_line([&](double x) { return oracle::kernel_sq(x, d); }) ==
                                         doctest::Approx(4.0 * kPi).epsilon(1e-9));
}

TEST_CASE("channel intensities to second order") {
  const auto i = single_atom_intensities(Drive::make(0.0, 0.1, kRes), kRes);
  CHECK(i.elastic_first == doctest::Approx(0.05));
  CHECK(i.elastic_second == doctest::Approx(-0.01));
  CHECK(i.inelastic == doctest::Approx(0.005));
  CHECK(i.total() == doctest::Approx(0.045));
}

TEST_CASE("finite photon number scales the two-photon terms") {
  const auto drive = Drive::make(0.0, 0.1, kRes);
  const auto one = single_atom_intensities(drive, kRes, {.photon_number = 1.0});
  CHECK(one.inelastic == 0.0);
  CHECK(one.elastic_second == 0.0);
  const auto two = single_atom_intensities(drive, kRes, {.photon_number = 2.0});
  CHECK(two.inelastic == doctest::Approx(0.0025));
  CHECK_THROWS_AS(single_atom_intensities(drive, kRes, {.photon_number = 0.5}), DomainError);
}

TEST_CASE("outside the second-order regime") {
  CHECK_THROWS_AS(single_atom_intensities(Drive::make(0.0, 0.5, kRes), kRes), ValidityError);
  CHECK_NOTHROW(single_atom_intensities(Drive::make(0.0, 0.5, kRes), kRes, {.max_s = 1.0}));
}

TEST_CASE("series coefficients match the expansion of the saturated intensities") {
  // s/(2(1+s)^2) and s^2/(2(1+s)^2), expanded with exact rationals.
  const auto inv = invert_series({Rational(1), Rational(2), Rational(1)}, 4);
  const auto c = intensity_series_coefficients();
  CHECK(c.elastic_first == Rational(1, 2) * inv[0]);
  CHECK(c.elastic_second == Rational(1, 2) * inv[1]);
  CHECK(c.inelastic == Rational(1, 2) * inv[0]);
  CHECK(inv[1] == Rational(-2));
  CHECK(inv[2] == Rational(3));
}

TEST_CASE("density integrates to the inelastic intensity") {
  for (double delta : {0.0, 1.0, 2.0, 5.0}) {
    const auto drive = Drive::make(delta, 0.1, kRes);
    const double total = oracle::real_line([&](double x) { return inelastic_density(x, drive, kRes); });
    CHECK(total == doctest::Approx(0.005).epsilon(1e-9));
  }
}

TEST_CASE("sampled spectrum is mirror symmetric and carries the elastic weight separately") {
  const auto drive = Drive::make(1.3, 0.1, kRes);
  const auto spec = inelastic_spectrum(drive, kRes);
  REQUIRE(spec.grid.size() == 4001);
  for (std::size_t i = 0; i < spec.values.size(); ++i)
    CHECK(spec.values[i] == spec.values[spec.values.size() - 1 - i]);
  CHECK(spec.elastic_weight == doctest::Approx(0.05 - 0.01));
  CHECK(spec.norm == doctest::Approx(0.005));
  CHECK(spec.warnings.empty());
  CHECK(trapezoid_integral(spec) == doctest::Approx(spec.norm).epsilon(0.02));
}

TEST_CASE("FWHM on resonance is sqrt(sqrt(2) - 1) Gamma") {
  const auto drive = Drive::make(0.0, 0.1, kRes);
  const auto peaks = find_peaks(inelastic_spectrum(drive, kRes, symmetric_grid(10.0, 20001)));
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].position == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(peaks[0].fwhm == doctest::Approx(std::sqrt(std::sqrt(2.0) - 1.0)).epsilon(1e-5));
}

TEST_CASE("side peaks sit at +-sqrt(delta^2 - Gamma^2/4)") {
  for (double delta : {1.0, 2.0, 5.0}) {
    const auto drive = Drive::make(delta, 0.1, kRes);
    const auto peaks = find_peaks(inelastic_spectrum(drive, kRes, symmetric_grid(4 * delta + 5, 40001)));
    REQUIRE(peaks.size() == 2);
    const double exact = std::sqrt(delta * delta - 0.25);
    CHECK(peaks[0].position == doctest::Approx(-exact).epsilon(1e-6));
    CHECK(peaks[1].position == doctest::Approx(exact).epsilon(1e-6));
    CHECK(peaks[0].fwhm == doctest::Approx(peaks[1].fwhm).epsilon(1e-9));
  }
}

TEST_CASE("a single central peak below delta = Gamma/2") {
  const auto peaks = find_peaks(inelastic_spectrum(Drive::make(0.4, 0.1, kRes), kRes, symmetric_grid(10.0, 4001)));
  CHECK(peaks.size() == 1);
}

TEST_CASE("narrow grid warns or throws") {
  const auto drive = Drive::make(3.0, 0.1, kRes);
  const auto grid = symmetric_grid(5.0, 501);
  const auto spec = inelastic_spectrum(drive, kRes, grid);
  REQUIRE(spec.warnings.size() == 1);
  CHECK(spec.captured_fraction < 1.0);
  CHECK(spec.captured_fraction > 0.8);
  CHECK_THROWS_AS(inelastic_spectrum(drive, kRes, grid, {.strict_coverage = true}), DomainError);
}

TEST_CASE("malformed grids") {
  const auto drive = Drive::make(0.0, 0.1, kRes);
  const std::vector<double> unsorted{0.0, 2.0, 1.0};
  CHECK_THROWS_AS(inelastic_spectrum(drive, kRes, unsorted), DomainError);
  CHECK_THROWS_AS(symmetric_grid(1.0, 2), DomainError);
}
