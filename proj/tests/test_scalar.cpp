#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cbs/errors.hpp"
#include "cbs/numerics.hpp"
#include "cbs/scalar.hpp"
#include "cbs/two_atom.hpp"

using namespace cbs;
using namespace cbs::scalar;

namespace {
const auto kRes = AtomResonance::make();
}

TEST_CASE("scalar exchange factor") {
  const auto on = scalar_constants(Drive::make(0.0, 0.1, kRes), kRes, 40.0);
  CHECK(on.exchange_modulus_sq == doctest::Approx(1.0 / 1600.0).epsilon(1e-14));
  CHECK(on.linewidth_ratio == 1.5);
  CHECK(on.unit == ReportingUnit::eta_s);
  const auto far = scalar_constants(Drive::make(0.0, 0.1, kRes), kRes, 80.0);
  CHECK(std::abs(far.exchange) == doctest::Approx(0.5 * std::abs(on.exchange)));
  const auto detuned = scalar_constants(Drive::make(2.0, 0.1, kRes), kRes, 40.0);
  CHECK(std::abs(detuned.exchange) / std::abs(on.exchange) == doctest::Approx(1.0 / std::sqrt(17.0)));
  CHECK_THROWS_AS(scalar_constants(Drive::make(0.0, 0.1, kRes), kRes, -1.0), DomainError);
}

TEST_CASE("coefficient table") {
  const auto c = scalar_coefficients();
  CHECK(c.ladder_el0_first == Rational(1));
  CHECK(c.ladder_el0_second == Rational(-2));
  CHECK(c.ladder_in0 == Rational(1));
  CHECK(c.ladder_el1 == c.crossed_el1);
  CHECK(c.ladder_el2 == Rational(-10));
  CHECK(c.crossed_el2 == Rational(-8));
  CHECK(c.ladder_in2_constant == Rational(19, 4));
  CHECK(c.crossed_in2 == Rational(3));
  CHECK(c.ladder_in2(2.0) == 8.75);
}

TEST_CASE("contribution table at s = 0.1, |B|^2 = 1e-4") {
  const auto sig = scalar_signal_with_exchange(Drive::make(0.0, 0.1, kRes), kRes, 1e-4);
  CHECK(sig.ladder_el0 == doctest::Approx(0.08));
  CHECK(sig.ladder_in0 == doctest::Approx(0.01));
  CHECK(sig.ladder_el1 == doctest::Approx(1e-5));
  CHECK(sig.crossed_el1 == sig.ladder_el1);
  CHECK(sig.ladder_el2 == doctest::Approx(-1e-5));
  CHECK(sig.crossed_el2 == doctest::Approx(-8e-6));
  CHECK(sig.ladder_in2 == doctest::Approx(4.75e-6));
  CHECK(sig.crossed_in2 == doctest::Approx(3e-6));
}

TEST_CASE("weak drive keeps first-order terms only") {
  const double s = 1e-9;
  const auto sig = scalar_signal_with_exchange(Drive::make(0.0, s, kRes), kRes, 1e-4);
  CHECK(sig.ladder_el0 == doctest::Approx(s).epsilon(1e-8));
  CHECK(sig.ladder_el1 == doctest::Approx(1e-4 * s));
  CHECK(std::abs(sig.ladder_in2) < 1e-20);
  CHECK(sig.enhancement() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("inelastic double-scattering ratio stays below one") {
  CHECK(scalar_signal_with_exchange(Drive::make(0.0, 0.1, kRes), kRes, 1.0).inelastic_ratio() ==
        doctest::Approx(12.0 / 19.0));
  const numerics::CounterRng rng(31);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const double delta = 40.0 * rng.uniform(i) - 20.0;
    const auto sig = scalar_signal_with_exchange(Drive::make(delta, 0.05, kRes), kRes, 1.0);
    CHECK(sig.inelastic_ratio() < 1.0);
    CHECK(sig.inelastic_ratio() == doctest::Approx(3.0 / (4.75 + delta * delta)));
  }
}

TEST_CASE("inelastic double-scattering ladder from the vectorial path intensities") {
  for (double delta : {0.0, 0.7, 2.0, 5.0}) {
    const auto drive = Drive::make(delta, 0.1, kRes);
    const auto paths = two_atom::inelastic_ladder(drive, kRes);
    const auto sig = scalar_signal_with_exchange(drive, kRes, 1.0);
    CHECK(ladder_in2_from_paths(paths.path_I, paths.path_II) == doctest::Approx(sig.ladder_in2).epsilon(1e-12));
    // The swapped combination does not reproduce the coefficient.
    CHECK(8.0 * paths.path_I + 2.0 * paths.path_II != doctest::Approx(sig.ladder_in2).epsilon(1e-3));
  }
}

TEST_CASE("signal uses |B_s(omega_L)|^2 and checks validity") {
  const auto drive = Drive::make(1.0, 0.1, kRes);
  const auto sig = scalar_signal(drive, kRes, 30.0);
  CHECK(sig.exchange_modulus_sq == doctest::Approx(1.0 / (900.0 * 5.0)));
  CHECK_THROWS_AS(scalar_signal(Drive::make(1.0, 0.3, kRes), kRes, 30.0), ValidityError);
}
