#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cbs/core.hpp"
#include "cbs/errors.hpp"
#include "cbs/numerics.hpp"

using namespace cbs;

namespace {

CMat3 multiply(const CMat3& a, const CMat3& b) {
  CMat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("resonance denominator and omega0") {
  const auto res = AtomResonance::make(1.0, 1e6);
  CHECK(res.omega0() == cplx(1e6, -0.5));
  CHECK(res.resonance_denominator(2.0) == cplx(2.0, 0.5));
  CHECK_THROWS_AS(AtomResonance::make(0.0), DomainError);
  CHECK_THROWS_AS(AtomResonance::make(-1.0), DomainError);
}

TEST_CASE("drive relates s and s0") {
  const auto d = Drive::make(1.5, 0.1);
  CHECK(d.s0() == doctest::Approx((1.0 + 4.0 * 2.25) * 0.1).epsilon(1e-15));
  const auto e = Drive::from_s0(1.5, d.s0());
  CHECK(e.s() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(Drive::make(0.0, -0.1), DomainError);
  CHECK_THROWS_AS(Drive::make(NAN, 0.1), DomainError);
}

TEST_CASE("transverse projector is idempotent and kills n12") {
  const numerics::CounterRng rng(11);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Vec3 n = rng.unit_vector(i);
    const auto p = transverse_projector(n);
    const auto p2 = multiply(p, p);
    for (int a = 0; a < 3; ++a) {
      cplx along{};
      for (int b = 0; b < 3; ++b) {
        CHECK(std::abs(p2[a][b] - p[a][b]) < 1e-12);
        along += p[a][b] * n[b];
      }
      CHECK(std::abs(along) < 1e-12);
    }
  }
}

TEST_CASE("non-unit pair axis is rejected") {
  CHECK_THROWS_AS(transverse_projector({1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(transverse_projector({0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("helicity element modulus is sin^4/4 for random axes") {
  const auto eps = Polarization::circular();
  const numerics::CounterRng rng(3);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Vec3 n = rng.unit_vector(i);
    const double sin2 = 1.0 - n[2] * n[2];
    CHECK(std::norm(helicity_matrix_element(eps, n)) == doctest::Approx(sin2 * sin2 / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("helicity element at simple axes") {
  const auto eps = Polarization::circular();
  CHECK(std::abs(helicity_matrix_element(eps, {0.0, 0.0, 1.0})) < 1e-15);
  CHECK(std::norm(helicity_matrix_element(eps, {1.0, 0.0, 0.0})) == doctest::Approx(0.25));
  const auto linear = Polarization::normalized({cplx{1.0}, cplx{0.0}, cplx{0.0}});
  CHECK_THROWS_AS(helicity_matrix_element(linear, {1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("polarization normalization") {
  const auto p = Polarization::normalized({cplx{3.0}, cplx{0.0, 4.0}, cplx{0.0}});
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(Polarization::circular().self_product()) < 1e-15);
  CHECK_THROWS_AS(Polarization::normalized({cplx{0.0}, cplx{0.0}, cplx{0.0}}), DomainError);
  const auto det = Polarization::circular().helicity_preserving_detector();
  CHECK(det.vector()[1] == std::conj(Polarization::circular().vector()[1]));
}

TEST_CASE("pair geometry validation and wavenumbers") {
  const auto g = PairGeometry::make(2.0, {0.0, 1.0, 0.0}, 0.01, 1.0);
  CHECK(g.k_r12() == doctest::Approx(4.0 * kPi));
  CHECK(g.k_rperp() == doctest::Approx(2.0 * kPi));
  CHECK(g.cone_width() == doctest::Approx(1.0 / (4.0 * kPi)));
  CHECK_THROWS_AS(PairGeometry::make(-1.0, {0.0, 1.0, 0.0}, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(PairGeometry::make(1.0, {0.0, 1.0, 0.0}, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(PairGeometry::make(1.0, {0.0, 1.1, 0.0}, 0.0, 0.5), DomainError);
}

TEST_CASE("reporting unit names") {
  CHECK(unit_name(ReportingUnit::eta) == "eta");
  CHECK(unit_name(ReportingUnit::eta_s) == "eta_s");
}
