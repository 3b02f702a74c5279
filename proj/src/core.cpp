#include "cbs/core.hpp"

#include <cmath>
#include <string>

#include "cbs/errors.hpp"

namespace cbs {

std::string_view unit_name(ReportingUnit unit) {
  switch (unit) {
    case ReportingUnit::eta: return "eta";
    case ReportingUnit::eta_tilde: return "eta_tilde";
    case ReportingUnit::eta_s: return "eta_s";
  }
  return "unknown";
}

AtomResonance AtomResonance::make(double gamma, double omega_at) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError("AtomResonance: gamma must be positive and finite, got " + std::to_string(gamma));
  if (!std::isfinite(omega_at) || omega_at <= 0.0)
    throw DomainError("AtomResonance: omega_at must be positive and finite");
  return AtomResonance(gamma, omega_at);
}

Drive Drive::make(double delta, double s, const AtomResonance& res) {
  if (!std::isfinite(delta)) throw DomainError("Drive: detuning must be finite");
  if (!(s >= 0.0) || !std::isfinite(s))
    throw DomainError("Drive: saturation parameter must be finite and >= 0, got " + std::to_string(s));
  const double r = delta / res.gamma();
  return Drive(delta, s, (1.0 + 4.0 * r * r) * s, res.gamma());
}

Drive Drive::from_s0(double delta, double s0, const AtomResonance& res) {
  if (!std::isfinite(delta)) throw DomainError("Drive: detuning must be finite");
  if (!(s0 >= 0.0) || !std::isfinite(s0))
    throw DomainError("Drive: on-resonance saturation must be finite and >= 0");
  const double r = delta / res.gamma();
  return make(delta, s0 / (1.0 + 4.0 * r * r), res);
}

Polarization Polarization::normalized(const CVec3& v) {
  double n2 = 0.0;
  for (const auto& c : v) n2 += std::norm(c);
  if (!(n2 > 1e-300) || !std::isfinite(n2)) throw DomainError("Polarization: zero or non-finite vector");
  const double n = std::sqrt(n2);
  return Polarization({v[0] / n, v[1] / n, v[2] / n});
}

Polarization Polarization::circular() {
  const double h = 1.0 / std::numbers::sqrt2;
  return Polarization({cplx{h, 0.0}, cplx{0.0, h}, cplx{0.0, 0.0}});
}

Polarization Polarization::helicity_preserving_detector() const {
  return Polarization({std::conj(v_[0]), std::conj(v_[1]), std::conj(v_[2])});
}

double Polarization::norm() const noexcept {
  return std::sqrt(std::norm(v_[0]) + std::norm(v_[1]) + std::norm(v_[2]));
}

cplx Polarization::self_product() const noexcept {
  return v_[0] * v_[0] + v_[1] * v_[1] + v_[2] * v_[2];
}

double norm(const Vec3& v) noexcept {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Vec3 spherical_direction(double theta, double phi) noexcept {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

namespace {

void require_unit(const Vec3& n, const char* who) {
  if (std::abs(norm(n) - 1.0) > 1e-12)
    throw DomainError(std::string(who) + ": direction must be a unit vector");
}

}  // namespace

PairGeometry PairGeometry::make(double r12, const Vec3& n12, double theta_det, double r_perp) {
  if (!(r12 > 0.0) || !std::isfinite(r12)) throw DomainError("PairGeometry: r12 must be positive");
  require_unit(n12, "PairGeometry");
  if (!(r_perp >= 0.0) || r_perp > r12)
    throw DomainError("PairGeometry: r_perp must lie in [0, r12]");
  if (!std::isfinite(theta_det)) throw DomainError("PairGeometry: detection angle must be finite");
  return PairGeometry(r12, n12, theta_det, r_perp);
}

CMat3 transverse_projector(const Vec3& n12) {
  require_unit(n12, "transverse_projector");
  CMat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - n12[i] * n12[j];
  return m;
}

cplx projected_overlap(const CVec3& eps_in, const CMat3& m, const CVec3& eps_out) {
  cplx acc{0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += eps_in[i] * m[i][j] * std::conj(eps_out[j]);
  return acc;
}

cplx helicity_matrix_element(const Polarization& eps_L, const Vec3& n12) {
  if (std::abs(eps_L.self_product()) > 1e-12)
    throw DomainError("helicity_matrix_element: laser polarization must be circular");
  const auto detector = eps_L.helicity_preserving_detector();
  return projected_overlap(eps_L.vector(), transverse_projector(n12), detector.vector());
}

}  // namespace cbs
