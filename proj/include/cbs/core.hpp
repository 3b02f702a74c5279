#pragma once

// Shared vocabulary for the coherent-backscattering library.
//
// Units: the atomic linewidth Gamma is the frequency unit (Gamma = 1 unless a
// resonance is constructed otherwise) and c = 1. Frequencies are passed as
// offsets, never as absolute values, because every observable depends only on
// detunings. Two offsets are used and every function names the one it takes:
//
//   detuning      = omega - omega_at   (from the atomic line)
//   laser_offset  = omega - omega_L    (from the laser line)
//
// Intensities are reported in units of the prefactors eta (single atom),
// eta~ (two atoms, helicity-preserving channel) or eta_s (scalar photons).
// Those prefactors collect the dipole d, detector distance R, coupling g and
// quantization volume L^3, none of which is a runtime input.

#include <array>
#include <complex>
#include <numbers>
#include <string_view>

namespace cbs {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;
using CMat3 = std::array<std::array<cplx, 3>, 3>;

inline constexpr double kPi = std::numbers::pi;

/// Intensity unit in which a quantity is reported.
enum class ReportingUnit { eta, eta_tilde, eta_s };

std::string_view unit_name(ReportingUnit unit);

/// Gamma_s / Gamma for the same dipole: d^2 w^3/(2 pi eps0) over d^2 w^3/(3 pi eps0).
inline constexpr double kScalarLinewidthRatio = 1.5;

/// Complex atomic resonance omega_0 = omega_at - i Gamma/2.
class AtomResonance {
 public:
  /// Typical optical transition in units of its own linewidth.
  static constexpr double kDefaultOmegaAt = 1e8;

  /// `omega_at` is the absolute line frequency; it only enters the slow
  /// 1/omega and propagation-phase factors of the photon exchange amplitude.
  static AtomResonance make(double gamma = 1.0, double omega_at = kDefaultOmegaAt);

  double gamma() const noexcept { return gamma_; }
  double omega_at() const noexcept { return omega_at_; }
  cplx omega0() const noexcept { return {omega_at_, -0.5 * gamma_}; }

  /// omega - omega_0 for a frequency given by its detuning from omega_at.
  cplx resonance_denominator(double detuning) const noexcept {
    return {detuning, 0.5 * gamma_};
  }

 private:
  AtomResonance(double gamma, double omega_at) : gamma_(gamma), omega_at_(omega_at) {}

  double gamma_;
  double omega_at_;
};

/// Laser drive: detuning delta = omega_L - omega_at and saturation parameter s.
/// The on-resonance saturation s0 = (1 + 4 delta^2/Gamma^2) s depends only on
/// the incident intensity.
class Drive {
 public:
  static Drive make(double delta, double s, const AtomResonance& res = AtomResonance::make());
  static Drive from_s0(double delta, double s0, const AtomResonance& res = AtomResonance::make());

  double delta() const noexcept { return delta_; }
  double s() const noexcept { return s_; }
  double s0() const noexcept { return s0_; }
  /// delta / Gamma
  double reduced_detuning() const noexcept { return delta_ / gamma_; }

 private:
  Drive(double delta, double s, double s0, double gamma)
      : delta_(delta), s_(s), s0_(s0), gamma_(gamma) {}

  double delta_;
  double s_;
  double s0_;
  double gamma_;
};

/// Unit-norm complex polarization vector.
class Polarization {
 public:
  /// Normalizes `v`; throws DomainError for a (near) zero vector.
  static Polarization normalized(const CVec3& v);

  /// Circular polarization (1, i, 0)/sqrt(2) about the laser axis z.
  static Polarization circular();

  /// Detection polarization of the helicity-preserving channel, eps_D = eps_L^*.
  Polarization helicity_preserving_detector() const;

  const CVec3& vector() const noexcept { return v_; }
  double norm() const noexcept;
  /// eps . eps (without conjugation); zero for circular polarization.
  cplx self_product() const noexcept;

 private:
  explicit Polarization(const CVec3& v) : v_(v) {}

  CVec3 v_;
};

/// Geometry of the atom pair as seen by the detector.
class PairGeometry {
 public:
  /// Distances are in optical wavelengths. Throws DomainError when the
  /// direction is not unit, r12 <= 0 or r_perp is outside [0, r12].
  static PairGeometry make(double r12_wavelengths, const Vec3& n12, double theta_det,
                           double r_perp_wavelengths);

  double r12() const noexcept { return r12_; }
  const Vec3& n12() const noexcept { return n12_; }
  double theta_det() const noexcept { return theta_det_; }
  double r_perp() const noexcept { return r_perp_; }

  /// omega_L r12 in c = 1 units, i.e. 2 pi r12 / lambda.
  double k_r12() const noexcept { return 2.0 * kPi * r12_; }
  double k_rperp() const noexcept { return 2.0 * kPi * r_perp_; }
  /// Cone width theta_C = 1/(omega_L r12).
  double cone_width() const noexcept { return 1.0 / k_r12(); }

 private:
  PairGeometry(double r12, const Vec3& n12, double theta, double r_perp)
      : r12_(r12), n12_(n12), theta_det_(theta), r_perp_(r_perp) {}

  double r12_;
  Vec3 n12_;
  double theta_det_;
  double r_perp_;
};

double norm(const Vec3& v) noexcept;
Vec3 spherical_direction(double theta, double phi) noexcept;

/// Delta_12 = I - n n^T, the projector transverse to the pair axis.
/// Throws DomainError when |n12| differs from 1 by more than 1e-12.
CMat3 transverse_projector(const Vec3& n12);

/// eps_in . M . eps_out^*
cplx projected_overlap(const CVec3& eps_in, const CMat3& m, const CVec3& eps_out);

/// eps_L . Delta_12 . eps_D^* for the helicity-preserving channel eps_D = eps_L^*.
/// Its squared modulus is sin^4(theta)/4, theta the angle between the laser
/// axis and n12. Throws DomainError if eps_L is not circular.
cplx helicity_matrix_element(const Polarization& eps_L, const Vec3& n12);

}  // namespace cbs
