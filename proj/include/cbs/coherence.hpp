#pragma once

// Which-path picture of the inelastic crossed term: the two reversed paths
// I (inelastic scattering first) and II (elastic scattering first), their
// interference patterns versus detection angle, and the degrees of coherence
// gamma_I,II and gamma_1,2.
//
// Path amplitudes carry the normalization in which prefactors independent of
// omega_D and theta are dropped; only ratios and contrasts of them are
// meaningful. Pattern intensities are converted to units of eta~.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cbs/core.hpp"
#include "cbs/numerics.hpp"

namespace cbs::coherence {

struct PathAmplitudes {
  cplx path_I;
  cplx path_II;
};

/// E_I, E_II for a detected photon at omega_D = omega_L + laser_offset and a
/// transverse phase k r_perp theta.
PathAmplitudes path_amplitudes(double laser_offset, double theta, double k_rperp, const Drive& drive,
                               const AtomResonance& res);

/// phi_0 in (-pi, pi]: tan(phi_0) = 2 (delta - eps) Gamma / (4 delta eps + Gamma^2),
/// eps = omega_D - omega_at. Equals arg(E_I^* E_II) at theta = 0.
double fixed_frequency_phase(double laser_offset, const Drive& drive, const AtomResonance& res);

struct Curve {
  std::vector<double> theta;
  std::vector<double> intensity;
};

struct FixedFrequencyPattern {
  Curve curve;  ///< |E_I + E_II|^2, amplitude units
  double phi0 = 0.0;
  double modulus_I = 0.0;
  double modulus_II = 0.0;
  double minimum() const noexcept { return (modulus_I - modulus_II) * (modulus_I - modulus_II); }
  double maximum() const noexcept { return (modulus_I + modulus_II) * (modulus_I + modulus_II); }
};

FixedFrequencyPattern fixed_frequency_pattern(double laser_offset, double k_rperp, const Drive& drive,
                                              const AtomResonance& res, std::span<const double> theta_grid);

/// The elastically scattering atom's frequency response.
struct FlatResponse {};
using ElasticResponse = std::variant<FlatResponse, AtomResonance>;

/// Overlap of the undetected photon's states for paths I and II, computed as
/// frequency integrals of the path amplitudes over omega_D.
struct DetectorOverlap {
  cplx overlap;          ///< <D_I|D_II> = integral of E_I^* E_II
  double norm_I = 0.0;   ///< <D_I|D_I>
  double norm_II = 0.0;  ///< <D_II|D_II>
  double gamma = 0.0;    ///< |overlap| / sqrt(norm_I norm_II)
  double phi = 0.0;      ///< arg(overlap) in (-pi, pi]
  std::size_t evaluations = 0;
  double error_estimate = 0.0;
};

DetectorOverlap detector_state_overlap(const Drive& drive, const AtomResonance& res,
                                       const numerics::QuadratureOptions& opts = {.tol = 1e-13, .rel_tol = 1e-12});

/// Same overlap with the inelastic atom `res` and an arbitrary elastic scatterer.
DetectorOverlap detector_state_overlap(const Drive& drive, const AtomResonance& res,
                                       const ElasticResponse& elastic,
                                       const numerics::QuadratureOptions& opts = {.tol = 1e-13, .rel_tol = 1e-12});

/// sqrt((9 + 4 d^2)/(12 + 16 d^2)), d = delta/Gamma.
double gamma_paths_closed_form(const Drive& drive, const AtomResonance& res);
/// atan2(2 delta, 3 Gamma).
double phi_closed_form(const Drive& drive, const AtomResonance& res);
/// 6/(7 + 4 d^2).
double gamma_atoms_closed_form(const Drive& drive, const AtomResonance& res);

struct AveragedPattern {
  double path_I = 0.0;   ///< I_I, eta~
  double path_II = 0.0;  ///< I_II, eta~
  double gamma = 0.0;    ///< gamma_I,II from the overlap quadrature
  double phi = 0.0;
  double gamma_closed = 0.0;
  double phi_closed = 0.0;
  DetectorOverlap overlap;
  Curve curve;  ///< I_I + I_II + 2 sqrt(I_I I_II) gamma cos(phi + k r_perp theta), eta~
};

/// Averages the fixed-frequency pattern over omega_D. Throws NumericError if
/// the quadrature and the closed forms for gamma_I,II, phi, I_I, I_II
/// disagree by more than `agreement` (relative; absolute for phi).
AveragedPattern averaged_pattern(double k_rperp, const Drive& drive, const AtomResonance& res,
                                 std::span<const double> theta_grid, double agreement = 1e-6);

struct TotalPattern {
  double ladder_in = 0.0;   ///< 2 I_I + 2 I_II
  double crossed_in = 0.0;  ///< 4 sqrt(I_I I_II) gamma_I,II cos(phi)
  double gamma_atoms = 0.0; ///< gamma_1,2 read off the assembled curve
  double gamma_atoms_formula = 0.0;  ///< gamma_I,II cos(phi) 2 sqrt(I_I I_II)/(I_I + I_II)
  double gamma_atoms_closed = 0.0;
  Curve curve;  ///< ladder_in + crossed_in cos(k r_perp theta), eta~
};

/// Both atoms as inelastic scatterer, added incoherently. Throws DomainError
/// unless k_rperp > 0.
TotalPattern total_pattern(double k_rperp, const Drive& drive, const AtomResonance& res,
                           std::span<const double> theta_grid, double agreement = 1e-6);

/// sin(x)/x with the removable singularity filled in.
double sinc(double x) noexcept;

struct ConeProfile {
  Curve crossed_total;      ///< C sin(k r12 theta)/(k r12 theta), all channels
  Curve crossed_inelastic;  ///< C^(in) sin(k r12 theta)/(k r12 theta)
  double ladder_total = 0.0;
  double ladder_inelastic = 0.0;
  double first_zero = 0.0;  ///< pi/(k r12)
  std::vector<std::string> warnings;
};

/// Crossed term averaged over pair orientations at fixed r12. Warns when
/// k_r12 < 10; throws DomainError when k_r12 <= 0.
ConeProfile cone_shape(const Drive& drive, const AtomResonance& res, double k_r12,
                       std::span<const double> theta_grid);

/// Monte Carlo average over pair axes of cos((k_L + k_D) . r12) with k_D at
/// angle theta from exact backscattering and |k_D| = |k_L|.
numerics::McEstimate crossed_phase_average(double k_r12, double theta, std::size_t samples, std::uint64_t seed,
                                           unsigned shards = 1);

/// gamma_I,II when the elastic scatterer's response is `elastic` (flat, or
/// an atom of different linewidth on the same line).
double distinct_linewidth_check(const AtomResonance& inelastic_atom, const ElasticResponse& elastic,
                                const Drive& drive);

}  // namespace cbs::coherence
