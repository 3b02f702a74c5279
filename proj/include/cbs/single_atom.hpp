#pragma once

// One atom: one- and two-photon scattering amplitudes and the photodetection
// signal to second order in the saturation parameter.

#include <boost/rational.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbs/core.hpp"

namespace cbs::single_atom {

/// 1/(omega_i - omega_0) for omega_i given by its detuning from omega_at.
/// Polarization and geometric phase factors are applied by callers.
cplx t1_amplitude(double detuning, const AtomResonance& res);

/// 1/(omega - omega_0) + 1/(2 omega_L - omega - omega_0), the frequency
/// dependence of the detected inelastic photon. Exactly even in laser_offset.
cplx inelastic_kernel(double laser_offset, const Drive& drive, const AtomResonance& res);

/// Two-photon kernel for omega_1 = omega_2 = omega_L and omega_3 = omega_L + laser_offset:
/// inelastic_kernel / (omega_L - omega_0)^2.
cplx t2_kernel(double laser_offset, const Drive& drive, const AtomResonance& res);

struct IntensityOptions {
  double max_s = 0.2;  ///< validity limit of the second-order expansion
  /// Photon number N of the incident state; empty selects N -> infinity.
  std::optional<double> photon_number;
};

/// Channel intensities in units of eta.
struct Intensities {
  double elastic_first = 0.0;   ///< s/2
  double elastic_second = 0.0;  ///< -(N-1)/N s^2
  double inelastic = 0.0;       ///< (N-1)/N s^2/2
  double elastic() const noexcept { return elastic_first + elastic_second; }
  double total() const noexcept { return elastic() + inelastic; }
};

/// Throws ValidityError when s exceeds opts.max_s, DomainError for N < 1.
Intensities single_atom_intensities(const Drive& drive, const AtomResonance& res, const IntensityOptions& opts = {});

using Rational = boost::rational<long long>;

/// Exact large-N coefficients: I_el1 = c1 s, I_el2 = c2 s^2, I_in = c3 s^2.
struct SeriesCoefficients {
  Rational elastic_first;
  Rational elastic_second;
  Rational inelastic;
};

SeriesCoefficients intensity_series_coefficients();

/// P^(in) at omega = omega_L + laser_offset, in units of eta per Gamma,
/// normalized so that its integral is the inelastic intensity.
double inelastic_density(double laser_offset, const Drive& drive, const AtomResonance& res,
                         const IntensityOptions& opts = {});

/// Sampled inelastic spectrum. The elastic line is a delta peak at omega_L
/// and is carried as the scalar `elastic_weight`, never as samples.
struct SpectralDensity {
  std::vector<double> grid;    ///< omega - omega_L, strictly increasing
  std::vector<double> values;  ///< P^(in) >= 0, eta per Gamma
  double norm = 0.0;           ///< analytic integral I^(in), units of eta
  double elastic_weight = 0.0; ///< I_el = I_el1 + I_el2, units of eta
  /// Fraction of `norm` inside [grid.front(), grid.back()].
  double captured_fraction = 1.0;
  std::vector<std::string> warnings;
};

struct SpectrumOptions {
  IntensityOptions intensity{};
  /// Throw instead of warning when the grid does not cover
  /// omega_L +- max(10 Gamma, 4 |delta|).
  bool strict_coverage = false;
};

/// Default window half-width max(10 Gamma, 4 |delta| + 5 Gamma).
double default_half_width(const Drive& drive, const AtomResonance& res);

/// `points` uniform samples on [-w, w], exactly mirror-symmetric about 0.
std::vector<double> symmetric_grid(double half_width, std::size_t points);

SpectralDensity inelastic_spectrum(const Drive& drive, const AtomResonance& res, std::span<const double> grid,
                                   const SpectrumOptions& opts = {});
/// Uses the default grid of 4001 points over the default half-width.
SpectralDensity inelastic_spectrum(const Drive& drive, const AtomResonance& res, const SpectrumOptions& opts = {});

/// Trapezoid integral of the samples.
double trapezoid_integral(const SpectralDensity& spectrum);

struct Peak {
  double position = 0.0;  ///< omega - omega_L
  double height = 0.0;
  double fwhm = 0.0;      ///< from linear interpolation of the half-maximum crossings
};

/// Local maxima of the sampled spectrum, left to right. A peak whose
/// half-maximum crossing falls outside the grid reports fwhm = NaN.
std::vector<Peak> find_peaks(const SpectralDensity& spectrum);

}  // namespace cbs::single_atom
