#include "cbs/single_atom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cbs/errors.hpp"
#include "cbs/numerics.hpp"

namespace cbs::single_atom {

cplx t1_amplitude(double detuning, const AtomResonance& res) {
  return 1.0 / res.resonance_denominator(detuning);
}

cplx inelastic_kernel(double laser_offset, const Drive& drive, const AtomResonance& res) {
  const double delta = drive.delta();
  return 1.0 / res.resonance_denominator(delta + laser_offset) +
         1.0 / res.resonance_denominator(delta - laser_offset);
}

cplx t2_kernel(double laser_offset, const Drive& drive, const AtomResonance& res) {
  const cplx laser = res.resonance_denominator(drive.delta());
  return inelastic_kernel(laser_offset, drive, res) / (laser * laser);
}

namespace {

double pair_fraction(const IntensityOptions& opts) {
  if (!opts.photon_number) return 1.0;
  const double n = *opts.photon_number;
  if (!(n >= 1.0) || !std::isfinite(n)) throw DomainError("photon number must be finite and >= 1");
  return (n - 1.0) / n;
}

void check_validity(const Drive& drive, const IntensityOptions& opts) {
  if (drive.s() > opts.max_s) {
    std::ostringstream msg;
    msg << "saturation parameter s = " << drive.s() << " exceeds the second-order validity limit "
        << opts.max_s;
    throw ValidityError(msg.str());
  }
}

}  // namespace

Intensities single_atom_intensities(const Drive& drive, const AtomResonance&, const IntensityOptions& opts) {
  check_validity(drive, opts);
  const double f = pair_fraction(opts);
  const double s = drive.s();
  return {0.5 * s, -f * s * s, 0.5 * f * s * s};
}

SeriesCoefficients intensity_series_coefficients() {
  return {Rational(1, 2), Rational(-1), Rational(1, 2)};
}

double inelastic_density(double laser_offset, const Drive& drive, const AtomResonance& res,
                         const IntensityOptions& opts) {
  const double total = single_atom_intensities(drive, res, opts).inelastic;
  return res.gamma() * total / (4.0 * kPi) * std::norm(inelastic_kernel(laser_offset, drive, res));
}

double default_half_width(const Drive& drive, const AtomResonance& res) {
  return std::max(10.0 * res.gamma(), 4.0 * std::abs(drive.delta()) + 5.0 * res.gamma());
}

std::vector<double> symmetric_grid(double half_width, std::size_t points) {
  if (points < 3) throw DomainError("symmetric_grid: need at least 3 points");
  if (!(half_width > 0.0)) throw DomainError("symmetric_grid: half-width must be positive");
  std::vector<double> g(points);
  const auto m = static_cast<long long>(points - 1);
  for (long long i = 0; i < static_cast<long long>(points); ++i)
    g[static_cast<std::size_t>(i)] = static_cast<double>(2 * i - m) / static_cast<double>(m) * half_width;
  return g;
}

SpectralDensity inelastic_spectrum(const Drive& drive, const AtomResonance& res, std::span<const double> grid,
                                   const SpectrumOptions& opts) {
  if (grid.size() < 3) throw DomainError("inelastic_spectrum: grid needs at least 3 points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("inelastic_spectrum: grid must be strictly increasing");

  const auto intensities = single_atom_intensities(drive, res, opts.intensity);
  SpectralDensity out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  for (double x : grid) out.values.push_back(inelastic_density(x, drive, res, opts.intensity));
  out.norm = intensities.inelastic;
  out.elastic_weight = intensities.elastic();

  const double required = std::max(10.0 * res.gamma(), 4.0 * std::abs(drive.delta()));
  if (grid.front() > -required || grid.back() < required) {
    double captured = 1.0;
    if (out.norm > 0.0) {
      const auto unit = Drive::make(drive.delta(), 1.0, res);
      const IntensityOptions loose{.max_s = 1.0, .photon_number = std::nullopt};
      const auto mass = numerics::integrate(
          numerics::RealFn([&](double x) { return inelastic_density(x, unit, res, loose); }), grid.front(), grid.back(),
          {.tol = 1e-12, .rel_tol = 1e-10});
      captured = mass.value / 0.5;
    }
    out.captured_fraction = captured;
    std::ostringstream msg;
    msg << "spectrum grid [" << grid.front() << ", " << grid.back() << "] does not cover omega_L +- "
        << required << "; captured mass fraction " << captured;
    if (opts.strict_coverage) throw DomainError(msg.str());
    out.warnings.push_back(msg.str());
  }
  return out;
}

SpectralDensity inelastic_spectrum(const Drive& drive, const AtomResonance& res, const SpectrumOptions& opts) {
  const auto grid = symmetric_grid(default_half_width(drive, res), 4001);
  return inelastic_spectrum(drive, res, grid, opts);
}

double trapezoid_integral(const SpectralDensity& spectrum) {
  double acc = 0.0;
  for (std::size_t i = 1; i < spectrum.grid.size(); ++i)
    acc += 0.5 * (spectrum.values[i] + spectrum.values[i - 1]) * (spectrum.grid[i] - spectrum.grid[i - 1]);
  return acc;
}

namespace {

double crossing(double x0, double y0, double x1, double y1, double level) {
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

std::vector<Peak> find_peaks(const SpectralDensity& spectrum) {
  const auto& x = spectrum.grid;
  const auto& y = spectrum.values;
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;

    Peak p;
    p.height = y[i];
    p.position = x[i];
    // three-point parabola through the maximum
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double h_right = x[i + 1] - x[i];
    const double h_left = x[i] - x[i - 1];
    if (denom < 0.0 && std::abs(h_right - h_left) <= 1e-9 * h_right) {
      const double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
      p.position = x[i] + shift * h_right;
    }

    const double half = 0.5 * y[i];
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (std::size_t j = i; j > 0; --j)
      if (y[j - 1] < half) {
        left = crossing(x[j - 1], y[j - 1], x[j], y[j], half);
        break;
      }
    for (std::size_t j = i; j + 1 < y.size(); ++j)
      if (y[j + 1] < half) {
        right = crossing(x[j], y[j], x[j + 1], y[j + 1], half);
        break;
      }
    p.fwhm = right - left;
    peaks.push_back(p);
  }
  return peaks;
}

}  // namespace cbs::single_atom
