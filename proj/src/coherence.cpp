#include "cbs/coherence.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cbs/errors.hpp"
#include "cbs/single_atom.hpp"
#include "cbs/two_atom.hpp"

namespace cbs::coherence {

PathAmplitudes path_amplitudes(double laser_offset, double theta, double k_rperp, const Drive& drive,
                               const AtomResonance& res) {
  const double delta = drive.delta();
  const cplx kernel = single_atom::inelastic_kernel(laser_offset, drive, res);
  const double half_phase = 0.5 * k_rperp * theta;
  return {kernel * std::polar(1.0, -half_phase) / res.resonance_denominator(delta + laser_offset),
          kernel * std::polar(1.0, half_phase) / res.resonance_denominator(delta)};
}

double fixed_frequency_phase(double laser_offset, const Drive& drive, const AtomResonance& res) {
  const double g = res.gamma();
  const double delta = drive.delta();
  const double eps = delta + laser_offset;
  return std::atan2(2.0 * (delta - eps) * g, 4.0 * delta * eps + g * g);
}

FixedFrequencyPattern fixed_frequency_pattern(double laser_offset, double k_rperp, const Drive& drive,
                                              const AtomResonance& res, std::span<const double> theta_grid) {
  FixedFrequencyPattern out;
  const auto at_zero = path_amplitudes(laser_offset, 0.0, k_rperp, drive, res);
  out.modulus_I = std::abs(at_zero.path_I);
  out.modulus_II = std::abs(at_zero.path_II);
  out.phi0 = fixed_frequency_phase(laser_offset, drive, res);
  out.curve.theta.assign(theta_grid.begin(), theta_grid.end());
  out.curve.intensity.reserve(theta_grid.size());
  for (double t : theta_grid) {
    const auto e = path_amplitudes(laser_offset, t, k_rperp, drive, res);
    out.curve.intensity.push_back(std::norm(e.path_I + e.path_II));
  }
  return out;
}

namespace {

cplx elastic_amplitude(const ElasticResponse& elastic, double detuning) {
  if (const auto* atom = std::get_if<AtomResonance>(&elastic)) return 1.0 / atom->resonance_denominator(detuning);
  return {1.0, 0.0};
}

numerics::QuadratureResult<cplx> integrate_over_detector(const numerics::ComplexFn& f, const Drive& drive,
                                                         const AtomResonance& res,
                                                         const numerics::QuadratureOptions& opts) {
  const double d = std::abs(drive.delta());
  const std::array<double, 3> peaks{-d, 0.0, d};
  const double half_width = std::max(40.0 * res.gamma(), 10.0 * d);
  return numerics::integrate_real_line(f, 0.0, half_width, peaks, opts);
}

}  // namespace

DetectorOverlap detector_state_overlap(const Drive& drive, const AtomResonance& res, const ElasticResponse& elastic,
                                       const numerics::QuadratureOptions& opts) {
  const double delta = drive.delta();
  const cplx laser_response = elastic_amplitude(elastic, delta);
  auto amplitudes = [&](double x) {
    const cplx kernel = single_atom::inelastic_kernel(x, drive, res);
    return std::pair{kernel * elastic_amplitude(elastic, delta + x), kernel * laser_response};
  };

  const auto cross = integrate_over_detector(
      [&](double x) {
        const auto [a, b] = amplitudes(x);
        return std::conj(a) * b;
      },
      drive, res, opts);
  const auto n1 = integrate_over_detector([&](double x) { return cplx{std::norm(amplitudes(x).first), 0.0}; },
                                          drive, res, opts);
  const auto n2 = integrate_over_detector([&](double x) { return cplx{std::norm(amplitudes(x).second), 0.0}; },
                                          drive, res, opts);

  DetectorOverlap out;
  out.overlap = cross.value;
  out.norm_I = n1.value.real();
  out.norm_II = n2.value.real();
  out.gamma = std::abs(out.overlap) / std::sqrt(out.norm_I * out.norm_II);
  out.phi = std::arg(out.overlap);
  out.evaluations = cross.evaluations + n1.evaluations + n2.evaluations;
  out.error_estimate = cross.error_estimate + n1.error_estimate + n2.error_estimate;
  return out;
}

DetectorOverlap detector_state_overlap(const Drive& drive, const AtomResonance& res,
                                       const numerics::QuadratureOptions& opts) {
  return detector_state_overlap(drive, res, ElasticResponse{res}, opts);
}

double gamma_paths_closed_form(const Drive& drive, const AtomResonance& res) {
  const double d2 = std::pow(drive.delta() / res.gamma(), 2);
  return std::sqrt((9.0 + 4.0 * d2) / (12.0 + 16.0 * d2));
}

double phi_closed_form(const Drive& drive, const AtomResonance& res) {
  return std::atan2(2.0 * drive.delta(), 3.0 * res.gamma());
}

double gamma_atoms_closed_form(const Drive& drive, const AtomResonance& res) {
  const double d2 = std::pow(drive.delta() / res.gamma(), 2);
  return 6.0 / (7.0 + 4.0 * d2);
}

namespace {

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

AveragedPattern averaged_pattern(double k_rperp, const Drive& drive, const AtomResonance& res,
                                 std::span<const double> theta_grid, double agreement) {
  AveragedPattern out;
  out.overlap = detector_state_overlap(drive, res);
  // Converts integrals of path amplitudes to eta~: kappa * norm_II = s^2/2.
  const double s = drive.s();
  const double kappa =
      res.gamma() * 0.5 * s * s / (4.0 * kPi) * std::norm(res.resonance_denominator(drive.delta()));
  out.path_I = kappa * out.overlap.norm_I;
  out.path_II = kappa * out.overlap.norm_II;
  out.gamma = out.overlap.gamma;
  out.phi = out.overlap.phi;
  out.gamma_closed = gamma_paths_closed_form(drive, res);
  out.phi_closed = phi_closed_form(drive, res);

  const auto closed = two_atom::inelastic_ladder(drive, res);
  const bool with_intensity = s > 0.0;
  if (relative_gap(out.gamma, out.gamma_closed) > agreement || std::abs(out.phi - out.phi_closed) > agreement ||
      (with_intensity && (relative_gap(out.path_I, closed.path_I) > agreement ||
                          relative_gap(out.path_II, closed.path_II) > agreement))) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "averaged_pattern: quadrature disagrees with closed forms (gamma " << out.gamma << " vs "
        << out.gamma_closed << ", phi " << out.phi << " vs " << out.phi_closed << ", I_I " << out.path_I << " vs "
        << closed.path_I << ", I_II " << out.path_II << " vs " << closed.path_II << "; "
        << out.overlap.evaluations << " evaluations, error estimate " << out.overlap.error_estimate << ")";
    throw NumericError(msg.str());
  }

  const double contrast = 2.0 * kappa * std::abs(out.overlap.overlap);
  out.curve.theta.assign(theta_grid.begin(), theta_grid.end());
  for (double t : theta_grid)
    out.curve.intensity.push_back(out.path_I + out.path_II + contrast * std::cos(out.phi + k_rperp * t));
  return out;
}

TotalPattern total_pattern(double k_rperp, const Drive& drive, const AtomResonance& res,
                           std::span<const double> theta_grid, double agreement) {
  if (!(k_rperp > 0.0)) throw DomainError("total_pattern: k r_perp must be positive");
  const auto avg = averaged_pattern(k_rperp, drive, res, {}, agreement);
  TotalPattern out;
  const double root = std::sqrt(avg.path_I * avg.path_II);
  out.ladder_in = 2.0 * avg.path_I + 2.0 * avg.path_II;
  out.crossed_in = 4.0 * root * avg.gamma * std::cos(avg.phi);
  auto pattern = [&](double t) { return out.ladder_in + out.crossed_in * std::cos(k_rperp * t); };

  const double top = pattern(0.0);
  const double bottom = pattern(kPi / k_rperp);
  out.gamma_atoms = (top - bottom) / (top + bottom);
  out.gamma_atoms_formula = avg.gamma * std::cos(avg.phi) * 2.0 * root / (avg.path_I + avg.path_II);
  out.gamma_atoms_closed = gamma_atoms_closed_form(drive, res);

  out.curve.theta.assign(theta_grid.begin(), theta_grid.end());
  for (double t : theta_grid) out.curve.intensity.push_back(pattern(t));
  return out;
}

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

ConeProfile cone_shape(const Drive& drive, const AtomResonance& res, double k_r12,
                       std::span<const double> theta_grid) {
  if (!(k_r12 > 0.0)) throw DomainError("cone_shape: omega_L r12 must be positive");
  const auto signal = two_atom::cbs_signal(drive, res);
  ConeProfile out;
  out.ladder_total = signal.ladder();
  out.ladder_inelastic = signal.ladder_in;
  out.first_zero = kPi / k_r12;
  if (k_r12 < 10.0) {
    std::ostringstream msg;
    msg << "omega_L r12 = " << k_r12 << " is not much larger than 1; far-field exchange is inaccurate";
    out.warnings.push_back(msg.str());
  }
  for (auto* c : {&out.crossed_total, &out.crossed_inelastic}) c->theta.assign(theta_grid.begin(), theta_grid.end());
  for (double t : theta_grid) {
    const double shape = sinc(k_r12 * t);
    out.crossed_total.intensity.push_back(signal.crossed() * shape);
    out.crossed_inelastic.intensity.push_back(signal.crossed_in * shape);
  }
  return out;
}

numerics::McEstimate crossed_phase_average(double k_r12, double theta, std::size_t samples, std::uint64_t seed,
                                           unsigned shards) {
  // k_L along +z, k_D at angle theta from -z, both of length k.
  const Vec3 q{std::sin(theta), 0.0, 1.0 - std::cos(theta)};
  return numerics::sphere_average(
      [&](const Vec3& n) { return std::cos(k_r12 * (q[0] * n[0] + q[1] * n[1] + q[2] * n[2])); }, samples, seed,
      shards);
}

double distinct_linewidth_check(const AtomResonance& inelastic_atom, const ElasticResponse& elastic,
                                const Drive& drive) {
  return detector_state_overlap(drive, inelastic_atom, elastic).gamma;
}

}  // namespace cbs::coherence
