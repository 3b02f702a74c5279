#include "cbs/two_atom.hpp"

#include <cmath>
#include <sstream>

#include "cbs/errors.hpp"
#include "cbs/single_atom.hpp"
#include "cbs/spectral_quadrature.hpp"

namespace cbs::two_atom {

cplx exchange_factor(double detuning, const Drive& drive, const AtomResonance& res, double k_r12,
                     PropagationMode mode) {
  if (!(k_r12 > 0.0) || !std::isfinite(k_r12)) throw DomainError("exchange_factor: r12 must be positive");
  double omega_r = k_r12;
  if (mode == PropagationMode::exact_phase)
    omega_r = k_r12 * (res.omega_at() + detuning) / (res.omega_at() + drive.delta());
  const cplx phase = std::polar(1.0, omega_r);
  return -0.75 * res.gamma() * phase / (omega_r * res.resonance_denominator(detuning));
}

ElasticTerms ladder_crossed_elastic(const Drive& drive, const AtomResonance&) {
  const double s = drive.s();
  return {s, s, -4.0 * s * s, -4.0 * s * s};
}

InelasticLadder inelastic_ladder(const Drive& drive, const AtomResonance& res) {
  const double s = drive.s();
  const double d = drive.delta() / res.gamma();
  InelasticLadder out;
  out.path_II = 0.5 * s * s;
  out.path_I = (0.75 + d * d) * 0.5 * s * s;
  out.ladder = 2.0 * out.path_I + 2.0 * out.path_II;
  return out;
}

double inelastic_crossed(const Drive& drive, const AtomResonance&) {
  return 1.5 * drive.s() * drive.s();
}

Enhancement enhancement_factor(const Drive& drive, const AtomResonance& res, double max_s) {
  const double s = drive.s();
  if (s > max_s) {
    std::ostringstream msg;
    msg << "enhancement_factor: s = " << s << " exceeds the validity limit " << max_s;
    throw ValidityError(msg.str());
  }
  const double d2 = std::pow(drive.delta() / res.gamma(), 2);
  const double den = 4.0 - (9.0 - 4.0 * d2) * s;
  if (!(den > 0.0)) throw ValidityError("enhancement_factor: ladder term is not positive");
  Enhancement out;
  out.alpha = (8.0 - (19.0 - 4.0 * d2) * s) / den;
  out.x = drive.s0() / (4.0 - 10.0 * s);
  const double rewritten = (2.0 + out.x) / (1.0 + out.x);
  if (std::abs(out.alpha - rewritten) > 1e-12 * std::max(1.0, std::abs(out.alpha)))
    throw NumericError("enhancement_factor: alpha and (2+x)/(1+x) disagree");
  return out;
}

double alpha_large_detuning(double s0) { return (8.0 + s0) / (4.0 + s0); }

double alpha_linear(double s0) { return 2.0 - 0.25 * s0; }

CbsSignal cbs_signal(const Drive& drive, const AtomResonance& res, double max_s) {
  const auto enh = enhancement_factor(drive, res, max_s);
  const auto el = ladder_crossed_elastic(drive, res);
  const auto in = inelastic_ladder(drive, res);
  CbsSignal out;
  out.ladder_el1 = el.ladder_first;
  out.crossed_el1 = el.crossed_first;
  out.ladder_el2 = el.ladder_second;
  out.crossed_el2 = el.crossed_second;
  out.ladder_in = in.ladder;
  out.crossed_in = inelastic_crossed(drive, res);
  out.path_I = in.path_I;
  out.path_II = in.path_II;
  out.x = enh.x;
  const double l = out.ladder();
  out.alpha = l > 0.0 ? (l + out.crossed()) / l : 2.0;
  return out;
}

double angular_factor(const Polarization& eps_L, const Vec3& n12) {
  return std::norm(helicity_matrix_element(eps_L, n12));
}

EtaTildeEstimate etatilde_prefactor(const Drive& drive, const AtomResonance& res, double k_r12,
                                    std::size_t samples, std::uint64_t seed, unsigned shards) {
  const auto eps_L = Polarization::circular();
  EtaTildeEstimate out;
  out.angular = numerics::sphere_average([&](const Vec3& n) { return angular_factor(eps_L, n); }, samples, seed,
                                         shards);
  out.exchange_modulus_sq = std::norm(exchange_factor(drive.delta(), drive, res, k_r12));
  out.prefactor = out.exchange_modulus_sq * out.angular.mean;
  out.low_statistics = samples < kMinEtaTildeSamples;
  return out;
}

namespace {

// B(w)/B(w_L) for w = w_L + laser_offset.
cplx exchange_ratio(double laser_offset, const Drive& drive, const AtomResonance& res, const Propagation& prop) {
  const double delta = drive.delta();
  return exchange_factor(delta + laser_offset, drive, res, prop.k_r12, prop.mode) /
         exchange_factor(delta, drive, res, prop.k_r12, prop.mode);
}

numerics::QuadratureResult<double> real_part(const numerics::QuadratureResult<cplx>& r) {
  return {r.value.real(), r.error_estimate, r.evaluations, r.converged};
}

}  // namespace

LadderQuadrature inelastic_ladder_quadrature(const Drive& drive, const AtomResonance& res,
                                             const numerics::QuadratureOptions& opts, const Propagation& prop) {
  LadderQuadrature out;
  out.path_I = real_part(numerics::integrate_spectrum_weighted(
      [&](double x) { return cplx{std::norm(exchange_ratio(x, drive, res, prop)), 0.0}; }, drive, res, opts));
  out.path_II = real_part(numerics::integrate_spectrum_weighted([](double) { return cplx{1.0, 0.0}; }, drive,
                                                                res, opts));
  return out;
}

numerics::QuadratureResult<double> crossed_interference_quadrature(const Drive& drive, const AtomResonance& res,
                                                                   const numerics::QuadratureOptions& opts,
                                                                   const Propagation& prop) {
  return real_part(numerics::integrate_spectrum_weighted(
      [&](double x) { return cplx{2.0 * exchange_ratio(x, drive, res, prop).real(), 0.0}; }, drive, res, opts));
}

}  // namespace cbs::two_atom
