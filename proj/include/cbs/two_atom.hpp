#pragma once

// Two distant atoms in the helicity-preserving channel: photon exchange,
// ladder (background) and crossed (interference) terms, and the double
// scattering enhancement factor. Intensities are in units of eta~.

#include <cstddef>
#include <cstdint>

#include "cbs/core.hpp"
#include "cbs/numerics.hpp"

namespace cbs::two_atom {

/// How the slow factors e^{i omega r12} / omega of the exchange amplitude are
/// treated. phase_neglect freezes both at omega_L (valid for delta, Gamma
/// much smaller than c/r12); exact_phase keeps them.
enum class PropagationMode { phase_neglect, exact_phase };

struct Propagation {
  PropagationMode mode = PropagationMode::phase_neglect;
  double k_r12 = 100.0;  ///< omega_L r12
};

/// B(omega) = -3 Gamma e^{i omega r12} / (4 omega r12 (omega - omega_0)) for
/// omega given by its detuning from omega_at. Throws DomainError if k_r12 <= 0.
cplx exchange_factor(double detuning, const Drive& drive, const AtomResonance& res, double k_r12,
                     PropagationMode mode = PropagationMode::phase_neglect);

struct ElasticTerms {
  double ladder_first = 0.0;    ///< L^(1) = s
  double crossed_first = 0.0;   ///< C^(1) = s
  double ladder_second = 0.0;   ///< L^(2,el) = -4 s^2
  double crossed_second = 0.0;  ///< C^(2,el) = -4 s^2
  double ladder() const noexcept { return ladder_first + ladder_second; }
  double crossed() const noexcept { return crossed_first + crossed_second; }
};

ElasticTerms ladder_crossed_elastic(const Drive& drive, const AtomResonance& res);

struct InelasticLadder {
  double path_I = 0.0;   ///< inelastic scattering first: (3/4 + delta^2/Gamma^2) s^2/2
  double path_II = 0.0;  ///< elastic scattering first: s^2/2
  double ladder = 0.0;   ///< L^(in) = 2 I_I + 2 I_II
};

InelasticLadder inelastic_ladder(const Drive& drive, const AtomResonance& res);

/// C^(in) = 3/2 s^2, independent of the detuning.
double inelastic_crossed(const Drive& drive, const AtomResonance& res);

struct Enhancement {
  double alpha = 2.0;
  double x = 0.0;  ///< s0/(4 - 10 s), alpha = (2 + x)/(1 + x)
};

/// Closed-form alpha = (8 - (19 - 4 d^2) s)/(4 - (9 - 4 d^2) s), d = delta/Gamma.
/// Throws ValidityError if s > max_s or the denominator is not positive.
Enhancement enhancement_factor(const Drive& drive, const AtomResonance& res, double max_s = 0.2);

/// (8 + s0)/(4 + s0): the large-detuning form with x = s0/4.
double alpha_large_detuning(double s0);
/// 2 - s0/4: the small-s0 form.
double alpha_linear(double s0);

/// Every channel at exact backscattering, units of eta~.
struct CbsSignal {
  double ladder_el1 = 0.0;
  double crossed_el1 = 0.0;
  double ladder_el2 = 0.0;
  double crossed_el2 = 0.0;
  double ladder_in = 0.0;
  double crossed_in = 0.0;
  double path_I = 0.0;
  double path_II = 0.0;
  double alpha = 2.0;  ///< (L + C)/L from the assembled channels
  double x = 0.0;

  double ladder() const noexcept { return ladder_el1 + ladder_el2 + ladder_in; }
  double crossed() const noexcept { return crossed_el1 + crossed_el2 + crossed_in; }
  double ladder_elastic() const noexcept { return ladder_el1 + ladder_el2; }
  double crossed_elastic() const noexcept { return crossed_el1 + crossed_el2; }
};

/// Assembles all channels. Throws ValidityError as enhancement_factor does.
CbsSignal cbs_signal(const Drive& drive, const AtomResonance& res, double max_s = 0.2);

/// |eps_L . Delta_12 . eps_D^*|^2 in the helicity-preserving channel.
double angular_factor(const Polarization& eps_L, const Vec3& n12);

/// eta~ bookkeeping. eta~ = (3 Gamma/(4 d omega_L R))^2 <|B(omega_L)|^2 |eps_L.Delta.eps_D^*|^2>;
/// |B(omega_L)|^2 is orientation independent, so eta~ reduces to the
/// angular average, estimated here by Monte Carlo.
struct EtaTildeEstimate {
  numerics::McEstimate angular;     ///< <sin^4(theta)/4> over uniform pair axes
  double exchange_modulus_sq = 0.0; ///< |B(omega_L)|^2
  double prefactor = 0.0;           ///< exchange_modulus_sq * angular.mean
  static constexpr double kSphereAverage = 2.0 / 15.0;
  /// Constant 3/8 of the commonly quoted closed form for eta~; it equals the
  /// in-plane average of sin^4(theta), not the sphere average above.
  static constexpr double kQuotedConstant = 3.0 / 8.0;
  bool low_statistics = false;      ///< fewer than 10^4 samples
};

inline constexpr std::size_t kMinEtaTildeSamples = 10000;

EtaTildeEstimate etatilde_prefactor(const Drive& drive, const AtomResonance& res, double k_r12,
                                    std::size_t samples, std::uint64_t seed, unsigned shards = 1);

// Quadrature routes over the inelastic spectrum, in units of eta~.

struct LadderQuadrature {
  numerics::QuadratureResult<double> path_I;   ///< integral of |B(w)/B(w_L)|^2 P^(in)
  numerics::QuadratureResult<double> path_II;  ///< integral of P^(in)
};

LadderQuadrature inelastic_ladder_quadrature(const Drive& drive, const AtomResonance& res,
                                             const numerics::QuadratureOptions& opts = {},
                                             const Propagation& prop = {});

/// 2 * integral of Re{B(w)/B(w_L)} P^(in): one interfering pair of paths
/// (3/4 s^2 with the phase neglected). C^(in) is twice this.
numerics::QuadratureResult<double> crossed_interference_quadrature(const Drive& drive, const AtomResonance& res,
                                                                   const numerics::QuadratureOptions& opts = {},
                                                                   const Propagation& prop = {});

}  // namespace cbs::two_atom
