#pragma once

// Scalar photons: the same two-atom problem with the polarization structure
// dropped. Intensities are in units of eta_s. The scalar linewidth Gamma_s
// exceeds the vector one by kScalarLinewidthRatio for the same dipole.
//
// The retained terms are those surviving an average of r12 over one
// wavelength; diagrams that cancel among themselves are not represented.

#include "cbs/core.hpp"
#include "cbs/single_atom.hpp"

namespace cbs::scalar {

struct ScalarConstants {
  double linewidth_ratio = kScalarLinewidthRatio;  ///< Gamma_s / Gamma
  cplx exchange;               ///< B_s = Gamma / (2 omega_L r12 (omega_L - omega_0))
  double exchange_modulus_sq = 0.0;
  ReportingUnit unit = ReportingUnit::eta_s;
};

/// Throws DomainError if k_r12 <= 0.
ScalarConstants scalar_constants(const Drive& drive, const AtomResonance& res, double k_r12);

using single_atom::Rational;

/// Coefficients of s, s^2 and |B|^2 in each contribution. The inelastic
/// double-scattering ladder coefficient is 19/4 + d^2, d = delta/Gamma.
struct ScalarCoefficients {
  Rational ladder_el0_first{1};
  Rational ladder_el0_second{-2};
  Rational ladder_in0{1};
  Rational ladder_el1{1};
  Rational crossed_el1{1};
  Rational ladder_el2{-10};
  Rational crossed_el2{-8};
  Rational ladder_in2_constant{19, 4};
  Rational crossed_in2{3};

  double ladder_in2(double d) const noexcept { return boost::rational_cast<double>(ladder_in2_constant) + d * d; }
};

ScalarCoefficients scalar_coefficients();

/// 2 I_I + 8 I_II with the vectorial path intensities, which reproduces the
/// inelastic double-scattering ladder coefficient (19/4 + d^2) s^2.
double ladder_in2_from_paths(double path_I, double path_II) noexcept;

struct ScalarSignal {
  double ladder_el0 = 0.0;  ///< single scattering, elastic: s - 2 s^2
  double ladder_in0 = 0.0;  ///< single scattering, inelastic: s^2
  double ladder_el1 = 0.0;  ///< |B|^2 s
  double crossed_el1 = 0.0; ///< |B|^2 s
  double ladder_el2 = 0.0;  ///< -10 |B|^2 s^2
  double crossed_el2 = 0.0; ///< -8 |B|^2 s^2
  double ladder_in2 = 0.0;  ///< (19/4 + d^2) |B|^2 s^2
  double crossed_in2 = 0.0; ///< 3 |B|^2 s^2
  double exchange_modulus_sq = 0.0;

  double ladder_double() const noexcept { return ladder_el1 + ladder_el2 + ladder_in2; }
  double crossed_double() const noexcept { return crossed_el1 + crossed_el2 + crossed_in2; }
  /// (L + C)/L of the double-scattering part alone.
  double enhancement() const noexcept { return 1.0 + crossed_double() / ladder_double(); }
  /// C^(in,2)/L^(in,2) = 3/(19/4 + d^2).
  double inelastic_ratio() const noexcept { return crossed_in2 / ladder_in2; }
};

/// Contribution table with |B|^2 = |B_s(omega_L)|^2. Throws ValidityError
/// for s > max_s, DomainError for k_r12 <= 0.
ScalarSignal scalar_signal(const Drive& drive, const AtomResonance& res, double k_r12, double max_s = 0.2);
/// Same with |B|^2 given directly.
ScalarSignal scalar_signal_with_exchange(const Drive& drive, const AtomResonance& res, double exchange_modulus_sq,
                                         double max_s = 0.2);

}  // namespace cbs::scalar
