#pragma once

#include "cbs/numerics.hpp"
#include "cbs/single_atom.hpp"

namespace cbs::numerics {

/// Integral of weight(laser_offset) * P^(in)(omega_L + laser_offset) over the
/// real line, in units of eta. The window omega_L +- max(10 Gamma,
/// 4|delta| + 5 Gamma) is split at the two spectral peaks and the tails are
/// extended geometrically.
QuadratureResult<cplx> integrate_spectrum_weighted(const ComplexFn& weight, const Drive& drive,
                                                   const AtomResonance& res, const QuadratureOptions& opts = {},
                                                   const single_atom::IntensityOptions& intensity = {});

}  // namespace cbs::numerics
