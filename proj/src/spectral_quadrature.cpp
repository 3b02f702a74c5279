#include "cbs/spectral_quadrature.hpp"

#include <array>
#include <cmath>

namespace cbs::numerics {

QuadratureResult<cplx> integrate_spectrum_weighted(const ComplexFn& weight, const Drive& drive,
                                                   const AtomResonance& res, const QuadratureOptions& opts,
                                                   const single_atom::IntensityOptions& intensity) {
  // Validates s once up front so the integrand never throws mid-quadrature.
  const double total = single_atom::single_atom_intensities(drive, res, intensity).inelastic;
  const double scale = res.gamma() * total / (4.0 * kPi);
  auto integrand = [&](double x) {
    return weight(x) * (scale * std::norm(single_atom::inelastic_kernel(x, drive, res)));
  };
  const double d = std::abs(drive.delta());
  const std::array<double, 3> peaks{-d, 0.0, d};
  return integrate_real_line(ComplexFn(integrand), 0.0, single_atom::default_half_width(drive, res), peaks, opts);
}

}  // namespace cbs::numerics
