#include "cbs/scalar.hpp"

#include <cmath>
#include <sstream>

#include "cbs/errors.hpp"

namespace cbs::scalar {

ScalarConstants scalar_constants(const Drive& drive, const AtomResonance& res, double k_r12) {
  if (!(k_r12 > 0.0) || !std::isfinite(k_r12)) throw DomainError("scalar_constants: r12 must be positive");
  ScalarConstants out;
  out.exchange = res.gamma() / (2.0 * k_r12 * res.resonance_denominator(drive.delta()));
  out.exchange_modulus_sq = std::norm(out.exchange);
  return out;
}

ScalarCoefficients scalar_coefficients() { return {}; }

double ladder_in2_from_paths(double path_I, double path_II) noexcept { return 2.0 * path_I + 8.0 * path_II; }

ScalarSignal scalar_signal_with_exchange(const Drive& drive, const AtomResonance& res, double exchange_modulus_sq,
                                         double max_s) {
  const double s = drive.s();
  if (s > max_s) {
    std::ostringstream msg;
    msg << "scalar_signal: s = " << s << " exceeds the validity limit " << max_s;
    throw ValidityError(msg.str());
  }
  if (!(exchange_modulus_sq >= 0.0)) throw DomainError("scalar_signal: |B|^2 must be non-negative");
  const auto c = scalar_coefficients();
  const auto as_double = [](const Rational& r) { return boost::rational_cast<double>(r); };
  const double b2 = exchange_modulus_sq;
  const double s2 = s * s;
  ScalarSignal out;
  out.exchange_modulus_sq = b2;
  out.ladder_el0 = as_double(c.ladder_el0_first) * s + as_double(c.ladder_el0_second) * s2;
  out.ladder_in0 = as_double(c.ladder_in0) * s2;
  out.ladder_el1 = as_double(c.ladder_el1) * b2 * s;
  out.crossed_el1 = as_double(c.crossed_el1) * b2 * s;
  out.ladder_el2 = as_double(c.ladder_el2) * b2 * s2;
  out.crossed_el2 = as_double(c.crossed_el2) * b2 * s2;
  out.ladder_in2 = c.ladder_in2(drive.delta() / res.gamma()) * b2 * s2;
  out.crossed_in2 = as_double(c.crossed_in2) * b2 * s2;
  return out;
}

ScalarSignal scalar_signal(const Drive& drive, const AtomResonance& res, double k_r12, double max_s) {
  return scalar_signal_with_exchange(drive, res, scalar_constants(drive, res, k_r12).exchange_modulus_sq, max_s);
}

}  // namespace cbs::scalar
