#pragma once

// Quadrature and Monte Carlo machinery used to check every closed form in
// the physics modules against an independent numerical route.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "cbs/core.hpp"
#include "cbs/errors.hpp"

namespace cbs::numerics {

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;  ///< absolute, >= 0
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double tol = 1e-8;        ///< absolute target
  double rel_tol = 1e-12;   ///< relative target handed to each Gauss-Kronrod piece
  unsigned max_depth = 25;  ///< bisection depth per piece
  unsigned max_tail_doublings = 60;
};

/// Raised when a quadrature cannot meet its tolerance; carries what was
/// accumulated so far.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, QuadratureResult<cplx> partial)
      : NumericError(what), partial_(partial) {}
  const QuadratureResult<cplx>& partial() const noexcept { return partial_; }

 private:
  QuadratureResult<cplx> partial_;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

/// Adaptive 15-point Gauss-Kronrod on [a, b].
QuadratureResult<double> integrate(const RealFn& f, double a, double b, const QuadratureOptions& opts = {});
QuadratureResult<cplx> integrate(const ComplexFn& f, double a, double b, const QuadratureOptions& opts = {});

/// Integral over the whole real line. The window [center - half_width,
/// center + half_width] is split at `breakpoints` (those inside the window)
/// and integrated adaptively; the tails are then covered by geometrically
/// growing intervals until one more pair contributes less than
/// max(tol, rel_tol |I|)/10. Throws QuadratureError on failure.
QuadratureResult<cplx> integrate_real_line(const ComplexFn& f, double center, double half_width,
                                           std::span<const double> breakpoints = {},
                                           const QuadratureOptions& opts = {});
QuadratureResult<double> integrate_real_line(const RealFn& f, double center, double half_width,
                                             std::span<const double> breakpoints = {},
                                             const QuadratureOptions& opts = {});

/// Counter-based uniform generator: the n-th draw is the SplitMix64 output
/// function applied to seed + (n + 1) * golden gamma, so any draw can be
/// produced independently of the others.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept;
  /// Uniform direction on the unit sphere for sample `index`: inverse CDF on
  /// cos(theta), uniform azimuth (draws 2 index and 2 index + 1).
  Vec3 unit_vector(std::uint64_t index) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

using DirectionFn = std::function<double(const Vec3&)>;

/// Samples are reduced in fixed blocks, in index order, whatever the shard count.
inline constexpr std::size_t kMcBlockSize = 4096;

/// Uniform-direction Monte Carlo mean of f. Bit-identical for a given
/// (seed, samples) and any number of shards. Throws DomainError if
/// samples < 100 or shards == 0.
McEstimate sphere_average(const DirectionFn& f, std::size_t samples, std::uint64_t seed,
                          unsigned shards = 1);

}  // namespace cbs::numerics
