#include "cbs/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

namespace cbs::numerics {

namespace {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T, class F>
QuadratureResult<T> gk_piece(const F& f, double a, double b, const QuadratureOptions& opts) {
  using boost::math::quadrature::gauss_kronrod;
  QuadratureResult<T> r;
  std::size_t count = 0;
  auto counted = [&](double x) -> T {
    ++count;
    return f(x);
  };
  double err = 0.0;
  double l1 = 0.0;
  r.value = gauss_kronrod<double, 15>::integrate(counted, a, b, opts.max_depth, opts.rel_tol, &err, &l1);
  r.error_estimate = std::abs(err);
  r.evaluations = count;
  r.converged = std::isfinite(magnitude(r.value)) &&
                r.error_estimate <= std::max(opts.tol, opts.rel_tol * l1);
  return r;
}

template <class T>
void accumulate(QuadratureResult<T>& total, const QuadratureResult<T>& piece) {
  total.value += piece.value;
  total.error_estimate += piece.error_estimate;
  total.evaluations += piece.evaluations;
  total.converged = total.converged && piece.converged;
}

QuadratureResult<cplx> widen(const QuadratureResult<double>& r) {
  return {cplx{r.value, 0.0}, r.error_estimate, r.evaluations, r.converged};
}

QuadratureResult<cplx> widen(const QuadratureResult<cplx>& r) { return r; }

void validate(const QuadratureOptions& opts) {
  if (!(opts.tol > 0.0) || !(opts.rel_tol > 0.0))
    throw DomainError("quadrature: tolerances must be positive");
}

template <class T, class F>
QuadratureResult<T> integrate_impl(const F& f, double a, double b, const QuadratureOptions& opts) {
  validate(opts);
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: bounds must be finite");
  if (a == b) return {T{}, 0.0, 0, true};
  auto r = gk_piece<T>(f, a, b, opts);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "integrate: no convergence on [" << a << ", " << b << "], error estimate "
        << r.error_estimate << " after " << r.evaluations << " evaluations";
    throw QuadratureError(msg.str(), widen(r));
  }
  return r;
}

template <class T, class F>
QuadratureResult<T> real_line_impl(const F& f, double center, double half_width,
                                   std::span<const double> breakpoints, const QuadratureOptions& opts) {
  validate(opts);
  if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(center))
    throw DomainError("integrate_real_line: window must be finite with positive width");

  const double lo = center - half_width;
  const double hi = center + half_width;
  std::vector<double> cuts{lo, hi};
  for (double p : breakpoints)
    if (p > lo && p < hi) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult<T> total{T{}, 0.0, 0, true};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) accumulate(total, gk_piece<T>(f, cuts[i], cuts[i + 1], opts));

  double inner = half_width;
  bool tail_done = false;
  for (unsigned k = 0; k < opts.max_tail_doublings; ++k) {
    const double outer = 2.0 * inner;
    const auto left = gk_piece<T>(f, center - outer, center - inner, opts);
    const auto right = gk_piece<T>(f, center + inner, center + outer, opts);
    accumulate(total, left);
    accumulate(total, right);
    inner = outer;
    const double contribution = magnitude(left.value) + magnitude(right.value);
    if (contribution < std::max(opts.tol, opts.rel_tol * magnitude(total.value)) / 10.0) {
      // The untouched remainder is bounded by the last pair for integrands
      // decaying like 1/x^2 or faster.
      total.error_estimate += contribution;
      tail_done = true;
      break;
    }
  }
  total.converged = total.converged && tail_done;
  if (!total.converged) {
    std::ostringstream msg;
    msg << "integrate_real_line: no convergence (tail " << (tail_done ? "closed" : "open")
        << ", error estimate " << total.error_estimate << ", " << total.evaluations << " evaluations)";
    throw QuadratureError(msg.str(), widen(total));
  }
  return total;
}

}  // namespace

QuadratureResult<double> integrate(const RealFn& f, double a, double b, const QuadratureOptions& opts) {
  return integrate_impl<double>(f, a, b, opts);
}

QuadratureResult<cplx> integrate(const ComplexFn& f, double a, double b, const QuadratureOptions& opts) {
  return integrate_impl<cplx>(f, a, b, opts);
}

QuadratureResult<cplx> integrate_real_line(const ComplexFn& f, double center, double half_width,
                                           std::span<const double> breakpoints, const QuadratureOptions& opts) {
  return real_line_impl<cplx>(f, center, half_width, breakpoints, opts);
}

QuadratureResult<double> integrate_real_line(const RealFn& f, double center, double half_width,
                                             std::span<const double> breakpoints, const QuadratureOptions& opts) {
  return real_line_impl<double>(f, center, half_width, breakpoints, opts);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

Vec3 CounterRng::unit_vector(std::uint64_t index) const noexcept {
  const double cos_theta = 1.0 - 2.0 * uniform(2 * index);
  const double phi = 2.0 * kPi * uniform(2 * index + 1);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

McEstimate sphere_average(const DirectionFn& f, std::size_t samples, std::uint64_t seed, unsigned shards) {
  if (samples < 100) throw DomainError("sphere_average: at least 100 samples required");
  if (shards == 0) throw DomainError("sphere_average: shard count must be positive");

  const CounterRng rng(seed);
  const std::size_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<double> block_sum(blocks, 0.0);
  std::vector<double> block_sumsq(blocks, 0.0);

  auto run_block = [&](std::size_t b) {
    const std::size_t first = b * kMcBlockSize;
    const std::size_t last = std::min(samples, first + kMcBlockSize);
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      const double v = f(rng.unit_vector(i));
      sum += v;
      sumsq += v * v;
    }
    block_sum[b] = sum;
    block_sumsq[b] = sumsq;
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(shards, blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
  }

  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq - sum * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples, seed};
}

}  // namespace cbs::numerics
