#pragma once
// Validated enclosures of zeta(s) for real s > 1, by partial sum plus an
// integral sandwich on the tail:
//
//   sum_{n>N} n^-s  is in  [ I - N^-s, I ],   I = N^(1-s)/(s-1).
//
// N is chosen so the sandwich width meets the requested target; if that would
// need more terms than the budget allows, a domain error reports the N that
// would be required.

#include <logsieve/interval.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

namespace logsieve {

namespace detail {

// n^-s with cheap paths for integer and half-integer s.
inline interval pow_neg(std::uint64_t n, const interval& s) {
  interval nn = from_u64(n);
  if (s.is_point() && s.lo == std::floor(s.lo) && s.lo >= 1 && s.lo <= 8) {
    return interval(1.0) / powi(nn, unsigned(s.lo));
  }
  if (s.is_point() && s.lo * 2 == std::floor(s.lo * 2) && s.lo >= 1 && s.lo <= 8) {
    unsigned k = unsigned(s.lo);  // s = k + 1/2
    return interval(1.0) / (powi(nn, k) * sqrt(nn));
  }
  return exp(-(s * log(nn)));
}

inline interval zeta_partial(std::uint64_t N, const interval& s) {
  // descending accumulation keeps each rounding at the running magnitude
  interval acc(0.0);
  for (std::uint64_t n = N; n >= 1; --n) acc += pow_neg(n, s);
  return acc;
}

}  // namespace detail

inline constexpr std::uint64_t zeta_term_budget = 50'000'000;

inline interval zeta_point(const interval& s, double width_target = 1e-10) {
  if (!(s.lo >= 1.01))
    throw std::domain_error("zeta_point: need s >= 1.01 with margin");
  // sandwich width is N^-s; solve N = width^(-1/s)
  double needed = std::pow(width_target, -1.0 / s.lo);
  std::uint64_t N = static_cast<std::uint64_t>(needed) + 1;
  if (N < 64) N = 64;
  if (N > zeta_term_budget)
    throw std::domain_error(
        "zeta_point: s too close to 1 for the term budget; would need N = " +
        std::to_string(N));

  static std::map<std::tuple<double, double, std::uint64_t>, interval> cache;
  auto key = std::make_tuple(s.lo, s.hi, N);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  interval partial = detail::zeta_partial(N, s);
  interval Nn = from_u64(N);
  interval I = pow(Nn, interval(1.0) - s) / (s - interval(1.0));
  interval last = detail::pow_neg(N, s);
  interval tail(std::fmax(0.0, (I - last).lo), I.hi);
  interval total = partial + tail;
  cache.emplace(key, total);
  return total;
}

}  // namespace logsieve
