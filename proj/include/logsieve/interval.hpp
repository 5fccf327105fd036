#pragma once
// Directed-rounding interval arithmetic on IEEE-754 floating point.
//
// Every operation returns an interval that contains the exact real image of
// its operands.  Endpoints are computed in round-to-nearest and then nudged
// outward by one representable step, which is valid regardless of the active
// rounding mode and costs a couple of integer ops per endpoint.  Elementary
// functions go through libm and are widened by enough steps to cover its
// worst-case error (sqrt is correctly rounded; log/exp/log1p are <= 1 ulp on
// this libm, widened by 2 to keep a margin).
//
// basic_interval<double> is the workhorse; basic_interval<long double> exists
// for the sup scanners, whose certified bounds are compared against constants
// that are tight at ~13 significant digits.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace logsieve {

namespace detail {

// Next representable double toward -inf / +inf via the bit pattern.
// Monotone over the whole finite range including ±0 and subnormals.
inline double next_down(double x) {
  if (std::isnan(x) || x == -std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
  auto b = std::bit_cast<std::uint64_t>(x);
  // negative: away from zero; positive: toward zero
  b += (b >> 63) ? std::uint64_t(1) : ~std::uint64_t(0);
  return std::bit_cast<double>(b);
}

inline double next_up(double x) {
  if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto b = std::bit_cast<std::uint64_t>(x);
  b += (b >> 63) ? ~std::uint64_t(0) : std::uint64_t(1);
  return std::bit_cast<double>(b);
}

inline long double next_down(long double x) {
  return std::nextafterl(x, -std::numeric_limits<long double>::infinity());
}

inline long double next_up(long double x) {
  return std::nextafterl(x, std::numeric_limits<long double>::infinity());
}

template <class T> inline T steps_down(T x, int n) {
  for (int i = 0; i < n; ++i) x = next_down(x);
  return x;
}
template <class T> inline T steps_up(T x, int n) {
  for (int i = 0; i < n; ++i) x = next_up(x);
  return x;
}

// libm error allowance in ulps, per endpoint, for transcendentals.
template <class T> constexpr int libm_slack = 2;
template <> inline constexpr int libm_slack<long double> = 3;

inline double fp_log(double x) { return std::log(x); }
inline double fp_exp(double x) { return std::exp(x); }
inline double fp_log1p(double x) { return std::log1p(x); }
inline double fp_sqrt(double x) { return std::sqrt(x); }
inline long double fp_log(long double x) { return std::log(x); }
inline long double fp_exp(long double x) { return std::exp(x); }
inline long double fp_log1p(long double x) { return std::log1p(x); }
inline long double fp_sqrt(long double x) { return std::sqrt(x); }

}  // namespace detail

// Out-of-budget computations (segment too large, cutoff exceeded, ...).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct basic_interval {
  T lo, hi;

  basic_interval() : lo(0), hi(0) {}
  // Point interval; the double is taken as exact (integers <= 2^53, dyadics).
  explicit basic_interval(T point) : lo(point), hi(point) {}
  basic_interval(T l, T h) : lo(l), hi(h) {}

  static basic_interval whole_up_to(T h) {
    return basic_interval(-std::numeric_limits<T>::infinity(), h);
  }

  bool contains(T v) const { return lo <= v && v <= hi; }
  bool contains(const basic_interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const basic_interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool is_point() const { return lo == hi; }
};

using interval = basic_interval<double>;
using xinterval = basic_interval<long double>;

template <class T>
inline basic_interval<T> hull(const basic_interval<T>& a, const basic_interval<T>& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

// Upper bound on hi - lo (rounded up one step).
template <class T>
inline T width(const basic_interval<T>& x) {
  if (x.lo == x.hi) return 0;
  return detail::next_up(x.hi - x.lo);
}

template <class T>
inline T midpoint(const basic_interval<T>& x) {
  T m = x.lo + (x.hi - x.lo) / 2;
  if (!std::isfinite(m)) m = (x.lo + x.hi) / 2;
  return m;
}

template <class T>
inline basic_interval<T> operator-(const basic_interval<T>& x) {
  return {-x.hi, -x.lo};
}

template <class T>
inline basic_interval<T> operator+(const basic_interval<T>& a, const basic_interval<T>& b) {
  return {detail::next_down(a.lo + b.lo), detail::next_up(a.hi + b.hi)};
}

template <class T>
inline basic_interval<T> operator-(const basic_interval<T>& a, const basic_interval<T>& b) {
  return {detail::next_down(a.lo - b.hi), detail::next_up(a.hi - b.lo)};
}

template <class T>
inline basic_interval<T> operator*(const basic_interval<T>& a, const basic_interval<T>& b) {
  T p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  T lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  T hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return {detail::next_down(lo), detail::next_up(hi)};
}

template <class T>
inline basic_interval<T> operator/(const basic_interval<T>& a, const basic_interval<T>& b) {
  if (b.lo <= 0 && 0 <= b.hi)
    throw std::domain_error("interval division by an interval containing 0");
  T p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  T lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  T hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return {detail::next_down(lo), detail::next_up(hi)};
}

template <class T>
inline basic_interval<T>& operator+=(basic_interval<T>& a, const basic_interval<T>& b) {
  a = a + b;
  return a;
}
template <class T>
inline basic_interval<T>& operator-=(basic_interval<T>& a, const basic_interval<T>& b) {
  a = a - b;
  return a;
}
template <class T>
inline basic_interval<T>& operator*=(basic_interval<T>& a, const basic_interval<T>& b) {
  a = a * b;
  return a;
}

// Scalar conveniences; the scalar is treated as exact.
template <class T>
inline basic_interval<T> operator*(const basic_interval<T>& a, T s) {
  return a * basic_interval<T>(s);
}
template <class T>
inline basic_interval<T> operator*(T s, const basic_interval<T>& a) {
  return a * basic_interval<T>(s);
}
template <class T>
inline basic_interval<T> operator+(const basic_interval<T>& a, T s) {
  return a + basic_interval<T>(s);
}
template <class T>
inline basic_interval<T> operator-(const basic_interval<T>& a, T s) {
  return a - basic_interval<T>(s);
}
template <class T>
inline basic_interval<T> operator/(const basic_interval<T>& a, T s) {
  return a / basic_interval<T>(s);
}

template <class T>
inline basic_interval<T> abs(const basic_interval<T>& x) {
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return -x;
  return {T(0), std::fmax(-x.lo, x.hi)};
}

// Exact ratio n/d as an interval (one rounding, nudged).
template <class T = double>
inline basic_interval<T> ratio(std::int64_t n, std::uint64_t d) {
  T q = T(n) / T(d);
  // n and d exact as T requires |n|,d <= 2^53 for double; callers keep that.
  return {detail::next_down(q), detail::next_up(q)};
}

// u64 that may exceed the 2^53 exact range.
template <class T = double>
inline basic_interval<T> from_u64(std::uint64_t v) {
  T x = T(v);
  if constexpr (sizeof(T) > 8) return basic_interval<T>(x);
  if (v <= (std::uint64_t(1) << 53)) return basic_interval<T>(x);
  return {detail::next_down(x), detail::next_up(x)};
}

template <class T>
inline basic_interval<T> sqrt(const basic_interval<T>& x) {
  if (x.lo < 0) throw std::domain_error("interval sqrt of a negative interval");
  // IEEE sqrt is correctly rounded: one step suffices.
  T lo = detail::next_down(detail::fp_sqrt(x.lo));
  if (lo < 0) lo = 0;
  return {lo, detail::next_up(detail::fp_sqrt(x.hi))};
}

template <class T>
inline basic_interval<T> log(const basic_interval<T>& x) {
  if (x.lo <= 0) throw std::domain_error("interval log needs a positive interval");
  constexpr int k = detail::libm_slack<T>;
  return {detail::steps_down(detail::fp_log(x.lo), k),
          detail::steps_up(detail::fp_log(x.hi), k)};
}

// log(1+x); accurate for tiny x (piece widths in the sweeps).
template <class T>
inline basic_interval<T> log1p(const basic_interval<T>& x) {
  if (x.lo <= -1) throw std::domain_error("interval log1p needs x > -1");
  constexpr int k = detail::libm_slack<T>;
  return {detail::steps_down(detail::fp_log1p(x.lo), k),
          detail::steps_up(detail::fp_log1p(x.hi), k)};
}

template <class T>
inline basic_interval<T> exp(const basic_interval<T>& x) {
  constexpr int k = detail::libm_slack<T>;
  T lo = detail::steps_down(detail::fp_exp(x.lo), k);
  if (lo < 0) lo = 0;
  return {lo, detail::steps_up(detail::fp_exp(x.hi), k)};
}

// Integer power by repeated squaring.
template <class T>
inline basic_interval<T> powi(basic_interval<T> x, unsigned k) {
  basic_interval<T> r(T(1));
  while (k) {
    if (k & 1u) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}

// x^r for real (interval) exponent, x > 0, via exp(r log x).
template <class T>
inline basic_interval<T> pow(const basic_interval<T>& x, const basic_interval<T>& r) {
  return exp(r * log(x));
}
template <class T>
inline basic_interval<T> pow(const basic_interval<T>& x, T r) {
  return exp(basic_interval<T>(r) * log(x));
}

// ---------------------------------------------------------------------------
// Fundamental constants.  Decimal strings are parsed per endpoint type; the
// parse is correctly rounded, so one step outward encloses the true value.
// ---------------------------------------------------------------------------

namespace detail {

inline double parse_fp(const char* s, double) { return std::strtod(s, nullptr); }
inline long double parse_fp(const char* s, long double) { return std::strtold(s, nullptr); }

template <class T>
inline basic_interval<T> const_from_string(const char* s) {
  T v = parse_fp(s, T{});
  return {next_down(v), next_up(v)};
}

}  // namespace detail

template <class T = double>
inline basic_interval<T> gamma_const() {
  static const auto v = detail::const_from_string<T>(
      "0.577215664901532860606512090082402431042159335939924");
  return v;
}

template <class T = double>
inline basic_interval<T> pi_const() {
  static const auto v = detail::const_from_string<T>(
      "3.141592653589793238462643383279502884197169399375106");
  return v;
}

template <class T = double>
inline basic_interval<T> log2_const() {
  static const auto v = detail::const_from_string<T>(
      "0.693147180559945309417232121458176568075500134360256");
  return v;
}

template <class T = double>
inline basic_interval<T> log10_const() {
  static const auto v = detail::const_from_string<T>(
      "2.302585092994045684017991454684364207601101488628772");
  return v;
}

template <class T = double>
inline basic_interval<T> e_const() {
  static const auto v = detail::const_from_string<T>(
      "2.718281828459045235360287471352662497757247093699960");
  return v;
}

// theta = 1 - 1/log(10^12); stored once, threaded everywhere.
template <class T = double>
inline basic_interval<T> theta_const() {
  static const auto v = basic_interval<T>(T(1)) -
                        basic_interval<T>(T(1)) / (T(12) * log10_const<T>());
  return v;
}

// pi^2/6 and its inverse are used constantly by the kernel machinery.
template <class T = double>
inline basic_interval<T> pi_sq_over_6() {
  static const auto v = powi(pi_const<T>(), 2) / T(6);
  return v;
}

inline interval const_catalog(const std::string& id) {
  if (id == "gamma") return gamma_const();
  if (id == "pi") return pi_const();
  if (id == "log2") return log2_const();
  if (id == "log10") return log10_const();
  if (id == "e") return e_const();
  if (id == "theta") return theta_const();
  if (id == "pi_sq_over_6") return pi_sq_over_6();
  throw std::invalid_argument("unknown constant id: " + id);
}

}  // namespace logsieve
