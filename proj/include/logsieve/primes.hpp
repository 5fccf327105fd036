#pragma once
// Segmented sieving of primes, the Moebius function, squarefree flags and
// least prime factors over ranges up to 1e9, plus exact multiplicative values
// phi / kappa and their real-exponent interval versions phi_s / kappa_s.
//
// All per-n data is exact integer arithmetic; intervals enter only for real
// exponents.  Segments are independent, so disjoint ranges can be sieved
// concurrently and tables are immutable once built.

#include <logsieve/interval.hpp>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <vector>

namespace logsieve {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 sieve_limit = 1'000'000'000ull;  // hi <= sieve_limit + 1

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Primes up to n, grow-only process cache.
inline const std::vector<u32>& primes_up_to(u32 n) {
  static std::vector<u32> primes;
  static u32 limit = 0;
  if (n > limit) {
    u32 new_limit = std::max(n, u32(1024));
    std::vector<char> is_prime(new_limit + 1, 1);
    is_prime[0] = 0;
    if (new_limit >= 1) is_prime[1] = 0;
    for (u64 i = 2; i * i <= new_limit; ++i)
      if (is_prime[i])
        for (u64 j = i * i; j <= new_limit; j += i) is_prime[j] = 0;
    primes.clear();
    for (u32 i = 2; i <= new_limit; ++i)
      if (is_prime[i]) primes.push_back(i);
    limit = new_limit;
  }
  return primes;
}

// ---------------------------------------------------------------------------
// Streaming factorization sweep.
// ---------------------------------------------------------------------------

// Distinct prime factors of one n, ascending.  For n <= 1e9 there are at most
// nine; at most eight fit below the 31623 trial bound and at most one above.
struct factor_view {
  u64 n = 0;
  int mu = 0;  // 0 when not squarefree
  bool squarefree = false;
  int k = 0;
  u32 primes[10] = {};
};

inline constexpr u64 default_segment = u64(1) << 22;

// Calls fn(const factor_view&) for every n in [lo, hi) in increasing order.
template <class Fn>
void for_each_factored(u64 lo, u64 hi, Fn&& fn, u64 segment = default_segment) {
  if (lo < 1 || hi > sieve_limit + 1 || lo >= hi)
    throw std::domain_error("for_each_factored: need 1 <= lo < hi <= 1e9+1");
  const auto& base = primes_up_to(static_cast<u32>(isqrt(hi - 1)));

  std::vector<u64> rem;
  std::vector<std::uint8_t> cnt, sq;
  std::vector<std::uint16_t> fac;  // 9 slots per position
  constexpr int slots = 9;

  for (u64 a = lo; a < hi; a += segment) {
    u64 b = std::min(hi, a + segment);
    u64 len = b - a;
    rem.assign(len, 0);
    cnt.assign(len, 0);
    sq.assign(len, 1);
    fac.assign(len * slots, 0);
    for (u64 i = 0; i < len; ++i) rem[i] = a + i;

    for (u32 p : base) {
      u64 p64 = p;
      if (p64 * p64 >= b) break;
      u64 start = ((a + p64 - 1) / p64) * p64;
      for (u64 m = start; m < b; m += p64) {
        u64 i = m - a;
        fac[i * slots + cnt[i]++] = static_cast<std::uint16_t>(p);
        rem[i] /= p64;
      }
      u64 pp = p64 * p64;
      if (pp < b) {
        u64 s2 = ((a + pp - 1) / pp) * pp;
        for (u64 m = s2; m < b; m += pp) {
          u64 i = m - a;
          sq[i] = 0;
          while (rem[i] % p64 == 0) rem[i] /= p64;
        }
      }
    }

    factor_view v;
    for (u64 i = 0; i < len; ++i) {
      u64 n = a + i;
      v.n = n;
      v.k = cnt[i];
      for (int j = 0; j < cnt[i]; ++j) v.primes[j] = fac[i * slots + j];
      if (rem[i] > 1) v.primes[v.k++] = static_cast<u32>(rem[i]);
      v.squarefree = sq[i] != 0;
      v.mu = v.squarefree ? ((v.k & 1) ? -1 : 1) : 0;
      fn(static_cast<const factor_view&>(v));
    }
  }
}

// ---------------------------------------------------------------------------
// Materialized table over a single segment.
// ---------------------------------------------------------------------------

struct ArithTable {
  u64 lo = 1, hi = 1;  // [lo, hi)
  std::vector<std::int8_t> mu_v;
  std::vector<std::uint8_t> flags_v;  // bit0 squarefree, bit1 prime
  std::vector<u32> lpf_v;             // least prime factor; lpf(1) = 1

  int mu(u64 n) const { return mu_v[n - lo]; }
  bool squarefree(u64 n) const { return flags_v[n - lo] & 1; }
  bool prime(u64 n) const { return flags_v[n - lo] & 2; }
  u32 lpf(u64 n) const { return lpf_v[n - lo]; }
  u64 size() const { return hi - lo; }
};

inline u64 max_table_length() { return u64(1) << 22; }

inline ArithTable sieve_segment(u64 lo, u64 hi) {
  if (lo < 1 || hi > sieve_limit + 1 || lo >= hi)
    throw std::domain_error("sieve_segment: need 1 <= lo < hi <= 1e9+1");
  if (hi - lo > max_table_length())
    throw resource_error("sieve_segment: segment exceeds the memory budget (2^22)");
  ArithTable t;
  t.lo = lo;
  t.hi = hi;
  t.mu_v.resize(hi - lo);
  t.flags_v.resize(hi - lo);
  t.lpf_v.resize(hi - lo);
  for_each_factored(lo, hi, [&](const factor_view& v) {
    u64 i = v.n - lo;
    t.mu_v[i] = static_cast<std::int8_t>(v.mu);
    bool prime = v.k == 1 && v.squarefree && v.primes[0] == v.n;
    t.flags_v[i] = static_cast<std::uint8_t>((v.squarefree ? 1 : 0) | (prime ? 2 : 0));
    t.lpf_v[i] = v.n == 1 ? 1 : (v.k > 0 ? v.primes[0] : 1);
  });
  return t;
}

// Binary cache: little-endian, fixed layout, bit-exact across platforms.
inline void write_table(const ArithTable& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const char magic[4] = {'L', 'S', 'V', 'T'};
  u32 version = 1;
  f.write(magic, 4);
  f.write(reinterpret_cast<const char*>(&version), 4);
  f.write(reinterpret_cast<const char*>(&t.lo), 8);
  f.write(reinterpret_cast<const char*>(&t.hi), 8);
  f.write(reinterpret_cast<const char*>(t.mu_v.data()), static_cast<std::streamsize>(t.size()));
  f.write(reinterpret_cast<const char*>(t.flags_v.data()), static_cast<std::streamsize>(t.size()));
  f.write(reinterpret_cast<const char*>(t.lpf_v.data()), static_cast<std::streamsize>(4 * t.size()));
}

inline ArithTable read_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4];
  u32 version = 0;
  ArithTable t;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&version), 4);
  if (std::memcmp(magic, "LSVT", 4) != 0 || version != 1)
    throw std::runtime_error("bad sieve cache header in " + path);
  f.read(reinterpret_cast<char*>(&t.lo), 8);
  f.read(reinterpret_cast<char*>(&t.hi), 8);
  if (t.lo >= t.hi || t.hi - t.lo > max_table_length())
    throw std::runtime_error("bad sieve cache range in " + path);
  t.mu_v.resize(t.size());
  t.flags_v.resize(t.size());
  t.lpf_v.resize(t.size());
  f.read(reinterpret_cast<char*>(t.mu_v.data()), static_cast<std::streamsize>(t.size()));
  f.read(reinterpret_cast<char*>(t.flags_v.data()), static_cast<std::streamsize>(t.size()));
  f.read(reinterpret_cast<char*>(t.lpf_v.data()), static_cast<std::streamsize>(4 * t.size()));
  if (!f) throw std::runtime_error("truncated sieve cache " + path);
  return t;
}

// ---------------------------------------------------------------------------
// Multiplicative values.
// ---------------------------------------------------------------------------

struct prime_power {
  u64 p;
  int e;
};

inline std::vector<prime_power> factorize(u64 n) {
  std::vector<prime_power> f;
  if (n <= 1) return f;
  for (u32 p : primes_up_to(static_cast<u32>(isqrt(n)))) {
    if (u64(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) n /= p, ++e;
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

struct mult_value_t {
  u64 n = 1;
  u64 phi = 1;    // Euler phi
  u64 kappa = 1;  // n * prod_{p|n} (1 + 1/p)
  std::vector<prime_power> factors;
};

inline mult_value_t mult_value(u64 n) {
  mult_value_t m;
  m.n = n;
  m.factors = factorize(n);
  for (const auto& [p, e] : m.factors) {
    u64 pe1 = 1;
    for (int i = 0; i < e - 1; ++i) pe1 *= p;
    m.phi *= pe1 * (p - 1);
    m.kappa *= pe1 * (p + 1);
  }
  return m;
}

// phi_s(n) = n^s prod_{p|n} (1 - p^{-s});  kappa_s flips the sign.
inline interval phi_s(u64 n, const interval& s) {
  interval r = pow(from_u64(n), s);
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    r *= interval(1.0) - interval(1.0) / pow(from_u64(p), s);
  }
  return r;
}

inline interval kappa_s(u64 n, const interval& s) {
  interval r = pow(from_u64(n), s);
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    r *= interval(1.0) + interval(1.0) / pow(from_u64(p), s);
  }
  return r;
}

inline bool coprime(u64 n, u64 q) { return std::gcd(n, q) == 1; }

}  // namespace logsieve
