#pragma once
// The headline sum
//
//   Sigma_q(U) = sum_{d,e <= U, (de,q)=1} mu(d)mu(e)/[d,e] log(U/d) log(U/e)
//
// by two independent routes: the literal pairwise double sum (exact lcm via
// gcd, usable to U ~ 2000), and the Moebius-inversion decomposition
//
//   Sigma_q(U) = sum_{l<=U,(l,q)=1} mu^2(l)/l sum_{d<=U/l,(d,lq)=1} mu(d)/d^2
//                  * mcheck_{ldq}(U/(ld))^2
//
// whose inner values mcheck_m(Y) = logY * S1 - S2 depend only on (floor(Y),
// the primes of m below Y); those component pairs are memoized.  Both routes
// return validated enclosures and are cross-checked in the tests.

#include <logsieve/hq.hpp>
#include <logsieve/interval.hpp>
#include <logsieve/mobius.hpp>
#include <logsieve/primes.hpp>

#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace logsieve {

inline constexpr double sigma_pairwise_cap = 2000;
inline constexpr double sigma_decomposition_cap = 1e6;

enum class SigmaMethod { pairwise, decomposition };

struct SigmaResult {
  double U = 0;
  unsigned q = 1;
  SigmaMethod method = SigmaMethod::decomposition;
  interval value;
};

namespace sigma_detail {

struct term_data {
  u64 n;
  int mu;
  u64 kappa;  // unused by the pairwise path
};

// squarefree n <= U with (n, q) = 1, plus interval log(U/n)
inline void collect(double U, unsigned q, std::vector<term_data>& out,
                    std::vector<interval>& logUn) {
  out.clear();
  logUn.clear();
  interval LU = log(interval(U));
  for_each_factored(1, static_cast<u64>(std::floor(U)) + 1, [&](const factor_view& v) {
    if (v.mu == 0 || !coprime(v.n, q)) return;
    out.push_back({v.n, v.mu, 0});
    logUn.push_back(LU - (v.n == 1 ? interval(0.0) : log(interval(double(v.n)))));
  });
}

}  // namespace sigma_detail

inline SigmaResult sigma_pairwise(double U, unsigned q) {
  if (!(U > 1)) throw std::domain_error("sigma_pairwise: need U > 1");
  if (U > sigma_pairwise_cap)
    throw resource_error("sigma_pairwise: U exceeds the pairwise cap (2000)");
  std::vector<sigma_detail::term_data> t;
  std::vector<interval> L;
  sigma_detail::collect(U, q, t, L);

  // d <= e with factor 2 off the diagonal; [d,e] = de/gcd
  interval total(0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    interval row(0.0);
    for (std::size_t j = i; j < t.size(); ++j) {
      u64 g = std::gcd(t[i].n, t[j].n);
      i64 num = i64(t[i].mu) * i64(t[j].mu) * i64(g) * (i == j ? 1 : 2);
      interval term = ratio(num, t[i].n * t[j].n) * L[i] * L[j];
      row += term;
    }
    total += row;
  }
  return {U, q, SigmaMethod::pairwise, total};
}

inline SigmaResult sigma_decomposition(double U, unsigned q) {
  if (!(U > 1)) throw std::domain_error("sigma_decomposition: need U > 1");
  if (U > sigma_decomposition_cap)
    throw resource_error("sigma_decomposition: U exceeds the cap (1e6)");
  const u64 Ui = static_cast<u64>(std::floor(U));
  interval LU = log(interval(U));

  // per-n mu and least prime factor over [1, U] for the inner mcheck loops
  std::vector<std::int8_t> mu(Ui + 1, 0);
  std::vector<u32> lpf(Ui + 1, 1);
  std::vector<interval> logn(Ui + 1, interval(0.0));
  for_each_factored(1, Ui + 1, [&](const factor_view& v) {
    mu[v.n] = static_cast<std::int8_t>(v.mu);
    lpf[v.n] = v.k ? v.primes[0] : 1;
    if (v.n > 1) logn[v.n] = log(interval(double(v.n)));
  });

  // memo for (floor(Y), rad of the coprimality modulus truncated at Y):
  // value is (sum mu(n)/n, sum mu(n) log n/n) over n <= Y, (n, key)=1
  struct pair_iv {
    interval s1, s2;
  };
  std::unordered_map<u64, pair_iv> memo;
  auto mcheck_parts = [&](u64 yf, u64 m_rel) -> pair_iv {
    const bool can_memo = m_rel < (u64(1) << 24);  // key packing room
    u64 key = (yf << 24) | m_rel;
    if (can_memo)
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    interval s1(0.0), s2(0.0);
    for (u64 n = 1; n <= yf; ++n) {
      if (mu[n] == 0 || std::gcd(n, m_rel) != 1) continue;
      interval t = ratio(mu[n], n);
      s1 += t;
      s2 += t * logn[n];
    }
    pair_iv r{s1, s2};
    if (can_memo) memo.emplace(key, r);
    return r;
  };

  interval total(0.0);
  for_each_factored(1, Ui + 1, [&](const factor_view& l) {
    if (l.mu == 0 || !coprime(l.n, q)) return;
    const u64 ell = l.n;
    interval outer = ratio(1, ell);
    interval inner_sum(0.0);
    const u64 dmax = static_cast<u64>(std::floor(U / double(ell)));
    for (u64 d = 1; d <= dmax; ++d) {
      if (mu[d] == 0 || !coprime(d, ell) || !coprime(d, q)) continue;
      const u64 ld = ell * d;
      // relevant primes of l*d*q below Y = U/(ld)
      double Y = U / double(ld);
      u64 yf = static_cast<u64>(std::floor(Y));
      u64 m_rel = 1;
      auto add_primes_lpf = [&](u64 m) {
        while (m > 1) {
          u64 p = m <= Ui ? lpf[m] : m;  // squarefree arguments only
          if (p <= yf && m_rel % p != 0) m_rel *= p;
          while (m % p == 0) m /= p;
        }
      };
      for (int i = 0; i < l.k; ++i)
        if (l.primes[i] <= yf) m_rel *= l.primes[i];
      add_primes_lpf(d);
      add_primes_lpf(q);
      auto parts = mcheck_parts(yf, m_rel);
      interval logY = LU - logn[ld];
      interval mc = logY * parts.s1 - parts.s2;
      inner_sum += ratio(mu[d], d * d) * (mc * mc);
    }
    total += outer * inner_sum;
  });
  return {U, q, SigmaMethod::decomposition, total};
}

inline SigmaResult sigma_direct(double U, unsigned q,
                                SigmaMethod method = SigmaMethod::decomposition) {
  return method == SigmaMethod::pairwise ? sigma_pairwise(U, q) : sigma_decomposition(U, q);
}

// ---------------------------------------------------------------------------
// Residual against the asymptotic main term.
// ---------------------------------------------------------------------------

struct residual_result {
  double U = 0;
  unsigned v = 1;
  interval sigma;
  interval residual;  // Sigma_v(U) - (v/phi(v)) log U + s_v
  interval bound;     // barrier_v * U^(-1/3)
  bool pass = false;
};

// s_v defaults to the validated constant from a 1e6-cap sweep (cached); the
// wider enclosure only makes the residual check harder, never easier.
inline interval sv_for_residuals(unsigned v, double cap = 1e6) {
  static std::map<std::pair<unsigned, double>, interval> cache;
  auto key = std::make_pair(v, cap);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  interval s = sv_constant(cap, v);
  cache.emplace(key, s);
  return s;
}

inline residual_result residual_check(double U, unsigned v, interval s_v,
                                      SigmaMethod method = SigmaMethod::decomposition) {
  if (!(U > 1 && U <= 1e6)) throw std::domain_error("residual_check: need 1 < U <= 1e6");
  if (v != 1 && v != 2) throw std::domain_error("residual_check: v must be 1 or 2");
  residual_result r;
  r.U = U;
  r.v = v;
  r.sigma = sigma_direct(U, v, method).value;
  mult_value_t mv = mult_value(v);
  r.residual = r.sigma - ratio(static_cast<i64>(v), mv.phi) * log(interval(U)) + s_v;
  double barrier = v == 1 ? inputs::barrier_v1 : inputs::barrier_v2;
  r.bound = interval(barrier) * pow(interval(U), interval(-1.0) / 3.0);
  r.pass = abs(r.residual).hi <= r.bound.lo;
  return r;
}

inline residual_result residual_check(double U, unsigned v) {
  return residual_check(U, v, sv_for_residuals(v));
}

}  // namespace logsieve
