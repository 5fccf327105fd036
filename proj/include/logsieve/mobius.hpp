#pragma once
// The m-family of logarithmically weighted Moebius averages, squarefree
// weighted sums, and certified sup scanners.
//
//   m(X)       = sum_{n<=X,(n,q)=1} mu(n)/n
//   m_check    = sum mu(n)/n log(X/n)        m_checkcheck = ... log^2(X/n)
//   m_tilde    = sum mu(n)/kappa(n) log(X/n) m_tildetilde = ... log^2(X/n)
//
// X is treated as a real: when an integer falls inside the enclosure of X,
// both memberships are evaluated and hulled.  Sums accumulate in fixed-order
// blocks of 2^16 terms so results are reproducible under any parallel
// decomposition of the outer loop.
//
// Scanners certify  sup_{X in [a,b]} N(X) * S(X)  for a step-accumulating sum
// S and a smooth normalizer N by maximizing per constancy piece; pieces with
// a log(X/l) factor are continuous in X and unimodal between breakpoints, so
// the endpoints plus the interior critical point dominate.  Scanner
// arithmetic runs in long double intervals: several published sup constants
// are tight at 13 significant digits, and double-width enclosures would risk
// overshooting them by rounding alone.

#include <logsieve/euler.hpp>
#include <logsieve/interval.hpp>
#include <logsieve/primes.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace logsieve {

inline interval to_double(const xinterval& x) {
  return {detail::next_down(static_cast<double>(x.lo)),
          detail::next_up(static_cast<double>(x.hi))};
}

enum class MKind { m, m_check, m_checkcheck, m_tilde, m_tildetilde };

inline constexpr u64 default_m_cutoff = 100'000'000;

// kappa of a squarefree n from its factor list: prod (p+1), exact in u64.
inline u64 kappa_squarefree(const factor_view& v) {
  u64 k = 1;
  for (int i = 0; i < v.k; ++i) k *= v.primes[i] + 1;
  return k;
}

inline bool divides_any(const factor_view& v, const std::vector<prime_power>& q_primes) {
  for (const auto& [p, e] : q_primes) {
    (void)e;
    for (int i = 0; i < v.k; ++i)
      if (v.primes[i] == p) return true;
  }
  return false;
}

inline interval m_family(MKind kind, interval X, u64 q, u64 cutoff = default_m_cutoff) {
  if (!(X.lo > 0)) throw std::domain_error("m_family: X must be positive");
  u64 n_lo = static_cast<u64>(std::floor(X.lo));
  u64 n_hi = static_cast<u64>(std::floor(X.hi));
  if (n_hi > cutoff) throw resource_error("m_family: X exceeds the configured cutoff");

  const bool log_weight = kind != MKind::m;
  const int log_pow = (kind == MKind::m_checkcheck || kind == MKind::m_tildetilde) ? 2 : 1;
  const bool kappa_w = kind == MKind::m_tilde || kind == MKind::m_tildetilde;
  auto q_primes = factorize(q);

  interval logX = log_weight ? log(X) : interval(0.0);
  interval total(0.0), block(0.0), boundary(0.0);
  u32 in_block = 0;
  if (n_hi >= 1) {
    for_each_factored(1, n_hi + 1, [&](const factor_view& v) {
      if (v.mu == 0 || divides_any(v, q_primes)) return;
      interval term = kappa_w ? ratio(v.mu, kappa_squarefree(v)) : ratio(v.mu, v.n);
      if (log_weight) {
        interval L = logX - log(interval(double(v.n)));
        term *= (log_pow == 2) ? L * L : L;
      }
      if (v.n <= n_lo) {
        block += term;
        if (++in_block == (1u << 16)) {
          total += block;
          block = interval(0.0);
          in_block = 0;
        }
      } else {
        boundary += term;  // membership ambiguous: X encloses an integer
      }
    });
  }
  total += block;
  if (n_lo != n_hi) total = hull(total, total + boundary);
  return total;
}

inline interval m_family(MKind kind, double X, u64 q, u64 cutoff = default_m_cutoff) {
  return m_family(kind, interval(X), q, cutoff);
}

// int_1^X f(s)/s ds for f in {m_check_q, m_tilde_q}; f is affine in log s
// between integers, so each piece integrates in closed form.  Used to test
// the summation-by-parts identity against m_checkcheck / m_tildetilde.
inline interval m_log_integral(MKind kind, double X, u64 q) {
  if (kind != MKind::m_check && kind != MKind::m_tilde)
    throw std::domain_error("m_log_integral: integrand must be m_check or m_tilde");
  if (!(X >= 1)) throw std::domain_error("m_log_integral: need X >= 1");
  const bool kappa_w = kind == MKind::m_tilde;
  auto q_primes = factorize(q);
  u64 nX = static_cast<u64>(std::floor(X));

  interval A(0.0), B(0.0), total(0.0);
  interval L_prev(0.0);
  u64 s_prev = 1;
  auto integrate_to = [&](interval L) {
    // int (A log s + B) d log s
    total += A * (L * L - L_prev * L_prev) / 2.0 + B * (L - L_prev);
    L_prev = L;
  };
  for_each_factored(1, nX + 1, [&](const factor_view& v) {
    if (v.mu == 0 || divides_any(v, q_primes)) return;
    if (v.n > s_prev) {
      integrate_to(log(interval(double(v.n))));
      s_prev = v.n;
    }
    interval w = kappa_w ? ratio(v.mu, kappa_squarefree(v)) : ratio(v.mu, v.n);
    A += w;
    B -= w * log(interval(double(v.n)));
  });
  integrate_to(log(interval(X)));
  return total;
}

// ---------------------------------------------------------------------------
// Squarefree weighted sums.
// ---------------------------------------------------------------------------

// Per-prime factor of the multiplicative weights, templated so the double
// path (sums) and long double path (scanners) share definitions.
template <class T>
basic_interval<T> weight_term(const std::string& id, u64 p) {
  using IV = basic_interval<T>;
  IV P = IV(T(p));
  if (id == "inv_l") return IV(T(1)) / P;
  if (id == "nu_over_l") {
    // nu(2) = 1, nu(p) = p/(p-2) for odd p; weight nu(p)/p
    if (p == 2) return IV(T(0.5));
    return IV(T(1)) / (P - T(2));
  }
  if (id == "inv_phi") return IV(T(1)) / (P - T(1));
  if (id == "A_over_phi") {
    IV sp = sqrt(P);
    IV A = IV(T(1)) + (P - T(2)) / (P * sp - P - sp + T(2));
    return A / (P - T(1));
  }
  if (id == "sqhalf") return IV(T(1)) / (P - sqrt(P));  // 1/(sqrt(l) phi_half(l))
  if (id == "inv_phihalf_sq") return IV(T(1)) / powi(sqrt(P) - T(1), 2);
  if (id == "l_phihalf_sq") return P / powi(sqrt(P) - T(1), 2);
  if (id == "l2_phi_sq") return P * P / powi(P - T(1), 2);
  if (id == "phi_sq") return IV(T(1)) / powi(P - T(1), 2);
  if (id == "theta_sq") {
    // p^(2 theta - 2) / (p^theta - 1)^2
    IV pt = pow(P, theta_const<T>());
    return (pt * pt) / (P * P * powi(pt - T(1), 2));
  }
  throw std::invalid_argument("unknown weight id: " + id);
}

template <class T>
basic_interval<T> weight_of(const std::string& id, const factor_view& v) {
  basic_interval<T> w(T(1));
  for (int i = 0; i < v.k; ++i) w *= weight_term<T>(id, v.primes[i]);
  return w;
}

// sum_{l<=X, (l,q)=1} mu^2(l) w(l) log^k(arg/l);  arg defaults to X.
inline interval weighted_sum(const std::string& weight_id, interval X, u64 q,
                             int log_power = 0, double inner_log_arg = 0) {
  if (!(X.lo >= 1)) throw std::domain_error("weighted_sum: need X >= 1");
  u64 n_lo = static_cast<u64>(std::floor(X.lo));
  u64 n_hi = static_cast<u64>(std::floor(X.hi));
  if (n_hi > default_m_cutoff) throw resource_error("weighted_sum: X exceeds the cutoff");
  auto q_primes = factorize(q);
  interval logA = log_power ? log(inner_log_arg > 0 ? interval(inner_log_arg) : X)
                            : interval(0.0);
  interval total(0.0), block(0.0), boundary(0.0);
  u32 in_block = 0;
  for_each_factored(1, n_hi + 1, [&](const factor_view& v) {
    if (v.mu == 0 || divides_any(v, q_primes)) return;
    interval term = weight_of<double>(weight_id, v);
    if (log_power) {
      interval L = logA - log(interval(double(v.n)));
      term *= (log_power == 2) ? L * L : L;
    }
    if (v.n <= n_lo) {
      block += term;
      if (++in_block == (1u << 16)) {
        total += block;
        block = interval(0.0);
        in_block = 0;
      }
    } else {
      boundary += term;
    }
  });
  total += block;
  if (n_lo != n_hi) total = hull(total, total + boundary);
  return total;
}

// ---------------------------------------------------------------------------
// Certified sup scanners.
// ---------------------------------------------------------------------------

struct ScanSpec {
  std::string weight_id;
  enum class Form {
    log_ratio_over_log_sq,  // (1/log^2 X) sum w_l log(X/l)
    sum_over_log,           // (1/log X)   sum w_l
    sum_over_x,             // (1/X)       sum w_l
    x_times_tail            // X * (full_mass(q) - sum_{l<=X} w_l)
  } form;
};

inline ScanSpec scan_spec(const std::string& id) {
  using F = ScanSpec::Form;
  if (id == "sqhalf_logscan") return {"sqhalf", F::log_ratio_over_log_sq};
  if (id == "sumvar1log_scan") return {"A_over_phi", F::log_ratio_over_log_sq};
  if (id == "phi_tail_scan") return {"phi_sq", F::x_times_tail};
  if (id == "l2_phi_scan") return {"l2_phi_sq", F::sum_over_x};
  if (id == "inv_phihalf_scan") return {"inv_phihalf_sq", F::sum_over_log};
  if (id == "l_phihalf_scan") return {"l_phihalf_sq", F::sum_over_x};
  throw std::invalid_argument("unknown scan id: " + id);
}

inline constexpr double default_scan_cap = 1e6;

// Validated enclosure of sup over X in [x_lo, x_hi]; .hi is the certified
// upper bound, .lo the best evaluated lower bound.
//
// For the x_times_tail form the infinite squarefree mass enters with its own
// cutoff band, and X times that band dominates any desk-cutoff upper bound
// (the published sup constants for this form were computed at cutoff 3e9).
// deflate_mass_band replaces the mass by its lower endpoint, certifying
// sup_X X*(M_lo - a(X)) <= sup_X X*tail(X); that deflated bound is the
// quantity comparable against an externally published sup constant.
inline interval threshold_scan(const std::string& scan_id, u64 q, double x_lo, double x_hi,
                               double cap = default_scan_cap, bool deflate_mass_band = false) {
  const auto spec = scan_spec(scan_id);
  using F = ScanSpec::Form;
  if (!(x_lo >= 1 && x_lo <= x_hi)) throw std::domain_error("threshold_scan: bad range");
  if ((spec.form == F::sum_over_log || spec.form == F::log_ratio_over_log_sq) && x_lo <= 1)
    throw std::domain_error("threshold_scan: log normalizer needs x_lo > 1");
  if (x_hi > cap) throw resource_error("threshold_scan: range exceeds the desk-scale cap");

  auto q_primes = factorize(q);
  using XV = xinterval;
  XV full(0.0L);
  if (spec.form == F::x_times_tail) {
    // full squarefree mass of the weight, with the q-local factors removed
    auto fm = eval_catalog("phi_sq_full").total;
    interval loc = local_factor_product("phi_sq", q);
    interval f = fm / loc;
    full = deflate_mass_band ? XV(f.lo) : XV(f.lo, f.hi);
  }

  u64 n_hi = static_cast<u64>(std::floor(x_hi));
  XV a(0.0L), b(0.0L);  // sum w_l and sum w_l log l
  const bool need_b = spec.form == F::log_ratio_over_log_sq;

  long double best_hi = -std::numeric_limits<long double>::infinity();
  long double best_lo = best_hi;

  auto consider = [&](const XV& val) {
    if (val.hi > best_hi) best_hi = val.hi;
    if (val.lo > best_lo) best_lo = val.lo;
  };

  // Maximize the current piece over X in [p_lo, p_hi] (clipped to range).
  auto flush_piece = [&](long double p_lo, long double p_hi) {
    p_lo = std::max<long double>(p_lo, x_lo);
    p_hi = std::min<long double>(p_hi, x_hi);
    if (!(p_lo <= p_hi)) return;
    switch (spec.form) {
      case F::log_ratio_over_log_sq: {
        XV L1 = log(XV(p_lo)), L2 = log(XV(p_hi));
        auto eval = [&](const XV& L) { return (a * L - b) / (L * L); };
        consider(eval(L1));
        consider(eval(L2));
        if (a.lo > 0) {
          XV Lc = (XV(2.0L) * b) / a;  // critical point of (aL-b)/L^2
          if (Lc.hi > L1.lo && Lc.lo < L2.hi) {
            XV Lc_clip(std::max(Lc.lo, L1.lo), std::min(Lc.hi, L2.hi));
            if (Lc_clip.lo <= Lc_clip.hi) {
              long double save = best_lo;
              consider(eval(Lc_clip));
              best_lo = save;  // interior candidate certifies only the upper side
            }
          }
        }
        break;
      }
      case F::sum_over_log:
        consider(a / log(XV(p_lo)));  // decreasing in X on the piece
        break;
      case F::sum_over_x:
        consider(a / XV(p_lo));
        break;
      case F::x_times_tail: {
        // increasing in X; the open right end still bounds the piece
        long double save = best_lo;
        consider(XV(p_hi) * (full - a));
        best_lo = save;
        consider(XV(p_lo) * (full - a));
        break;
      }
    }
  };

  long double prev = 1.0L;
  for_each_factored(1, n_hi + 1, [&](const factor_view& v) {
    if (v.mu == 0 || divides_any(v, q_primes)) return;
    if (static_cast<long double>(v.n) > prev) {
      flush_piece(prev, static_cast<long double>(v.n));
      prev = static_cast<long double>(v.n);
    }
    XV w = weight_of<long double>(spec.weight_id, v);
    a += w;
    if (need_b) b += w * log(XV(static_cast<long double>(v.n)));
  });
  flush_piece(prev, x_hi);

  if (best_lo > best_hi) best_lo = best_hi;
  return to_double(XV(best_lo, best_hi));
}

}  // namespace logsieve
