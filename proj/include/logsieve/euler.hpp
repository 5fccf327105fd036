#pragma once
// Validated enclosures for the infinite prime products and prime sums behind
// the assembled constants, as finite parts over p <= P0 plus rigorously
// bounded tails.
//
// Every catalog entry carries a majorant |t(p)| <= C p^-beta valid for the
// primes beyond the cutoff; the tail is then dominated by the integral bound
// sum_{n>P0} C n^-beta <= C P0^(1-beta)/(beta-1) over all integers.  The
// majorant constants are justified per entry where they are registered and
// spot-checked numerically on a window of primes above the cutoff at
// evaluation time; a failure names the offending prime.

#include <logsieve/interval.hpp>
#include <logsieve/primes.hpp>
#include <logsieve/zeta.hpp>
#include <logsieve/inputs.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace logsieve {

struct ProductSpec {
  std::string id;
  enum class Kind { product, sum } kind = Kind::product;
  // term t(p); a product entry contributes the factor 1 + t(p)
  std::function<interval(u64)> local;
  double beta = 2.0;       // tail exponent
  double majorant_c = 1.0; // |t(p)| <= majorant_c * p^-beta for p > cutoff
  u64 min_p = 2;
  bool nonnegative = true;
};

struct TailBound {
  interval partial;  // finite part over p <= cutoff
  interval tail;     // sum remainder, or log-scale remainder for products
  interval total;
  u64 cutoff = 0;
};

inline constexpr u64 default_product_cutoff = 10'000'000;

namespace detail {

inline interval ip(u64 p) { return interval(double(p)); }  // p < 2^53 exact

// A_p = 1 + (p-2)/(p^{3/2} - p - sqrt(p) + 2), the optimal-weight local factor
inline interval selberg_weight_factor(u64 p) {
  interval P = ip(p);
  interval sp = sqrt(P);
  return interval(1.0) + (P - 2.0) / (P * sp - P - sp + 2.0);
}

inline interval p_theta(u64 p) { return pow(ip(p), theta_const()); }

}  // namespace detail

inline const std::vector<ProductSpec>& product_catalog() {
  using K = ProductSpec::Kind;
  using detail::ip;
  static const std::vector<ProductSpec> cat = [] {
    std::vector<ProductSpec> c;
    auto add = [&c](std::string id, K kind, std::function<interval(u64)> f,
                    double beta, double C, u64 min_p = 2, bool nonneg = true) {
      c.push_back({std::move(id), kind, std::move(f), beta, C, min_p, nonneg});
    };

    // prod (1 + 1/(p(p-1)))  = zeta(2)zeta(3)/zeta(6)
    add("I_prod", K::product,
        [](u64 p) { interval P = ip(p); return interval(1.0) / (P * (P - 1.0)); },
        2.0, 1.05);
    // prod_{p>=3} (1 - 1/(p-1)^2); reciprocal of H_prod
    add("twin_inverse", K::product,
        [](u64 p) { interval P = ip(p); return -(interval(1.0) / powi(P - 1.0, 2)); },
        2.0, 1.05, 3, false);
    // prod_{p>=3} (1 + 1/(p(p-2)))
    add("H_prod", K::product,
        [](u64 p) { interval P = ip(p); return interval(1.0) / (P * (P - 2.0)); },
        2.0, 1.05, 3);
    // sum log p / (p(p-1));  log x/x^0.1 peaks at 10/e ~ 3.679
    add("mertens_log_sum", K::sum,
        [](u64 p) { interval P = ip(p); return log(P) / (P * (P - 1.0)); },
        1.9, 3.8);
    // sum 2 log p / (p^2 - 1)
    add("zeta_log_sum2", K::sum,
        [](u64 p) { interval P = ip(p); return (2.0 * log(P)) / (P * P - 1.0); },
        1.9, 7.6);
    // prod (1 + 2/(p(sqrt(p)-1)))
    add("D_prod", K::product,
        [](u64 p) { interval P = ip(p); return interval(2.0) / (P * (sqrt(P) - 1.0)); },
        1.5, 2.1);
    // prod (1 + (A_p-1)/p)
    add("G_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          return (detail::selberg_weight_factor(p) - 1.0) / P;
        },
        1.5, 1.1);
    // sum log(p)(p-1-(p-2)A_p) / ((A_p+p-1)(p-1))
    add("G_sum", K::sum,
        [](u64 p) {
          interval P = ip(p);
          interval A = detail::selberg_weight_factor(p);
          return log(P) * (P - 1.0 - (P - 2.0) * A) / ((A + P - 1.0) * (P - 1.0));
        },
        1.4, 3.8, 2, false);
    // prod (1 + (p(A_p-1) + A_p p^{1/3} + 1)/((p-1)p^{2/3}))
    add("G_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval A = detail::selberg_weight_factor(p);
          interval p13 = pow(P, interval(1.0) / 3.0);
          return (P * (A - 1.0) + A * p13 + 1.0) / ((P - 1.0) * p13 * p13);
        },
        7.0 / 6.0, 1.3);
    // prod (1 + 1/(p(p+1)))
    add("P_half_resid", K::product,
        [](u64 p) { interval P = ip(p); return interval(1.0) / (P * (P + 1.0)); },
        2.0, 1.0);
    // prod (1 + 1/((sqrt(p)-1)(p+1)))  = zeta(3/2) * P_half_resid
    add("P_half_full", K::product,
        [](u64 p) { interval P = ip(p); return interval(1.0) / ((sqrt(P) - 1.0) * (P + 1.0)); },
        1.5, 1.05);
    // prod (1 + 1/((p^theta-1)(p+1)))
    add("P_theta_full", K::product,
        [](u64 p) {
          interval P = ip(p);
          return interval(1.0) / ((detail::p_theta(p) - 1.0) * (P + 1.0));
        },
        1.96, 1.05);
    // sum -(sqrt(p)-2) log p / ((p-sqrt(p)+1)(p-1))
    add("sqhalf_sum", K::sum,
        [](u64 p) {
          interval P = ip(p);
          interval sp = sqrt(P);
          return -((sp - 2.0) * log(P)) / ((P - sp + 1.0) * (P - 1.0));
        },
        1.4, 3.8, 2, false);
    // prod (1 + (p^{1/6}+1)/(p^{5/6}(sqrt(p)-1)))
    add("sqhalf_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval p16 = pow(P, interval(1.0) / 6.0);
          interval p56 = pow(P, interval(5.0) / 6.0);
          return (p16 + 1.0) / (p56 * (sqrt(P) - 1.0));
        },
        7.0 / 6.0, 1.3);
    // sum -(2 sqrt(p)-3) log p / ((p-2 sqrt(p)+2)(p-1))
    add("sumhalf_sum", K::sum,
        [](u64 p) {
          interval P = ip(p);
          interval sp = sqrt(P);
          return -((2.0 * sp - 3.0) * log(P)) / ((P - 2.0 * sp + 2.0) * (P - 1.0));
        },
        1.4, 7.6, 2, false);
    // prod (1 + (2 sqrt(p)+p^{1/3}-1)/(p^{2/3}(sqrt(p)-1)^2))
    add("sumhalf_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval sp = sqrt(P);
          interval p13 = pow(P, interval(1.0) / 3.0);
          return (2.0 * sp + p13 - 1.0) / (p13 * p13 * powi(sp - 1.0, 2));
        },
        7.0 / 6.0, 2.3);
    // prod_{p>=3} (1 + 2/((sqrt(p)-1)(p-2)))
    add("parity_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          return interval(2.0) / ((sqrt(P) - 1.0) * (P - 2.0));
        },
        1.5, 2.1, 3);
    // prod (1 + (2p-1)/((sqrt(p)-1)(p-1)^2))
    add("sumvarp_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          return (2.0 * P - 1.0) / ((sqrt(P) - 1.0) * powi(P - 1.0, 2));
        },
        1.5, 2.1);
    // prod (1 + 1/(p^{2-2theta}(p^theta-1)^2))
    add("ss1log_prod2", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval pt = detail::p_theta(p);
          return interval(1.0) / ((P * P / (pt * pt)) * powi(pt - 1.0, 2));
        },
        2.0, 1.05);
    // prod (1 + 1/(p^{3/2-2theta}(p^theta-1)^2))
    add("ss1log_prod3", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval pt = detail::p_theta(p);
          return interval(1.0) / ((P * sqrt(P) / (pt * pt)) * powi(pt - 1.0, 2));
        },
        1.5, 1.05);
    // prod (1 + (2p^{1-theta} - p^{1-2theta} - 1)/(p^{2-2theta}(p^theta-1)^2))
    add("J_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval pt = detail::p_theta(p);
          interval p1t = P / pt;            // p^{1-theta}
          interval p12t = P / (pt * pt);    // p^{1-2theta}
          return (2.0 * p1t - p12t - 1.0) / ((P * P / (pt * pt)) * powi(pt - 1.0, 2));
        },
        1.9, 2.1);
    // sum -log(p)(2p^{1-theta} - p^{1-2theta} - 2)/((p^{1-2theta}(p^theta-1)^2 + 1)(p-1))
    add("ss2log_sum", K::sum,
        [](u64 p) {
          interval P = ip(p);
          interval pt = detail::p_theta(p);
          interval p1t = P / pt;
          interval p12t = P / (pt * pt);
          return -(log(P) * (2.0 * p1t - p12t - 2.0)) /
                 ((p12t * powi(pt - 1.0, 2) + 1.0) * (P - 1.0));
        },
        1.8, 5.0, 2, false);
    // prod (1 + (2p^theta-1)/((sqrt(p)-1)(p^theta-1)^2))
    add("ss2log_err_prod", K::product,
        [](u64 p) {
          interval P = ip(p);
          interval pt = detail::p_theta(p);
          return (2.0 * pt - 1.0) / ((sqrt(P) - 1.0) * powi(pt - 1.0, 2));
        },
        1.46, 2.1);
    // prod (1 + 1/(p-1)^2); full mu^2/phi^2 mass (diverging factor at p=2 is fine)
    add("phi_sq_full", K::product,
        [](u64 p) { interval P = ip(p); return interval(1.0) / powi(P - 1.0, 2); },
        2.0, 1.05);
    return c;
  }();
  return cat;
}

inline const ProductSpec& catalog_entry(const std::string& id) {
  for (const auto& e : product_catalog())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown catalog id: " + id);
}

namespace detail {

// Majorant spot-check on primes in (P0, P0 + 1e4].
inline void spot_check(const ProductSpec& e, u64 P0) {
  static std::map<std::pair<std::string, u64>, bool> done;
  auto key = std::make_pair(e.id, P0);
  if (done.count(key)) return;
  for_each_factored(P0 + 1, P0 + 10'001, [&](const factor_view& v) {
    if (!(v.k == 1 && v.squarefree && v.primes[0] == v.n)) return;
    u64 p = v.n;
    interval t = abs(e.local(p));
    interval bound = interval(e.majorant_c) * pow(ip(p), interval(-e.beta));
    if (!(t.hi <= bound.lo))
      throw std::runtime_error("catalog majorant spot-check failure for '" + e.id +
                               "' at p = " + std::to_string(p));
  });
  done[key] = true;
}

}  // namespace detail

inline TailBound eval_catalog(const std::string& id, u64 cutoff = default_product_cutoff) {
  static std::map<std::pair<std::string, u64>, TailBound> cache;
  auto key = std::make_pair(id, cutoff);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const auto& e = catalog_entry(id);
  detail::spot_check(e, cutoff);

  interval partial = e.kind == ProductSpec::Kind::product ? interval(1.0) : interval(0.0);
  for (u32 p : primes_up_to(static_cast<u32>(cutoff))) {
    if (p < e.min_p) continue;
    interval t = e.local(p);
    if (e.kind == ProductSpec::Kind::product) {
      if (!(t.lo > -1.0))
        throw std::domain_error("catalog product factor not > 0 for '" + id + "'");
      partial *= interval(1.0) + t;
    } else {
      partial += t;
    }
  }

  // tail over the primes beyond the cutoff: all of them sit in the two
  // residue classes 1, 5 mod 6, so per class sum_{n>P0} C n^-beta is bounded
  // by the shifted integral (1/6) C (P0-6)^(1-beta)/(beta-1)
  interval P0 = from_u64(cutoff) - interval(6.0);
  interval T = interval(e.majorant_c) * pow(P0, interval(1.0 - e.beta)) /
               (3.0 * (e.beta - 1.0));

  TailBound r;
  r.cutoff = cutoff;
  r.partial = partial;
  if (e.kind == ProductSpec::Kind::sum) {
    r.tail = e.nonnegative ? interval(0.0, T.hi) : interval(-T.hi, T.hi);
    r.total = partial + r.tail;
  } else {
    if (e.nonnegative) {
      r.tail = interval(0.0, T.hi);  // 0 <= log(1+t) <= t
    } else {
      // |log(1+t)| <= |t|/(1-m) with m an upper bound on |t| beyond the cutoff
      interval m = interval(e.majorant_c) * pow(from_u64(cutoff), interval(-e.beta));
      if (!(m.hi < 0.5))
        throw std::domain_error("catalog tail too coarse for '" + id + "'");
      interval Ts = T / (interval(1.0) - m);
      r.tail = interval(-Ts.hi, Ts.hi);
    }
    r.total = partial * exp(r.tail);
  }
  cache.emplace(key, r);
  return r;
}

// ---------------------------------------------------------------------------
// Finite products / sums over the primes dividing q (the q-local factors).
// ---------------------------------------------------------------------------

namespace detail {

inline interval local_product_factor(const std::string& id, u64 p) {
  interval P = ip(p);
  interval one(1.0);
  if (id == "p_alpha_half") {
    interval r = sqrt(P);  // p^{1-alpha} with alpha = 1/2
    return one + r / (P + 1.0 - r);
  }
  if (id == "p_alpha_theta") {
    interval r = P / p_theta(p);  // p^{1-theta}
    return one + r / (P + 1.0 - r);
  }
  if (id == "A_q") return selberg_weight_factor(p);
  if (id == "sq1half_k") {
    interval sp = sqrt(P);
    return one - (P + 1.0) / (P * P - P * sp + sp + 1.0);
  }
  if (id == "sq1half_l") {
    // delta = 1/3 exponent pattern
    interval p16 = pow(P, interval(1.0) / 6.0);
    interval p23 = pow(P, interval(2.0) / 3.0);
    interval p56 = pow(P, interval(5.0) / 6.0);
    interval p43 = pow(P, interval(4.0) / 3.0);
    return one + (p23 - 2.0 * p16 - 1.0) / (p43 - p56 + p16);
  }
  if (id == "sumvar1log_j") {
    interval A = selberg_weight_factor(p);
    return one - A / (P - 1.0 + A);
  }
  if (id == "sumvar1log_k") {
    interval A = selberg_weight_factor(p);
    interval p13 = pow(P, interval(1.0) / 3.0);
    interval p23 = p13 * p13;
    return one + (2.0 * (P - 1.0) - A * (P + p13)) /
                     ((P - 1.0) * p23 + A * (P + p13) - P + 1.0);
  }
  if (id == "sumvarp_u") return one - P / (P * P - P + 1.0);
  if (id == "sumvarp_v") {
    interval sp = sqrt(P);
    return one + (P * P - 4.0 * P + 2.0) / ((sp - 1.0) * powi(P - 1.0, 2) + 2.0 * P - 1.0);
  }
  if (id == "parity_m") {
    if (p == 2) return interval(0.5);
    return one - interval(1.0) / (P - 1.0);
  }
  if (id == "parity_n") {
    if (p == 2) return one;
    interval sp = sqrt(P);
    return one - (P - 4.0) / ((sp - 1.0) * (P - 2.0) + 2.0);
  }
  if (id == "sum12_f") {
    interval sp = sqrt(P);
    return one - interval(1.0) / (P - 2.0 * sp + 2.0);
  }
  if (id == "sum12_h") {
    interval sp = sqrt(P);
    interval p13 = pow(P, interval(1.0) / 3.0);
    interval p23 = p13 * p13;
    return one + (P - 4.0 * sp - p13 + 2.0) /
                     (powi(sp - 1.0, 2) * p23 + p13 + 2.0 * sp - 1.0);
  }
  if (id == "ss1log_f2") {
    interval pt = p_theta(p);
    return one - interval(1.0) / ((P * P / (pt * pt)) * powi(pt - 1.0, 2) + 1.0);
  }
  if (id == "ss1log_f3") {
    interval pt = p_theta(p);
    return one - interval(1.0) / ((P * sqrt(P) / (pt * pt)) * powi(pt - 1.0, 2) + 1.0);
  }
  if (id == "ss2log_x") {
    interval pt = p_theta(p);
    interval p1t = P / pt;
    interval p12t = P / (pt * pt);
    return one - (P - 1.0) / ((P * P / (pt * pt)) * powi(pt - 1.0, 2) + 2.0 * p1t - p12t - 1.0);
  }
  if (id == "ss2log_y") {
    interval pt = p_theta(p);
    return one + (pt * pt - 4.0 * pt + 2.0) / ((sqrt(P) - 1.0) * powi(pt - 1.0, 2) + 2.0 * pt - 1.0);
  }
  if (id == "phi_sq") return one + interval(1.0) / powi(P - 1.0, 2);
  throw std::invalid_argument("unknown local factor id: " + id);
}

inline interval local_sum_term(const std::string& id, u64 p) {
  interval P = ip(p);
  if (id == "log_over_p") return log(P) / P;
  if (id == "log_over_p_minus_1") return log(P) / (P - 1.0);
  if (id == "log_over_p_plus_1") return log(P) / (P + 1.0);
  if (id == "sq1half_f") return log(P) / (P - sqrt(P) + 1.0);
  if (id == "sumvar1log_g") {
    interval A = selberg_weight_factor(p);
    return log(P) * A / (A + P - 1.0);
  }
  if (id == "sum12_d") {
    interval sp = sqrt(P);
    return log(P) / (P - 2.0 * sp + 2.0);
  }
  if (id == "ss2log_s") {
    interval pt = p_theta(p);
    return log(P) / ((P / (pt * pt)) * powi(pt - 1.0, 2) + 1.0);
  }
  throw std::invalid_argument("unknown local sum id: " + id);
}

}  // namespace detail

inline interval local_factor_product(const std::string& id, u64 q) {
  interval r(1.0);
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    r *= detail::local_product_factor(id, p);
  }
  return r;
}

inline interval local_factor_sum(const std::string& id, u64 q) {
  interval r(0.0);
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    r += detail::local_sum_term(id, p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Remainder-normalization helpers shared by the assembled constants.
// ---------------------------------------------------------------------------

// Sup of u > 0 -> u^d exp(-u) style normalizations: for the cases used here
// (a = 1, 0 < d <= 1) this is max(gamma, 1/(d e^{gamma d + 1})).
inline interval delta_input(double a, double d) {
  if (!(a == 1.0 && d > 0.0 && d <= 1.0))
    throw std::domain_error("delta_input: only a = 1, 0 < d <= 1 supported");
  interval g = gamma_const();
  interval other = exp(-(g * d + 1.0)) / d;
  return {std::fmax(g.lo, other.lo), std::fmax(g.hi, other.hi)};
}

// Leading coefficient of the sqrt-range remainder in the squarefree-average
// estimates with f(p) ~ p^-a; v is the parity class (1: all, 2: odd part).
inline interval remainder_coefficient(double a, int v) {
  if (!(a > 1.01)) throw std::domain_error("remainder_coefficient: need a > 1.01");
  if (v != 1 && v != 2) throw std::domain_error("remainder_coefficient: v must be 1 or 2");
  interval A(a);
  interval za = zeta_point(A);
  interval z2a = zeta_point(interval(2.0) * A);
  interval pi2 = powi(pi_const(), 2);
  interval am1 = A - 1.0;
  interval am12 = A - 0.5;
  interval e1, e2, e3;
  if (v == 1) {
    e1 = interval(0.43) * (interval(1.0) + abs(am1) / am12);
    e2 = abs(za / z2a - interval(6.0) / (powi(am1, 2) * pi2));
    e3 = (abs(am1) / am12) *
         pow(interval(3.0) * z2a / (am12 * pi2 * abs(za * am1)), interval(2.0) / am1);
  } else {
    interval c = (sqrt(interval(2.0)) - 1.0) / sqrt(interval(2.0));
    interval p2a = pow(interval(2.0), A);
    e1 = interval(0.12) * (interval(1.0) + abs(am1) / am12);
    e2 = c * abs(p2a / (p2a + 1.0) * za / z2a -
                 (interval(2.0) / 3.0) * interval(6.0) / (powi(am1, 2) * pi2));
    e3 = c * (abs(am1) / am12) *
         pow(interval(3.0) * (p2a + 1.0) * z2a /
                 (am12 * (p2a / 2.0) * 3.0 * pi2 * abs(za * am1)),
             interval(2.0) / am1);
  }
  auto mx = [](const interval& x, const interval& y) {
    return interval(std::fmax(x.lo, y.lo), std::fmax(x.hi, y.hi));
  };
  return mx(mx(e1, e2), e3);
}

}  // namespace logsieve
