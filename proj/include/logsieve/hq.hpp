#pragma once
// The variance-type kernel
//
//   h_q(s) = sum_{(d,q)=1} mu(d)/kappa(d)^2 (mtilde_{dq}(s/d) - (pi^2/6) kappa(dq)/(dq))^2
//
// and its logarithmic integral int_1^X h_q(s)/s ds, computed exactly by an
// event sweep: between events m_tilde_{dq}(s/d) = A_d log s + B_d, so h_q is
// a quadratic in log s driven by three global moments plus the analytic
// correction from the not-yet-active d > s, and each piece integrates in
// closed form.  Events happen exactly at the squarefree s coprime to q, one
// per divisor split s = d * n; applying one event costs O(1) updates of the
// moments.
//
// State lives in one 32-byte record per squarefree d <= X coprime to q
// (~1.9 GB at X = 1e8), addressed through a rank directory over a squarefree
// bitmap.  The sweep is sequential in s; results are reproducible bit for bit.

#include <logsieve/euler.hpp>
#include <logsieve/interval.hpp>
#include <logsieve/primes.hpp>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace logsieve {

namespace hq_detail {

// bit d set iff d squarefree and coprime to q, with a rank directory
struct slot_map {
  u64 x_int = 0;
  u64 q = 1;
  std::vector<u64> bits;
  std::vector<u32> rank_base;
  u64 slots = 0;

  void build(u64 x, u64 qq) {
    x_int = x;
    q = qq;
    u64 words = x / 64 + 2;
    bits.assign(words, ~u64(0));
    bits[0] &= ~u64(1);  // d = 0 unused
    // clear beyond x
    for (u64 d = x + 1; d < words * 64; ++d) bits[d >> 6] &= ~(u64(1) << (d & 63));
    for (u32 p : primes_up_to(static_cast<u32>(isqrt(x)))) {
      u64 pp = u64(p) * p;
      for (u64 m = pp; m <= x; m += pp) bits[m >> 6] &= ~(u64(1) << (m & 63));
    }
    for (const auto& [p, e] : factorize(qq)) {
      (void)e;
      for (u64 m = p; m <= x; m += p) bits[m >> 6] &= ~(u64(1) << (m & 63));
    }
    rank_base.resize(words);
    u64 acc = 0;
    for (u64 w = 0; w < words; ++w) {
      rank_base[w] = static_cast<u32>(acc);
      acc += static_cast<u64>(__builtin_popcountll(bits[w]));
    }
    slots = acc;
  }
  bool test(u64 d) const { return bits[d >> 6] >> (d & 63) & 1; }
  u64 slot(u64 d) const {
    u64 w = d >> 6;
    return rank_base[w] + __builtin_popcountll(bits[w] & ((u64(1) << (d & 63)) - 1));
  }
};

struct dstate {
  double a_lo = 0, a_hi = 0;  // A_d
  double b_lo = 0, b_hi = 0;  // B'_d = B_d - main term
};

}  // namespace hq_detail

// Sweep checkpoint layout (little-endian, IEEE-754 doubles):
//   magic "LSVH" | u32 version=1 | u64 q | u64 s_done
//   | integral.lo/hi | r_partial.lo/hi | s0 | s1 | s2   (interval = 2 doubles)
//   | u64 count | count x { u64 d, double a_lo, a_hi, b_lo, b_hi }
// All events at s <= s_done are applied and the integral covers [1, s_done],
// so a resumed run continues exactly where the state left off.

struct sweep_options {
  std::vector<double> probes;        // ascending; h(s) sampled between events
  std::string checkpoint_save;       // write final state here when non-empty
  std::string checkpoint_load;       // resume from this state
  u64 checkpoint_every_events = 0;   // also save at s boundaries every N events
};

struct sweep_result {
  interval integral;
  u64 events = 0;
  u64 x_int = 0;
  unsigned q = 1;
  double seconds = 0;
  std::vector<std::pair<double, interval>> h_probes;
};

inline constexpr double hq_sweep_cap = 1.2e8;  // event/memory-budget guard

namespace hq_detail {

struct sweep_state {
  unsigned q = 1;
  u64 s_done = 0;  // all events at s <= s_done applied; integral covers [1, s_done]
  interval integral{0.0};
  interval r_partial{0.0};  // sum over active d of mu(d)/d^2
  interval s0{0.0}, s1{0.0}, s2{0.0};
  slot_map map;
  std::vector<dstate> st;
};

inline void save_state(const sweep_state& w, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const char magic[4] = {'L', 'S', 'V', 'H'};
  u32 ver = 1;
  u64 q64 = w.q;
  f.write(magic, 4);
  f.write(reinterpret_cast<const char*>(&ver), 4);
  f.write(reinterpret_cast<const char*>(&q64), 8);
  f.write(reinterpret_cast<const char*>(&w.s_done), 8);
  auto wiv = [&f](const interval& x) {
    f.write(reinterpret_cast<const char*>(&x.lo), 8);
    f.write(reinterpret_cast<const char*>(&x.hi), 8);
  };
  wiv(w.integral);
  wiv(w.r_partial);
  wiv(w.s0);
  wiv(w.s1);
  wiv(w.s2);
  u64 count = 0;
  for (u64 d = 1; d <= w.s_done; ++d)
    if (w.map.test(d)) ++count;
  f.write(reinterpret_cast<const char*>(&count), 8);
  for (u64 d = 1; d <= w.s_done; ++d) {
    if (!w.map.test(d)) continue;
    const auto& r = w.st[w.map.slot(d)];
    f.write(reinterpret_cast<const char*>(&d), 8);
    f.write(reinterpret_cast<const char*>(&r), sizeof(dstate));
  }
}

inline void load_state(sweep_state& w, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  char magic[4];
  u32 ver = 0;
  u64 q64 = 0;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&ver), 4);
  if (std::memcmp(magic, "LSVH", 4) != 0 || ver != 1)
    throw std::runtime_error("bad sweep checkpoint header in " + path);
  f.read(reinterpret_cast<char*>(&q64), 8);
  f.read(reinterpret_cast<char*>(&w.s_done), 8);
  if (q64 != w.q) throw std::runtime_error("sweep checkpoint has a different modulus");
  auto riv = [&f](interval& x) {
    f.read(reinterpret_cast<char*>(&x.lo), 8);
    f.read(reinterpret_cast<char*>(&x.hi), 8);
  };
  riv(w.integral);
  riv(w.r_partial);
  riv(w.s0);
  riv(w.s1);
  riv(w.s2);
  u64 count = 0;
  f.read(reinterpret_cast<char*>(&count), 8);
  for (u64 i = 0; i < count; ++i) {
    u64 d = 0;
    dstate r;
    f.read(reinterpret_cast<char*>(&d), 8);
    f.read(reinterpret_cast<char*>(&r), sizeof(dstate));
    if (d > w.map.x_int || !w.map.test(d))
      throw std::runtime_error("sweep checkpoint is inconsistent with the slot map");
    w.st[w.map.slot(d)] = r;
  }
  if (!f) throw std::runtime_error("truncated sweep checkpoint " + path);
}

}  // namespace hq_detail

inline sweep_result hq_integral(double X, unsigned q, const sweep_options& opt = {}) {
  if (!(X >= 1)) throw std::domain_error("hq_integral: need X >= 1");
  if (X > hq_sweep_cap) throw resource_error("hq_integral: X exceeds the event budget");
  auto t0 = std::chrono::steady_clock::now();

  const u64 x_int = static_cast<u64>(std::floor(X));
  mult_value_t mq = mult_value(q);

  // main-term coefficient (pi^2/6) kappa(q)/q and the tail-side constants
  interval c_main = pi_sq_over_6() * ratio(static_cast<i64>(mq.kappa), q);
  interval c_tail = c_main * c_main;  // (pi^2/6 kappa(q)/q)^2 multiplies sum mu(d)/d^2
  // R_inf = sum_{(d,q)=1} mu(d)/d^2 = (6/pi^2) prod_{p|q} p^2/(p^2-1)
  interval r_inf = interval(6.0) / powi(pi_const(), 2);
  for (const auto& [p, e] : mq.factors) {
    (void)e;
    interval p2 = from_u64(p) * from_u64(p);
    r_inf *= p2 / (p2 - interval(1.0));
  }

  hq_detail::sweep_state w;
  w.q = q;
  w.map.build(x_int, q);
  w.st.assign(w.map.slots, {});

  u64 s_begin = 1;
  if (!opt.checkpoint_load.empty()) {
    hq_detail::load_state(w, opt.checkpoint_load);
    if (w.s_done > x_int)
      throw std::domain_error("hq_integral: checkpoint is already past X");
    s_begin = w.s_done + 1;
  }

  sweep_result res;
  res.q = q;
  res.x_int = x_int;

  interval L_prev = w.s_done <= 1 ? interval(0.0) : log(interval(double(w.s_done)));
  u64 s_prev = std::max<u64>(w.s_done, 1);
  std::size_t probe_i = 0;
  while (probe_i < opt.probes.size() && opt.probes[probe_i] < double(s_prev))
    ++probe_i;
  u64 next_ckpt = opt.checkpoint_every_events ? opt.checkpoint_every_events : ~u64(0);

  auto h_at = [&](const interval& L) {
    return w.s2 * (L * L) + 2.0 * (w.s1 * L) + w.s0 + c_tail * (r_inf - w.r_partial);
  };

  // integrate the current quadratic from s_prev up to L2 (enclosure of log s2)
  auto flush_to = [&](const interval& L2, const interval& dL) {
    interval tc = c_tail * (r_inf - w.r_partial);
    interval quad = (L2 * L2 + L2 * L_prev + L_prev * L_prev) / 3.0;
    w.integral += dL * (w.s2 * quad + w.s1 * (L2 + L_prev) + w.s0 + tc);
    L_prev = L2;
  };

  auto emit_probes_below = [&](double limit) {
    while (probe_i < opt.probes.size() && opt.probes[probe_i] < limit) {
      double p = opt.probes[probe_i++];
      interval Lp = p == 1.0 ? interval(0.0) : log(interval(p));
      res.h_probes.emplace_back(p, h_at(Lp));
    }
  };

  if (s_begin <= x_int) {
    for_each_factored(s_begin, x_int + 1, [&](const factor_view& v) {
      if (v.mu == 0) return;
      for (const auto& [p, e] : mq.factors) {
        (void)e;
        for (int i = 0; i < v.k; ++i)
          if (v.primes[i] == p) return;
      }
      const u64 s = v.n;
      if (s > s_prev) {
        emit_probes_below(double(s));
        interval dL = log1p(ratio(static_cast<i64>(s - s_prev), s_prev));
        interval L2 = log(interval(double(s)));
        flush_to(L2, dL);
      }
      const interval L = s == 1 ? interval(0.0) : L_prev;

      // kappa(s) = prod (p+1), exact
      u64 kappa_s = 1;
      for (int i = 0; i < v.k; ++i) kappa_s *= v.primes[i] + 1;

      // tail hand-off for the newly active d = s
      w.r_partial += interval(double(v.mu)) / (from_u64(s) * from_u64(s));

      // one event per divisor split s = d * n
      auto apply = [&](u64 d, u64 kd, int mu_d) {
        res.events++;
        u64 n = s / d;
        u64 kn = kappa_s / kd;
        int mu_n = v.mu * mu_d;
        interval w_d = interval(double(mu_d)) / (from_u64(kd) * from_u64(kd));
        auto& r = w.st[w.map.slot(d)];
        interval A(r.a_lo, r.a_hi), B(r.b_lo, r.b_hi);
        interval dA, dB;
        if (n == 1) {
          // activation: B' starts at -M_d, and the n = 1 term lands with it
          interval M = c_main * ratio(static_cast<i64>(kd), d);
          dA = interval(1.0);
          dB = -(M + L);
          // S0 gains w (M + L)^2 in one step: B' goes from "absorbed in the
          // tail" straight to -(M + L); the M^2 part left the tail just above
          w.s2 += w_d;
          w.s1 += w_d * dB;
          w.s0 += w_d * (dB * dB);
          r.a_lo = dA.lo;
          r.a_hi = dA.hi;
          r.b_lo = dB.lo;
          r.b_hi = dB.hi;
          return;
        }
        dA = ratio(mu_n, kn);
        dB = -(dA * L);
        w.s2 += w_d * (dA * (A + A + dA));
        w.s1 += w_d * (A * dB + dA * (B + dB));
        w.s0 += w_d * (dB * (B + B + dB));
        interval An = A + dA, Bn = B + dB;
        r.a_lo = An.lo;
        r.a_hi = An.hi;
        r.b_lo = Bn.lo;
        r.b_hi = Bn.hi;
      };
      // enumerate subsets of the prime factors as the d side
      auto rec = [&](auto&& self, int i, u64 d, u64 kd, int mu_d) -> void {
        if (i == v.k) {
          apply(d, kd, mu_d);
          return;
        }
        self(self, i + 1, d, kd, mu_d);
        self(self, i + 1, d * v.primes[i], kd * (v.primes[i] + 1), -mu_d);
      };
      rec(rec, 0, 1, 1, 1);
      s_prev = s;
      w.s_done = s;
      if (res.events >= next_ckpt && !opt.checkpoint_save.empty()) {
        hq_detail::save_state(w, opt.checkpoint_save);
        next_ckpt += opt.checkpoint_every_events;
      }
    });
  }

  // final partial piece up to the real X
  emit_probes_below(X);
  if (X > double(s_prev)) {
    interval Xi(X);
    interval dL = log(Xi / from_u64(s_prev));
    flush_to(log(Xi), dL);
  }
  emit_probes_below(std::nextafter(X, 2 * X + 1));  // probes exactly at X
  w.s_done = x_int;
  if (!opt.checkpoint_save.empty()) hq_detail::save_state(w, opt.checkpoint_save);

  res.integral = w.integral;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------
// Direct pointwise evaluation (the independent route the sweep is checked
// against) and the analytic tail bounds.
// ---------------------------------------------------------------------------

inline interval hq_eval(double s, unsigned q) {
  if (!(s >= 1)) throw std::domain_error("hq_eval: need s >= 1");
  if (s > 1e6 + 1) throw resource_error("hq_eval: direct path is capped at s = 1e6");
  const u64 si = static_cast<u64>(std::floor(s));
  mult_value_t mq = mult_value(q);
  interval c_main = pi_sq_over_6() * ratio(static_cast<i64>(mq.kappa), q);
  interval r_inf = interval(6.0) / powi(pi_const(), 2);
  for (const auto& [p, e] : mq.factors) {
    (void)e;
    interval p2 = from_u64(p) * from_u64(p);
    r_inf *= p2 / (p2 - interval(1.0));
  }

  // per-n data over [1, s]
  std::vector<std::int8_t> mu(si + 1, 0);
  std::vector<u64> kap(si + 1, 0);
  std::vector<interval> logn(si + 1, interval(0.0));
  for_each_factored(1, si + 1, [&](const factor_view& v) {
    mu[v.n] = static_cast<std::int8_t>(v.mu);
    if (v.mu != 0) {
      u64 k = 1;
      for (int i = 0; i < v.k; ++i) k *= v.primes[i] + 1;
      kap[v.n] = k;
    }
    logn[v.n] = v.n == 1 ? interval(0.0) : log(interval(double(v.n)));
  });
  interval Ls = log(interval(s));

  interval total(0.0);
  interval r_partial(0.0);
  for (u64 d = 1; d <= si; ++d) {
    if (mu[d] == 0 || !coprime(d, q)) continue;
    r_partial += interval(double(mu[d])) / (from_u64(d) * from_u64(d));
    interval acc_a(0.0), acc_b(0.0);
    for (u64 n = 1; double(n * d) <= s; ++n) {
      if (mu[n] == 0 || !coprime(n, d) || !coprime(n, q)) continue;
      interval t = ratio(mu[n], kap[n]);
      acc_a += t;
      acc_b += t * logn[n * d];
    }
    interval mt = acc_a * Ls - acc_b;
    interval M = c_main * ratio(static_cast<i64>(kap[d]), d);
    interval w_d = interval(double(mu[d])) / (from_u64(kap[d]) * from_u64(kap[d]));
    total += w_d * powi(mt - M, 2);
  }
  total += (c_main * c_main) * (r_inf - r_partial);
  return total;
}

// Stored kernel bounds: |h_v(s)| <= (T2 log s + T3)/s up to 1e12, T4/log^2 s
// beyond.  Valid only for v in {1, 2}.
inline interval hq_kernel_bound(double s, unsigned v) {
  if (v != 1 && v != 2) throw std::domain_error("hq_kernel_bound: v must be 1 or 2");
  if (!(s >= 1)) throw std::domain_error("hq_kernel_bound: need s >= 1");
  using namespace inputs;
  if (s <= 1e12)
    return (interval(T2[v]) * log(interval(s)) + interval(T3[v])) / interval(s);
  return interval(T4[v]) / powi(log(interval(s)), 2);
}

// Upper bound on |int_X^inf h_v(s)/s ds| for X >= 20.
inline interval hq_tail_bound(double X, unsigned v) {
  if (v != 1 && v != 2) throw std::domain_error("hq_tail_bound: v must be 1 or 2");
  if (!(X >= 20)) throw std::domain_error("hq_tail_bound: need X >= 20");
  using namespace inputs;
  interval W(1e12);
  interval logW = log(W);
  if (X >= 1e12) return interval(T4[v]) / log(interval(X));
  interval Xi(X);
  interval logX = log(Xi);
  interval psi = interval(T2[v]) + interval(T3[v]) / logX;
  interval omega = logX / Xi - logW / W + interval(1.0) / Xi - interval(1.0) / W;
  interval b = psi * omega + 2.0 * (interval(T4[v]) / logW);
  return interval(0.0, b.hi);
}

// s_v = (v/phi(v)) (gamma + sum_{p|v} log p/(p-1)) - (6/pi^2)(v/kappa(v)) int_1^inf h_v/s
inline interval sv_from_integral(const interval& integral_to_inf, unsigned v) {
  mult_value_t mv = mult_value(v);
  interval lead = ratio(static_cast<i64>(v), mv.phi) *
                  (gamma_const() + local_factor_sum("log_over_p_minus_1", v));
  interval coef =
      (interval(6.0) / powi(pi_const(), 2)) * ratio(static_cast<i64>(v), mv.kappa);
  return lead - coef * integral_to_inf;
}

inline interval sv_constant(double x_cap, unsigned v, const sweep_options& opt = {}) {
  if (v != 1 && v != 2) throw std::domain_error("sv_constant: v must be 1 or 2");
  if (!(x_cap >= 1e6 && x_cap <= hq_sweep_cap))
    throw std::domain_error("sv_constant: cap must lie in [1e6, 1.2e8]");
  interval I = hq_integral(x_cap, v, opt).integral;
  interval tail = hq_tail_bound(x_cap, v);
  return sv_from_integral(I + interval(-tail.hi, tail.hi), v);
}

}  // namespace logsieve
