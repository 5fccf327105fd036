#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <logsieve/hq.hpp>
#include <logsieve/mobius.hpp>

#include <cmath>
#include <cstdio>

using namespace logsieve;

TEST_CASE("kernel at s = 1 telescopes to the closed forms") {
  long double pi2_6 = 9.869604401089358618834490999876L / 6.0L;
  auto h1 = hq_eval(1.0, 1);
  CHECK(h1.lo <= pi2_6);
  CHECK(h1.hi >= pi2_6);
  CHECK(width(h1) < 1e-12);

  // q = 2: (pi^2/6)^2 (3/2)^2 sum_{d odd} mu(d)/d^2 = pi^2/2
  auto h2 = hq_eval(1.0, 2);
  CHECK(h2.lo <= 3 * pi2_6);
  CHECK(h2.hi >= 3 * pi2_6);
}

TEST_CASE("empty integration range") {
  auto r = hq_integral(1.0, 1);
  CHECK(r.integral.contains(0.0));
  CHECK(width(r.integral) < 1e-200);
  CHECK(r.events == 1);  // single split (d, n) = (1, 1)
}

TEST_CASE("closed form on [1, 2]") {
  // one active d on the piece: h = L^2 - (pi^2/3) L + pi^2/6
  long double l2 = 0.69314718055994530942L;
  long double pi2_6 = 9.86960440108935861883L / 6.0L;
  long double ref = l2 * l2 * l2 / 3.0L - pi2_6 * l2 * l2 + pi2_6 * l2;
  auto r = hq_integral(2.0, 1);
  CHECK(r.integral.lo <= ref);
  CHECK(r.integral.hi >= ref);
  CHECK(width(r.integral) < 1e-13);
}

TEST_CASE("sweep state agrees with the direct evaluation at probes") {
  sweep_options opt;
  opt.probes = {10.0, 50.5, 100.0, 500.25, 1000.0, 4999.5};
  for (unsigned q : {1u, 2u}) {
    auto r = hq_integral(5000.0, q, opt);
    REQUIRE(r.h_probes.size() == opt.probes.size());
    for (const auto& [s, h_sweep] : r.h_probes) {
      auto h_direct = hq_eval(s, q);
      CHECK_MESSAGE(h_sweep.intersects(h_direct), "q=", q, " s=", s,
                    " sweep=[", h_sweep.lo, ",", h_sweep.hi, "] direct=[", h_direct.lo,
                    ",", h_direct.hi, "]");
    }
  }
}

// Independent route for the integral through the square-expansion identity:
//
//   sum_d w_d mtilde_{dq}(s/d)^2 = h_q(s) + (pi^2 kappa(q)/(3q)) mcheck_q(s)
//                                   - pi^2 kappa(q)/(6 phi(q))
//
// so int_1^X h/s ds equals the per-d piecewise quadratic integrals minus
// (pi^2 kappa/(3q)) mcheckcheck_q(X)/2 plus (pi^2 kappa/(6 phi)) log X.
// Shares nothing with the moment sweep except interval primitives.
static interval hq_integral_by_expansion(double X, unsigned q) {
  const u64 Xi = static_cast<u64>(std::floor(X));
  mult_value_t mq = mult_value(q);
  std::vector<std::int8_t> mu(Xi + 1, 0);
  std::vector<u64> kap(Xi + 1, 1);
  for_each_factored(1, Xi + 1, [&](const factor_view& v) {
    mu[v.n] = static_cast<std::int8_t>(v.mu);
    if (v.mu != 0) {
      u64 k = 1;
      for (int i = 0; i < v.k; ++i) k *= v.primes[i] + 1;
      kap[v.n] = k;
    }
  });
  interval LX = log(interval(X));
  interval total(0.0);
  for (u64 d = 1; d <= Xi; ++d) {
    if (mu[d] == 0 || !coprime(d, q)) continue;
    interval w = interval(double(mu[d])) / (from_u64(kap[d]) * from_u64(kap[d]));
    interval A(0.0), B(0.0), piece(0.0);
    interval L_prev = log(interval(double(d)));
    auto antideriv = [&](const interval& L) {
      return (A * A) * (L * L * L) / 3.0 + (A * B) * (L * L) + (B * B) * L;
    };
    for (u64 n = 1; n * d <= Xi; ++n) {
      if (mu[n] == 0 || !coprime(n, d) || !coprime(n, q)) continue;
      interval L = log(interval(double(n * d)));
      if (n > 1) piece += antideriv(L) - antideriv(L_prev);
      if (n > 1) L_prev = L;
      interval t = ratio(mu[n], kap[n]);
      A += t;
      B -= t * L;
    }
    piece += antideriv(LX) - antideriv(L_prev);
    total += w * piece;
  }
  interval pk = pi_sq_over_6() * ratio(static_cast<i64>(mq.kappa), q);
  total -= (2.0 * pk) * (m_family(MKind::m_checkcheck, X, q) * 0.5);
  total += pk * ratio(static_cast<i64>(q), mq.phi) * LX;
  return total;
}

TEST_CASE("sweep agrees with the square-expansion route") {
  for (unsigned q : {1u, 2u}) {
    for (double X : {50.0, 400.0, 2000.5}) {
      auto a = hq_integral(X, q).integral;
      auto b = hq_integral_by_expansion(X, q);
      CHECK_MESSAGE(a.intersects(b), "q=", q, " X=", X, " sweep=[", a.lo, ",", a.hi,
                    "] expansion=[", b.lo, ",", b.hi, "]");
    }
  }
}

TEST_CASE("the engine stays consistent for a general modulus") {
  sweep_options opt;
  opt.probes = {8.5, 55.0, 400.0};
  auto r = hq_integral(500.0, 3, opt);
  for (const auto& [s, h_sweep] : r.h_probes) {
    auto h_direct = hq_eval(s, 3);
    CHECK_MESSAGE(h_sweep.intersects(h_direct), "q=3 s=", s);
  }
}

TEST_CASE("integral additivity through a checkpoint") {
  std::string path = "hq_ckpt_test.bin";
  sweep_options save;
  save.checkpoint_save = path;
  auto first = hq_integral(1000.0, 1, save);
  sweep_options load;
  load.checkpoint_load = path;
  auto resumed = hq_integral(10000.0, 1, load);
  auto direct = hq_integral(10000.0, 1);
  CHECK(resumed.integral.intersects(direct.integral));
  CHECK(width(resumed.integral) < 1e-10);
  CHECK(first.events + resumed.events == direct.events);
  std::remove(path.c_str());
}

TEST_CASE("kernel bound conformance on sampled s") {
  for (unsigned v : {1u, 2u}) {
    for (double s : {1.0, 20.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0}) {
      auto h = abs(hq_eval(s, v));
      auto bound = hq_kernel_bound(s, v);
      CHECK_MESSAGE(h.hi <= bound.hi, "v=", v, " s=", s, " |h|=", h.hi, " bound=", bound.hi);
    }
  }
}

TEST_CASE("tail bound branches and monotonicity") {
  auto t20 = hq_tail_bound(20.0, 2);
  auto t100 = hq_tail_bound(100.0, 2);
  CHECK(std::isfinite(t20.hi));
  CHECK(t20.hi >= t100.hi);

  // beyond 1e12 the log branch applies
  auto big = hq_tail_bound(1e12, 1);
  double ref = inputs::T4[1] / std::log(1e12);
  CHECK(big.hi >= ref * (1 - 1e-12));
  CHECK(big.hi <= ref * (1 + 1e-9));

  // explicit recomputation at X = 1e8
  auto t8 = hq_tail_bound(1e8, 1);
  long double lX = std::log(1e8L), lW = std::log(1e12L);
  long double psi = inputs::T2[1] + inputs::T3[1] / lX;
  long double omega = lX / 1e8L - lW / 1e12L + 1e-8L - 1e-12L;
  long double ref8 = psi * omega + 2.0L * inputs::T4[1] / lW;
  CHECK(t8.hi >= ref8 * (1 - 1e-10));
  CHECK(t8.hi <= ref8 * (1 + 1e-7));

  CHECK_THROWS_AS(hq_tail_bound(10.0, 1), std::domain_error);
  CHECK_THROWS_AS(hq_tail_bound(100.0, 3), std::domain_error);
}

TEST_CASE("s_v at the smallest admissible cap still brackets the known digits") {
  auto s1 = sv_constant(1e6, 1);
  CHECK(s1.contains(0.60731));
  CHECK(width(s1) < 2e-4);
  auto s2 = sv_constant(1e6, 2);
  CHECK(s2.intersects(interval(1.4728, 1.4729)));
  CHECK(width(s2) < 2e-4);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(hq_integral(0.5, 1), std::domain_error);
  CHECK_THROWS_AS(hq_integral(2e8, 1), resource_error);
  CHECK_THROWS_AS(sv_constant(1e5, 1), std::domain_error);
  CHECK_THROWS_AS(hq_eval(2e6, 1), resource_error);
}
