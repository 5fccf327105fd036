#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <logsieve/mobius.hpp>

#include <cmath>

using namespace logsieve;

TEST_CASE("m-family small closed forms") {
  auto z = m_family(MKind::m_check, 1.0, 1);
  CHECK(z.contains(0.0));
  CHECK(width(z) < 1e-14);

  CHECK(m_family(MKind::m, 3.0, 1).contains(1.0 / 6.0));

  long double ref = std::pow(std::log(3.0L), 2) - 0.5L * std::pow(std::log(1.5L), 2);
  auto cc = m_family(MKind::m_checkcheck, 3.0, 1);
  CHECK(cc.lo <= ref);
  CHECK(cc.hi >= ref);

  long double t4 = std::log(4.0L) - std::log(2.0L) / 3.0L - std::log(4.0L / 3.0L) / 4.0L;
  auto mt = m_family(MKind::m_tilde, 4.0, 1);
  CHECK(mt.lo <= t4);
  CHECK(mt.hi >= t4);

  // coprimality: m_2(3) drops even n
  CHECK(m_family(MKind::m, 3.0, 2).contains(1.0 - 1.0 / 3.0));
}

TEST_CASE("integer boundary on X hulls both memberships") {
  interval X(std::nextafter(2.0, 0.0), std::nextafter(2.0, 3.0));
  auto r = m_family(MKind::m, X, 1);
  CHECK(r.contains(1.0));        // n <= X excludes 2
  CHECK(r.contains(1.0 - 0.5));  // n <= X includes 2
}

TEST_CASE("resource guard") {
  CHECK_THROWS_AS(m_family(MKind::m, 1e9, 1, 100'000'000), resource_error);
}

TEST_CASE("summation-by-parts identity for the check and tilde pairs") {
  for (u64 q : {1, 2, 3}) {
    for (double X : {10.0, 100.0, 1000.0}) {
      auto lhs_c = m_log_integral(MKind::m_check, X, q);
      auto rhs_c = m_family(MKind::m_checkcheck, X, q) * 0.5;
      CHECK_MESSAGE(lhs_c.intersects(rhs_c), "check pair q=", q, " X=", X);
      auto lhs_t = m_log_integral(MKind::m_tilde, X, q);
      auto rhs_t = m_family(MKind::m_tildetilde, X, q) * 0.5;
      CHECK_MESSAGE(lhs_t.intersects(rhs_t), "tilde pair q=", q, " X=", X);
    }
  }
}

// Coprimality unfolding: m*_q(X) = sum over d | q^inf, d <= X of (1/d) m*(X/d),
// exact at finite truncation for the log-plus weights.
TEST_CASE("coprimality unfolding identity") {
  auto divisors_qinf = [](u64 q, u64 cap) {
    std::vector<u64> ds{1};
    for (const auto& [p, e] : factorize(q)) {
      (void)e;
      std::size_t n = ds.size();
      for (std::size_t i = 0; i < n; ++i) {
        u64 d = ds[i];
        while (d <= cap / p) {
          d *= p;
          ds.push_back(d);
        }
      }
    }
    return ds;
  };
  for (u64 q : {2, 6}) {
    for (double X : {100.0, 5000.0, 10000.0}) {
      for (MKind kind : {MKind::m_check, MKind::m_checkcheck}) {
        auto lhs = m_family(kind, X, q);
        interval rhs(0.0);
        for (u64 d : divisors_qinf(q, static_cast<u64>(X)))
          rhs += m_family(kind, interval(X) / interval(double(d)), 1) / interval(double(d));
        CHECK_MESSAGE(lhs.intersects(rhs), "q=", q, " X=", X);
      }
    }
  }
}

TEST_CASE("normalized Moebius log average stays near 1") {
  for (double X : {10.0, 100.0, 1234.0, 100000.0, 1000000.0}) {
    auto dev = abs(m_family(MKind::m_check, X, 1) - interval(1.0));
    CHECK_MESSAGE(dev.hi <= 1.0 / std::sqrt(X) + 1e-9, "X=", X);
  }
}

TEST_CASE("tildetilde main term envelope") {
  auto a1 = eval_catalog("mertens_log_sum", 100'000).total + gamma_const();
  auto phalf = eval_catalog("P_half_full", 100'000).total;
  auto coeff = interval(4.0) * exp(gamma_const() / 2.0 - 1.0) * phalf;
  auto two_zeta2 = 2.0 * zeta_point(interval(2.0));
  for (double X : {1000.0, 10000.0, 100000.0}) {
    auto main = two_zeta2 * (log(interval(X)) - a1);
    auto dev = abs(m_family(MKind::m_tildetilde, X, 1) - main);
    auto envelope = coeff / sqrt(interval(X));
    CHECK_MESSAGE(dev.hi <= envelope.hi, "X=", X);
  }
}

// Plain long-double recomputation, independent of the interval machinery.
TEST_CASE("m-family encloses a long-double reference at medium X") {
  auto mu_ref = [](u64 n) {
    int k = 0;
    for (u64 p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        ++k;
      }
    if (n > 1) ++k;
    return (k & 1) ? -1 : 1;
  };
  auto kappa_ref = [](u64 n) {
    long double k = 1;
    for (u64 p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        k *= p + 1;
        while (n % p == 0) n /= p;
      }
    if (n > 1) k *= n + 1;
    return k;
  };
  for (u64 q : {1, 2}) {
    for (double X : {500.0, 4000.0}) {
      long double mc = 0, mtt = 0;
      for (u64 n = 1; n <= u64(X); ++n) {
        int m = mu_ref(n);
        if (m == 0 || std::gcd(n, q) != 1) continue;
        long double L = std::log((long double)X / n);
        mc += (long double)m / n * L;
        mtt += (long double)m / kappa_ref(n) * L * L;
      }
      auto got_c = m_family(MKind::m_check, X, q);
      CHECK_MESSAGE(got_c.lo <= mc, "q=", q, " X=", X);
      CHECK_MESSAGE(got_c.hi >= mc, "q=", q, " X=", X);
      auto got_tt = m_family(MKind::m_tildetilde, X, q);
      CHECK(got_tt.lo <= mtt);
      CHECK(got_tt.hi >= mtt);
    }
  }
}

TEST_CASE("weighted sums enclose a long-double reference") {
  long double ref = 0;
  for (u64 l = 1; l <= 3000; ++l) {
    bool sf = true;
    u64 m = l;
    long double w = 1;
    for (u64 p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) {
          sf = false;
          break;
        }
        long double sp = std::sqrt((long double)p);
        w /= (sp - 1) * (sp - 1);
      }
    if (!sf) continue;
    if (m > 1) {
      long double sp = std::sqrt((long double)m);
      w /= (sp - 1) * (sp - 1);
    }
    ref += w;
  }
  auto got = weighted_sum("inv_phihalf_sq", interval(3000.0), 1);
  CHECK(got.lo <= ref);
  CHECK(got.hi >= ref);
  CHECK(width(got) < 1e-10);
}

TEST_CASE("weighted sums") {
  // squarefree l <= 10: 1,2,3,5,6,7,10 -> 513/210
  auto s = weighted_sum("inv_l", interval(10.0), 1);
  CHECK(s.contains(513.0 / 210.0));
  CHECK(width(s) < 1e-13);

  auto nu1 = weighted_sum("nu_over_l", interval(1.0), 1);
  CHECK(nu1.contains(1.0));
  CHECK(width(nu1) < 1e-15);

  auto p5 = weighted_sum("inv_phi", interval(5.0), 2);
  CHECK(p5.contains(1.75));  // l in {1,3,5}
}

TEST_CASE("sup scans stay below the published constants on desk subranges") {
  auto sq1 = threshold_scan("sqhalf_logscan", 1, 10.0, 1e4);
  CHECK(sq1.hi <= inputs::scan_sqhalf_v1);
  CHECK(sq1.lo >= 1.30);  // sup near the left edge
  auto sq2 = threshold_scan("sqhalf_logscan", 2, 10.0, 1e4);
  CHECK(sq2.hi <= inputs::scan_sqhalf_v2);

  auto sv1 = threshold_scan("sumvar1log_scan", 1, 10.0, 1e4);
  CHECK(sv1.hi <= inputs::scan_sumvar1log_v1);
  auto sv2 = threshold_scan("sumvar1log_scan", 2, 10.0, 1e4);
  CHECK(sv2.hi <= inputs::scan_sumvar1log_v2);

  // tail form: the honest enclosure brackets the published constant (the mass
  // band inflates the upper side); the deflated bound must stay below it
  auto pt1 = threshold_scan("phi_tail_scan", 1, 20.0, 1e4);
  CHECK(pt1.lo <= inputs::scan_phitail_v1);
  auto pt1d = threshold_scan("phi_tail_scan", 1, 20.0, 1e4, default_scan_cap, true);
  CHECK(pt1d.hi <= inputs::scan_phitail_v1);
  auto pt2d = threshold_scan("phi_tail_scan", 2, 20.0, 1e4, default_scan_cap, true);
  CHECK(pt2d.hi <= inputs::scan_phitail_v2);

  auto lp1 = threshold_scan("l_phihalf_scan", 1, 1.0, 1e4);
  CHECK(lp1.hi <= inputs::scan_lphihalf_v1);
  CHECK(lp1.lo >= 16.7);  // the sup lives at l = 42 and must be found
  auto lp2 = threshold_scan("l_phihalf_scan", 2, 1.0, 1e4);
  CHECK(lp2.hi <= inputs::scan_lphihalf_v2);

  auto ih1 = threshold_scan("inv_phihalf_scan", 1, 20.0, 1e4);
  CHECK(ih1.hi <= inputs::scan_invphihalf_v1);
  auto ih2 = threshold_scan("inv_phihalf_scan", 2, 20.0, 1e4);
  CHECK(ih2.hi <= inputs::scan_invphihalf_v2);
}

TEST_CASE("degenerate single-point scan matches the direct evaluation") {
  double X0 = 42.0;
  auto scan = threshold_scan("l_phihalf_scan", 1, X0, X0);
  auto direct = weighted_sum("l_phihalf_sq", interval(X0), 1) / interval(X0);
  CHECK(scan.intersects(direct));
}

TEST_CASE("scan guards") {
  CHECK_THROWS_AS(threshold_scan("sqhalf_logscan", 1, 10.0, 1e8), resource_error);
  CHECK_THROWS_AS(threshold_scan("nope", 1, 10.0, 100.0), std::invalid_argument);
}
