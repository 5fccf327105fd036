#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <logsieve/euler.hpp>

#include <cmath>

using namespace logsieve;

static constexpr u64 kCutoff = 100'000;  // unit-test cutoff; CLI default is 1e7

TEST_CASE("zeta enclosures") {
  auto z2 = zeta_point(interval(2.0));
  CHECK(z2.contains(M_PI * M_PI / 6.0));
  CHECK(width(z2) < 1e-9);

  auto z32 = zeta_point(interval(1.5));
  CHECK(z32.lo <= 2.6123753486854883L);
  CHECK(z32.hi >= 2.6123753486854883L);
  CHECK(width(z32) < 1e-9);

  CHECK_THROWS_AS(zeta_point(interval(1.001)), std::domain_error);
}

TEST_CASE("catalog enclosures intersect the pinned reference table") {
  for (const auto& ref : inputs::reference_table()) {
    interval target(ref.lo, ref.hi);
    if (std::string(ref.id) == "P_half_resid") {
      // direct entry, plus the full product equals zeta(3/2) times it
      auto direct = eval_catalog("P_half_resid", kCutoff).total;
      CHECK_MESSAGE(direct.intersects(target), ref.id);
      auto full = eval_catalog("P_half_full", kCutoff).total;
      auto t2 = zeta_point(interval(1.5)) * target;
      CHECK_MESSAGE(full.intersects(t2), "P_half_full vs zeta(3/2) * residual");
      continue;
    }
    if (std::string(ref.id) == "P_theta_resid") {
      auto full = eval_catalog("P_theta_full", kCutoff).total;
      auto t2 = zeta_point(interval(1.0) + theta_const()) * target;
      CHECK_MESSAGE(full.intersects(t2), "P_theta_full vs zeta(1+theta) * residual");
      continue;
    }
    auto got = eval_catalog(ref.id, kCutoff).total;
    CHECK_MESSAGE(got.intersects(target), ref.id, " got [", got.lo, ",", got.hi, "]");
  }
}

TEST_CASE("sumhalf error product matches its published combined enclosure") {
  auto got = eval_catalog("sumhalf_err_prod", kCutoff).total;
  CHECK(got.intersects(interval(inputs::sumhalf_err_prod_lo, inputs::sumhalf_err_prod_hi)));
}

TEST_CASE("zeta identity for I_prod") {
  // prod (1+1/(p(p-1))) = zeta(2) zeta(3) / zeta(6); the zeta route is far
  // tighter, so it must land inside our catalog enclosure, and both intersect.
  auto ours = eval_catalog("I_prod", kCutoff).total;
  auto zid = zeta_point(interval(2.0)) * zeta_point(interval(3.0)) / zeta_point(interval(6.0));
  CHECK(ours.intersects(zid));
  CHECK(ours.contains(zid));
}

TEST_CASE("twin inverse times H product is 1") {
  auto a = eval_catalog("twin_inverse", kCutoff).total;
  auto b = eval_catalog("H_prod", kCutoff).total;
  CHECK((a * b).contains(1.0));
}

TEST_CASE("cutoff monotonicity") {
  for (const char* id : {"I_prod", "D_prod", "H_prod", "P_half_full"}) {
    auto small = eval_catalog(id, kCutoff).total;
    auto big = eval_catalog(id, 2 * kCutoff).total;
    CHECK_MESSAGE(small.intersects(big), id);
    CHECK_MESSAGE(width(big) <= width(small), id);
  }
  // sums too
  auto s1 = eval_catalog("mertens_log_sum", kCutoff).total;
  auto s2 = eval_catalog("mertens_log_sum", 2 * kCutoff).total;
  CHECK(s1.intersects(s2));
}

TEST_CASE("local factors") {
  CHECK(local_factor_product("p_alpha_half", 1).contains(1.0));
  CHECK(width(local_factor_product("p_alpha_half", 1)) == 0.0);

  long double ref = 1.0L + std::sqrt(2.0L) / (3.0L - std::sqrt(2.0L));
  auto f2 = local_factor_product("p_alpha_half", 2);
  CHECK(f2.lo <= ref);
  CHECK(f2.hi >= ref);
  CHECK(width(f2) < 1e-12);

  // A_2 = 1 exactly
  auto a2 = local_factor_product("A_q", 2);
  CHECK(a2.contains(1.0));
  CHECK(width(a2) < 1e-15);

  // multiplicativity over the prime factors of q
  auto f6 = local_factor_product("p_alpha_half", 6);
  auto f2f3 = local_factor_product("p_alpha_half", 2) * local_factor_product("p_alpha_half", 3);
  CHECK(f6.intersects(f2f3));

  auto s6 = local_factor_sum("log_over_p", 6);
  long double s_ref = std::log(2.0L) / 2.0L + std::log(3.0L) / 3.0L;
  CHECK(s6.lo <= s_ref);
  CHECK(s6.hi >= s_ref);

  CHECK_THROWS_AS(local_factor_product("nope", 2), std::invalid_argument);
}

TEST_CASE("delta input") {
  auto d1 = delta_input(1, 1);
  CHECK(d1.contains(0.5772156649015329));  // gamma branch wins
  CHECK(width(d1) < 1e-14);

  long double ref = 3.0L * std::exp(-(0.577215664901532860606512L / 3.0L + 1.0L));
  auto d13 = delta_input(1, 1.0 / 3.0);
  CHECK(d13.lo <= ref);
  CHECK(d13.hi >= ref);

  CHECK_THROWS_AS(delta_input(2, 5), std::domain_error);
  CHECK_THROWS_AS(delta_input(1, 0.0), std::domain_error);
}

TEST_CASE("remainder coefficients at a = 2") {
  // v=1: the zeta-ratio branch dominates: |zeta(2)/zeta(4) - 6/pi^2|
  long double z2 = 1.64493406684822644L, z4 = 1.08232323371113819L;
  long double pi2 = 9.86960440108935862L;
  long double e2_ref = z2 / z4 - 6.0L / pi2;
  auto E1 = remainder_coefficient(2, 1);
  CHECK(E1.lo <= e2_ref);
  CHECK(E1.hi >= e2_ref);
  CHECK(width(E1) < 1e-6);

  auto E2 = remainder_coefficient(2, 2);
  long double e2v2_ref =
      (std::sqrt(2.0L) - 1.0L) / std::sqrt(2.0L) * (0.8L * z2 / z4 - (2.0L / 3.0L) * 6.0L / pi2);
  CHECK(E2.lo <= e2v2_ref);
  CHECK(E2.hi >= e2v2_ref);

  CHECK_THROWS_AS(remainder_coefficient(2, 3), std::domain_error);
}

TEST_CASE("unknown ids and registration guards") {
  CHECK_THROWS_AS(eval_catalog("no_such_thing", kCutoff), std::invalid_argument);
}
