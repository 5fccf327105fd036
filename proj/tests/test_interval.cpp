#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <logsieve/interval.hpp>

#include <cfenv>
#include <cmath>
#include <random>

using namespace logsieve;

TEST_CASE("endpoint arithmetic on exact inputs") {
  interval a(1, 2), b(3, 4);
  auto s = a + b;
  CHECK(s.contains(4.0));
  CHECK(s.contains(6.0));
  // endpoints exact here, so the outward nudge is the only slack
  CHECK(s.lo >= 4.0 - 1e-14);
  CHECK(s.hi <= 6.0 + 1e-14);

  auto m = interval(-1, 2) * interval(3, 4);
  CHECK(m.contains(-4.0));
  CHECK(m.contains(8.0));
  CHECK(m.lo <= -4.0);
  CHECK(m.hi >= 8.0);
}

TEST_CASE("division encloses 1/3 within 2 ulp and rejects zero divisors") {
  auto q = interval(1.0) / interval(3.0);
  CHECK(q.contains(1.0 / 3.0));
  CHECK(q.hi - q.lo <= 2 * std::ldexp(1.0, -54));
  CHECK_THROWS_AS(interval(1.0) / interval(-1, 1), std::domain_error);
}

TEST_CASE("elementary functions respect domains and enclose") {
  auto l = log(interval(1.0));
  CHECK(l.contains(0.0));
  CHECK(width(l) <= 4 * std::numeric_limits<double>::denorm_min() + 1e-15);

  auto r = sqrt(interval(4.0));
  CHECK(r.contains(2.0));

  // 2^theta with theta = 1 - 1/(12 ln 10); reference from an 80-bit evaluation
  auto p = pow(interval(2.0), theta_const());
  long double theta = 1.0L - 1.0L / (12.0L * std::log(10.0L));
  long double ref = std::exp(theta * std::log(2.0L));
  CHECK(p.lo <= double(ref));
  CHECK(p.hi >= double(ref));
  CHECK(width(p) < 1e-13);

  CHECK_THROWS_AS(log(interval(0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(sqrt(interval(-1.0)), std::domain_error);
}

TEST_CASE("constant catalog") {
  CHECK(const_catalog("gamma").contains(0.5772156649015328606));
  CHECK(const_catalog("pi").contains(3.141592653589793));
  CHECK(const_catalog("pi").lo <= 3.14159265358979L + 1e-14L);
  CHECK(const_catalog("pi").hi >= 3.14159265358979L);
  CHECK(width(const_catalog("gamma")) <= 4 * std::ldexp(1.0, -53));
  // theta = 1 - 1/ln(10^12), 80-bit reference
  long double theta = 1.0L - 1.0L / (12.0L * std::log(10.0L));
  auto th = const_catalog("theta");
  CHECK(th.lo <= double(theta));
  CHECK(th.hi >= double(theta));
  CHECK_THROWS_AS(const_catalog("planck"), std::invalid_argument);
}

TEST_CASE("hull, contains, width basics") {
  CHECK(hull(interval(0, 1), interval(2, 3)).contains(interval(0, 3)));
  CHECK(interval(0, 1).contains(0.5));
  CHECK(width(interval(1.0)) == 0.0);
}

// Enclosure soundness: random point operations contain the 80-bit reference.
TEST_CASE("enclosure soundness against extended-precision reference") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-1e3, 1e3);
  for (int i = 0; i < 20000; ++i) {
    double x = U(rng), y = U(rng);
    interval X(x), Y(y);
    long double xr = x, yr = y;
    CHECK((X + Y).lo <= xr + yr);
    CHECK((X + Y).hi >= xr + yr);
    CHECK((X - Y).lo <= xr - yr);
    CHECK((X - Y).hi >= xr - yr);
    CHECK((X * Y).lo <= xr * yr);
    CHECK((X * Y).hi >= xr * yr);
    if (y > 1e-6 || y < -1e-6) {
      CHECK((X / Y).lo <= xr / yr);
      CHECK((X / Y).hi >= xr / yr);
    }
    double ax = std::fabs(x) + 0.5;
    CHECK(log(interval(ax)).lo <= std::log((long double)ax));
    CHECK(log(interval(ax)).hi >= std::log((long double)ax));
    CHECK(sqrt(interval(ax)).lo <= std::sqrt((long double)ax));
    CHECK(sqrt(interval(ax)).hi >= std::sqrt((long double)ax));
  }
}

// Inclusion monotonicity: X in X', Y in Y'  =>  op(X,Y) in op(X',Y').
TEST_CASE("inclusion monotonicity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-50, 50);
  for (int i = 0; i < 5000; ++i) {
    double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    interval X(std::fmin(a, b), std::fmax(a, b));
    interval Xw(X.lo - std::fabs(c), X.hi + std::fabs(d));
    interval Y(std::fmin(c, d), std::fmax(c, d));
    interval Yw(Y.lo - 1, Y.hi + 1);
    CHECK(hull(Xw + Yw, X + Y).contains(X + Y));
    CHECK((Xw + Yw).contains(X + Y));
    CHECK((Xw - Yw).contains(X - Y));
    CHECK((Xw * Yw).contains(X * Y));
    if (Y.lo > 0.5) {
      CHECK((Xw / interval(Y.lo / 2, Yw.hi)).contains(X / Y));
      CHECK(log(interval(Y.lo / 2, Yw.hi)).contains(log(Y)));
      CHECK(sqrt(interval(Y.lo / 2, Yw.hi)).contains(sqrt(Y)));
      CHECK(exp(interval(-1.0, 1.0)).contains(exp(interval(-0.5, 0.5))));
    }
  }
}

// Correctness must not depend on the active rounding mode: results computed
// under hardware directed rounding still enclose the reference, and the
// nudge-based results computed in that environment remain sound.
TEST_CASE("rounding-mode independence of soundness") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1e6, 1e6);
  const int modes[] = {FE_TONEAREST, FE_UPWARD, FE_DOWNWARD};
  for (int mode : modes) {
    std::fesetround(mode);
    for (int i = 0; i < 2000; ++i) {
      volatile double x = U(rng), y = U(rng);
      long double ref = (long double)x * (long double)y;
      auto p = interval(x) * interval(y);
      CHECK(p.lo <= ref);
      CHECK(p.hi >= ref);
    }
  }
  std::fesetround(FE_TONEAREST);
}

TEST_CASE("long double intervals behave the same way") {
  xinterval a(1.0L), b(3.0L);
  auto q = a / b;
  CHECK(q.contains(1.0L / 3.0L));
  CHECK(width(q) <= 4e-19L);
  auto s = sqrt(xinterval(2.0L));
  CHECK(s.lo * s.lo <= 2.0L);
  CHECK(s.hi * s.hi >= 2.0L);
}

TEST_CASE("ratio and powi helpers") {
  auto r = ratio(-1, 3);
  CHECK(r.contains(-1.0 / 3.0));
  auto p = powi(interval(2.0), 10);
  CHECK(p.contains(1024.0));
  CHECK(width(p) < 1e-10);
}
