// Sweep the kernel integral to a desk-scale cap and derive the constant s_v.
#include <logsieve/hq.hpp>
#include <cstdio>

using namespace logsieve;

int main() {
  for (unsigned v : {1u, 2u}) {
    auto r = hq_integral(1e6, v);
    auto s = sv_constant(1e6, v);
    std::printf("v=%u  int_1^1e6 h/s = [%.12f, %.12f]  (%llu events, %.2fs)\n", v,
                r.integral.lo, r.integral.hi, (unsigned long long)r.events, r.seconds);
    std::printf("     s_%u in [%.9f, %.9f]\n", v, s.lo, s.hi);
  }
  return 0;
}
