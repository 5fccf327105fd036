// Evaluate a few prime products with validated tails and print how the
// enclosures tighten as the cutoff grows.
#include <logsieve/euler.hpp>
#include <cstdio>

using namespace logsieve;

int main() {
  for (u64 cutoff : {100'000ull, 1'000'000ull}) {
    std::printf("cutoff %llu\n", (unsigned long long)cutoff);
    for (const char* id : {"I_prod", "twin_inverse", "D_prod"}) {
      auto r = eval_catalog(id, cutoff);
      std::printf("  %-14s [%.15f, %.15f]  width %.2e\n", id, r.total.lo, r.total.hi,
                  width(r.total));
    }
  }
  auto z = zeta_point(interval(1.5));
  std::printf("zeta(3/2)      [%.15f, %.15f]\n", z.lo, z.hi);
  return 0;
}
