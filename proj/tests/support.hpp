#pragma once

#include <random>
#include <vector>

#include "idealconv/apset.hpp"

namespace testing {

using idealconv::APSet;
using idealconv::nat;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  nat uniform(nat lo, nat hi) { return std::uniform_int_distribution<nat>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

private:
  std::mt19937_64 engine_;
};

// Modulus up to 12, a few corrections below 60.
inline APSet random_apset(Rng& rng, nat max_mod = 12) {
  nat m = rng.uniform(1, max_mod);
  std::vector<nat> res, inc, exc;
  for (nat r = 0; r < m; ++r)
    if (rng.coin())
      res.push_back(r);
  for (int i = rng.uniform(0, 3); i > 0; --i)
    inc.push_back(rng.uniform(1, 60));
  for (int i = rng.uniform(0, 3); i > 0; --i)
    exc.push_back(rng.uniform(1, 60));
  return APSet(m, res, inc, exc);
}

} // namespace testing
