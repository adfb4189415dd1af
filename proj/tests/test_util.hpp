#pragma once

#include <random>

#include "ldp/defmat.hpp"

namespace ldp::testing {

// arms {(3,-4),(5,-8)}, {(2,1)}, {(2,1)} with v+
inline PMatrix running_example() {
  return make_pmatrix({{{3, -4}, {5, -8}}, {{2, 1}}, {{2, 1}}}, true, false);
}

// random valid defining matrix with small entries
inline PMatrix random_pmatrix(std::mt19937& rng, int rmax = 3, int nmax = 3, int lmax = 6, int dmax = 9) {
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    int r = rnd(1, rmax);
    std::vector<std::vector<Col>> arms(r + 1);
    for (auto& a : arms) {
      int n = rnd(1, nmax);
      while (static_cast<int>(a.size()) < n) {
        Col c{rnd(1, lmax), rnd(-dmax, dmax)};
        if (!(gcd(c.l, c.d) == Int(1))) continue;
        bool dup = false;
        for (const auto& x : a) dup |= x.slope() == c.slope();
        if (!dup) a.push_back(c);
      }
    }
    PMatrix P = make_pmatrix(std::move(arms), rnd(0, 1) == 1, rnd(0, 1) == 1);
    if (validate(P).ok) return P;
  }
}

// one random admissible operation
inline PMatrix random_op(const PMatrix& P, std::mt19937& rng) {
  auto rnd = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (rnd(0, 4)) {
    case 0: return flip_last_row(P);
    case 1: return swap_arms(P, rnd(0, P.r()), rnd(0, P.r()));
    case 2: return add_row_multiple(P, rnd(1, P.r()), Int(rnd(-4, 4)));
    case 3: {
      int i = rnd(0, P.r());
      int n = static_cast<int>(P.arms[i].size());
      return swap_in_arm(P, i, rnd(0, n - 1), rnd(0, n - 1));
    }
    default: {
      if (P.r() >= 4) return P;
      PMatrix Q = redundant_extend(P);
      return add_row_multiple(Q, Q.r(), Int(rnd(-3, 3)));
    }
  }
}

}  // namespace ldp::testing
