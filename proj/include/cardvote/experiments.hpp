#pragma once

#include <cstdint>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cardvote/bounds.hpp"
#include "cardvote/generators.hpp"

namespace cardvote {

struct NegativeRow {
  int m;
  int n;
  std::string mech;  ///< "j1" or "j2"
  int q;
  Rational ratio;
};

/// Exact ratio of j1q and j2q on the adversarial profile for each m. With no
/// explicit quotas, j1q runs over 1..m and j2q over floor(n/2)+1..n+1.
std::vector<NegativeRow> negative_experiment(const std::vector<int>& ms, const std::optional<std::vector<int>>& qs,
                                             int repeat = 1);

struct LowerRow {
  int m, n, k;
  std::uint64_t seed;
  int a, b, c;
  Rational gbar;
  Rational bound;
};

/// Class-count triples (a, b, c) with a + b + c = n, a and b on multiples of
/// `step` (plus n itself), and a + c >= 1.
std::vector<std::array<int, 3>> class_count_grid(int n, int step);

/// Rounded ratio of seeded structured profiles against the closed-form bound.
std::vector<LowerRow> lower_experiment(int m, int n, int k, int step, std::uint64_t first_seed, int seeds);

struct CyclicRow {
  int m;
  int star;
  Rational eps;
  Rational ratio;
};

/// jstar on each cyclic profile; `eps` defaults to 1/m^3.
std::vector<CyclicRow> cyclic_experiment(int m, std::optional<Rational> eps = std::nullopt);

}  // namespace cardvote
