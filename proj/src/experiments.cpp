#include "cardvote/experiments.hpp"

#include <set>

#include "cardvote/errors.hpp"

namespace cardvote {

std::vector<NegativeRow> negative_experiment(const std::vector<int>& ms, const std::optional<std::vector<int>>& qs,
                                             int repeat) {
  std::vector<NegativeRow> rows;
  for (int m : ms) {
    Profile u = gen_negative(m, repeat);
    auto totals = welfares(u);
    const int n = u.n();

    std::vector<int> q1, q2;
    if (qs) {
      for (int q : *qs) {
        if (q >= 1 && q <= m) q1.push_back(q);
        if (q >= 1) q2.push_back(q);
      }
    } else {
      for (int q = 1; q <= m; ++q) q1.push_back(q);
      for (int q = n / 2 + 1; q <= n + 1; ++q) q2.push_back(q);
    }
    for (int q : q1) rows.push_back({m, n, "j1", q, ratio(j1q(q).evaluate(u), totals)});
    for (int q : q2) rows.push_back({m, n, "j2", q, ratio(j2q(q).evaluate(u), totals)});
  }
  return rows;
}

std::vector<std::array<int, 3>> class_count_grid(int n, int step) {
  if (n < 1 || step < 1) throw PreconditionError("need n >= 1 and step >= 1");
  std::set<int> values;
  for (int v = 0; v <= n; v += step) values.insert(v);
  values.insert(n);
  std::vector<std::array<int, 3>> out;
  for (int a : values)
    for (int b : values) {
      int c = n - a - b;
      if (c < 0 || a + c < 1) continue;
      out.push_back({a, b, c});
    }
  return out;
}

std::vector<LowerRow> lower_experiment(int m, int n, int k, int step, std::uint64_t first_seed, int seeds) {
  std::vector<LowerRow> rows;
  for (auto [a, b, c] : class_count_grid(n, step)) {
    Rational bound = lower_bound_formula(a, b, c, n, m);
    for (int s = 0; s < seeds; ++s) {
      std::uint64_t seed = first_seed + static_cast<std::uint64_t>(s);
      Profile u = gen_Dk({.m = m, .k = k, .a = a, .b = b, .c = c, .shapes = {}}, seed);
      rows.push_back({m, n, k, seed, a, b, c, gbar_value(u), bound});
    }
  }
  return rows;
}

std::vector<CyclicRow> cyclic_experiment(int m, std::optional<Rational> eps) {
  const long mm = m;
  Rational e = eps.value_or(make_rational(1, mm * mm * mm));
  auto mech = j_star(m);
  std::vector<CyclicRow> rows;
  for (int star = 1; star <= m; ++star) rows.push_back({m, star, e, ratio(mech, gen_cyclic(m, star, e))});
  return rows;
}

}  // namespace cardvote
