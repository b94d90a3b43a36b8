#include "cardvote/bounds.hpp"

#include <algorithm>
#include <map>

#include "cardvote/errors.hpp"
#include "cardvote/generators.hpp"

namespace cardvote {

namespace {

int grid_level(const Rational& v, int k) {
  Rational scaled = v * k;
  if (scaled.get_den() != 1) throw GridError("value " + to_string(v) + " is not on the 1/" + std::to_string(k) + " grid");
  return static_cast<int>(scaled.get_num().get_si());
}

std::vector<int> levels_of(const Preference& u, int k) {
  std::vector<int> levels;
  for (const auto& v : u.values()) levels.push_back(grid_level(v, k));
  return levels;
}

int count_switches(const std::vector<int>& levels, int k) {
  std::vector<char> present(static_cast<std::size_t>(k) + 1, 0);
  for (int l : levels) present[l] = 1;
  int switches = 0;
  for (int j = 0; j < k; ++j) switches += present[j] != present[j + 1];
  return switches;
}

Preference from_levels(const std::vector<int>& levels, int k) {
  std::vector<Rational> values;
  for (int l : levels) values.push_back(make_rational(l, k));
  return Preference::normalized(std::move(values));
}

Rational weighted_over_candidate_one(const CandidateDistribution& dist, std::span<const Rational> totals) {
  if (totals[0] == 0) throw UndefinedRatioError("candidate 1 has zero total value");
  Rational expected = 0;
  for (std::size_t j = 0; j < totals.size(); ++j) expected += dist.probs()[j] * totals[j];
  return expected / totals[0];
}

}  // namespace

ClassifiedPref classify(const Preference& u, int k) {
  const int m = u.m();
  if (k < m) throw PreconditionError("classification needs k >= m");
  auto levels = levels_of(u, k);
  if (std::find(levels.begin(), levels.end(), 0) == levels.end() ||
      std::find(levels.begin(), levels.end(), k) == levels.end())
    throw GridError("grid preference must contain both 0 and 1");

  const int cube_root = static_cast<int>(floor_cbrt(m));
  ClassifiedPref c{.pref = u, .k = k};
  c.image = levels;
  std::sort(c.image.begin(), c.image.end());
  c.image.erase(std::unique(c.image.begin(), c.image.end()), c.image.end());
  c.switches = count_switches(levels, k);
  c.count = 0;
  for (const auto& v : u.values()) {
    c.rounded.push_back(v > Rational(1, 2) ? 1 : 0);
    c.count += c.rounded.back();
  }
  for (int j = 1; j <= m; ++j) c.rank.push_back(u.position(j));
  for (int j = 1; j <= m; ++j) {
    if (c.rank[j - 1] == 1) c.favourites.push_back(j);
    else if (c.rank[j - 1] <= cube_root) c.runners_up.push_back(j);
  }
  c.in_Rk = u.is_tie_free();
  c.in_Ck = c.in_Rk && c.switches == 2;
  c.in_Da = c.in_Ck && c.count <= 2 && c.rounded[0] == 1;
  c.in_Db = c.in_Ck && c.count == 1 && c.rank[0] > cube_root;
  c.in_Dc = c.in_Ck && c.count == cube_root + 1 && c.rank[0] == cube_root + 1;
  return c;
}

Rational g_value(const Profile& u) {
  return weighted_over_candidate_one(j_star(u.m()).evaluate(u), welfares(u));
}

Rational gbar_value(const Profile& u) {
  std::vector<Rational> totals(static_cast<std::size_t>(u.m()), Rational(0));
  for (const auto& p : u.prefs())
    for (int j = 0; j < u.m(); ++j)
      if (p.values()[j] > Rational(1, 2)) totals[j] += 1;
  return weighted_over_candidate_one(j_star(u.m()).evaluate(u), totals);
}

ReductionResult reduce_to_Ck(const Profile& u, int k) {
  const int m = u.m();
  std::vector<std::vector<int>> levels;
  for (const auto& p : u.prefs()) {
    auto c = classify(p, k);
    if (!c.in_Rk) throw PreconditionError("reduce_to_Ck needs tie-free grid preferences");
    levels.push_back(levels_of(p, k));
  }

  // Block slides keep every voter's strict order, so the jstar lottery is fixed
  // and g only moves through the welfare totals.
  const auto dist = j_star(m).evaluate(u);
  auto totals = welfares(u);
  auto g_of = [&](const std::vector<Rational>& t) { return weighted_over_candidate_one(dist, t); };

  ReductionResult result{u, {}};
  Rational g = g_of(totals);
  for (int i = 0; i < u.n(); ++i) {
    while (count_switches(levels[i], k) > 2) {
      std::vector<int> image = levels[i];
      std::sort(image.begin(), image.end());
      // lowest maximal run of consecutive levels touching neither 0 nor k
      int low = -1, high = -1;
      for (std::size_t s = 0; s < image.size();) {
        std::size_t e = s;
        while (e + 1 < image.size() && image[e + 1] == image[e] + 1) ++e;
        if (image[s] != 0 && image[e] != k) {
          low = image[s];
          high = image[e];
          break;
        }
        s = e + 1;
      }

      auto shifted_totals = [&](int dir) {
        auto t = totals;
        for (int j = 0; j < m; ++j)
          if (levels[i][j] >= low && levels[i][j] <= high) t[j] += make_rational(dir, k);
        return t;
      };
      auto left = shifted_totals(-1), right = shifted_totals(+1);
      Rational g_left = g_of(left), g_right = g_of(right);
      ReductionStep step{i + 1, low, high, 0, g, 0, false};
      if (g_left <= g) {
        step.direction = -1;
      } else if (g_right <= g) {
        step.direction = +1;
      } else {
        step.both_directions_increase = true;
        step.direction = g_left <= g_right ? -1 : +1;
      }
      totals = step.direction < 0 ? std::move(left) : std::move(right);
      for (auto& l : levels[i])
        if (l >= low && l <= high) l += step.direction;
      g = step.direction < 0 ? g_left : g_right;
      step.g_after = g;
      result.steps.push_back(std::move(step));
    }
  }

  std::vector<Preference> out;
  for (const auto& l : levels) out.push_back(from_levels(l, k));
  result.profile = Profile(std::move(out));
  return result;
}

ProjectionResult project_to_Dk(const Profile& u, int k) {
  const int m = u.m();
  if (k < 4 * m) throw PreconditionError("project_to_Dk needs k >= 4m");
  const int cube_root = static_cast<int>(floor_cbrt(m));

  ProjectionResult result{u, {}};
  std::vector<Preference> out;
  int rounded_one = 0;
  for (int i = 1; i <= u.n(); ++i) {
    const Preference& p = u.voter(i);
    auto c = classify(p, k);
    if (!c.in_Ck) throw PreconditionError("project_to_Dk needs every voter in C_k (voter " + std::to_string(i) + ")");
    if (c.in_Dk()) {
      out.push_back(p);
      rounded_one += c.rounded[0];
      continue;
    }

    std::vector<int> order(p.order().begin(), p.order().end());
    std::vector<int> ranking;
    int top = 1;
    std::string rule;
    const int r1 = c.rank[0];
    if (r1 == 1) {
      rule = "1.1";
      ranking = order;
    } else if (r1 <= cube_root) {
      rule = "1.2";
      ranking = {order[0], 1};
      for (int j : order)
        if (j != order[0] && j != 1) ranking.push_back(j);
      top = 2;
    } else if (c.rounded[0] == 1) {
      rule = "2.1";
      ranking.assign(order.begin(), order.begin() + cube_root);
      ranking.push_back(1);
      for (int j : order)
        if (j != 1 && p.position(j) > cube_root) ranking.push_back(j);
      top = cube_root + 1;
    } else {
      rule = "2.2";
      ranking = order;
    }
    Preference v = block_preference(ranking, top, k);
    rounded_one += v.values()[0] > Rational(1, 2) ? 1 : 0;
    result.steps.push_back({i, rule, p, v});
    out.push_back(std::move(v));
  }
  if (rounded_one == 0)
    throw DegenerateProjectionError("no voter rounds candidate 1 up; the rounded ratio has a zero denominator");
  result.profile = Profile(std::move(out));
  return result;
}

Rational lower_bound_formula(int a, int b, int c, int n, int m) {
  if (a < 0 || b < 0 || c < 0 || a + b + c != n) throw PreconditionError("need a, b, c >= 0 with a + b + c = n");
  if (a + c < 1) throw PreconditionError("need a + c >= 1");
  if (m < 8) throw PreconditionError("need m >= 8");
  const long K = floor_cbrt(m);
  const long nn = n, mm = m, ac = a + c;
  return make_rational(a, 2 * nn * K) + make_rational(static_cast<long>(b) * b, 2 * nn * (mm - 1) * ac) +
         make_rational(static_cast<long>(c) * c * K, 2 * nn * (mm - 1) * ac);
}

MinRatioResult min_ratio_search(const Mechanism& mech, const std::function<bool(std::optional<Profile>&)>& next,
                                std::uint64_t budget) {
  MinRatioResult best;
  std::optional<Profile> current;
  while (best.visited < budget && next(current)) {
    ++best.visited;
    Rational r = ratio(mech, *current);
    if (!best.profile || r < best.ratio || (r == best.ratio && *current < *best.profile)) {
      best.profile = *current;
      best.ratio = r;
    }
  }
  if (!best.profile) throw PreconditionError("min_ratio_search over an empty family");
  return best;
}

MinRatioResult min_ratio_search(const Mechanism& mech, std::span<const Profile> family, std::uint64_t budget) {
  std::size_t index = 0;
  return min_ratio_search(
      mech,
      [&](std::optional<Profile>& out) {
        if (index >= family.size()) return false;
        out = family[index++];
        return true;
      },
      budget);
}

}  // namespace cardvote
