#include "cardvote/generators.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "cardvote/errors.hpp"

namespace cardvote {

NegativeConstructionParams NegativeConstructionParams::make(int m, int repeat) {
  if (m < 8) throw PreconditionError("the negative construction needs m >= 8");
  if (repeat < 1) throw PreconditionError("repeat must be >= 1");
  NegativeConstructionParams p;
  p.m = m;
  p.k = static_cast<int>(floor_cbrt(m));
  p.g_count = static_cast<int>(floor_cbrt_sq(m));
  p.n = m - 1 + p.g_count;
  p.repeat = repeat;
  // k * g reaches m when m is a perfect cube; candidate m stays out of every block.
  int covered = std::min(p.k * p.g_count, m - 1);
  int base = covered / p.g_count, extra = covered % p.g_count;
  int next = 1;
  for (int b = 0; b < p.g_count; ++b) {
    int size = base + (b < extra ? 1 : 0);
    std::vector<int> block(static_cast<std::size_t>(size));
    std::iota(block.begin(), block.end(), next);
    next += size;
    p.blocks.push_back(std::move(block));
  }
  return p;
}

namespace {

// Distinct values t / m^4 below 1/m^2, handed out in descending order along
// `candidates`; the last one receives 0.
void small_ladder(std::vector<Rational>& values, const std::vector<int>& candidates, long m) {
  const long scale = m * m * m * m;
  long t = static_cast<long>(candidates.size()) - 1;
  for (int c : candidates) values[c - 1] = make_rational(t--, scale);
}

// Candidates other than `skip`, walking cyclically over 1..m-1 from `start`.
std::vector<int> cyclic_others(int m, int start, const std::set<int>& skip) {
  std::vector<int> out;
  for (int step = 0; step < m - 1; ++step) {
    int c = (start - 1 + step) % (m - 1) + 1;
    if (!skip.count(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

Profile gen_negative(int m, int repeat) {
  auto params = NegativeConstructionParams::make(m, repeat);
  const long mm = m;
  const long scale = mm * mm * mm * mm;
  std::vector<Preference> voters;

  for (int i = 1; i <= m - 1; ++i) {
    std::vector<Rational> values(static_cast<std::size_t>(m), Rational(0));
    values[i - 1] = 1;
    values[m - 1] = 0;
    auto rest = cyclic_others(m, i % (m - 1) + 1, {i});
    // keep 0 for candidate m: shift the ladder up by one step
    long t = static_cast<long>(rest.size());
    for (int c : rest) values[c - 1] = make_rational(t--, scale);
    voters.push_back(Preference::normalized(std::move(values)));
  }

  for (const auto& block : params.blocks) {
    std::vector<Rational> values(static_cast<std::size_t>(m), Rational(0));
    for (std::size_t t = 0; t < block.size(); ++t)
      values[block[t] - 1] = Rational(1) - make_rational(static_cast<long>(t), scale);
    values[m - 1] = Rational(1) - make_rational(1, mm * mm);
    std::set<int> in_block(block.begin(), block.end());
    small_ladder(values, cyclic_others(m, block.back() % (m - 1) + 1, in_block), m);
    voters.push_back(Preference::normalized(std::move(values)));
  }

  std::vector<Preference> all;
  all.reserve(voters.size() * static_cast<std::size_t>(repeat));
  for (int r = 0; r < repeat; ++r) all.insert(all.end(), voters.begin(), voters.end());
  return Profile(std::move(all));
}

Preference block_preference(std::span<const int> ranking, int top_size, int k) {
  const int m = static_cast<int>(ranking.size());
  if (m < 2) throw PreconditionError("need m >= 2");
  if (k < m) throw PreconditionError("block preferences need k >= m");
  if (top_size < 1 || top_size > m - 1) throw PreconditionError("top block size must be in 1..m-1");
  std::vector<int> seen(ranking.begin(), ranking.end());
  std::sort(seen.begin(), seen.end());
  for (int j = 0; j < m; ++j)
    if (seen[j] != j + 1) throw PreconditionError("ranking is not a permutation of 1..m");

  std::vector<Rational> values(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r)
    values[ranking[r] - 1] = r < top_size ? make_rational(k - r, k) : make_rational(m - 1 - r, k);
  return Preference::normalized(std::move(values));
}

namespace {

void check_shape(const DkVoterShape& shape, DkClass cls, int m, int cube_root) {
  auto it = std::find(shape.ranking.begin(), shape.ranking.end(), 1);
  if (it == shape.ranking.end()) throw PreconditionError("ranking misses candidate 1");
  int pos1 = static_cast<int>(it - shape.ranking.begin()) + 1;
  bool ok = false;
  switch (cls) {
    case DkClass::a: ok = shape.top_size <= 2 && pos1 <= shape.top_size; break;
    case DkClass::b: ok = shape.top_size == 1 && pos1 > cube_root; break;
    case DkClass::c: ok = shape.top_size == cube_root + 1 && pos1 == cube_root + 1; break;
  }
  if (!ok || static_cast<int>(shape.ranking.size()) != m)
    throw PreconditionError("explicit voter shape does not match its declared class");
}

DkVoterShape random_shape(DkClass cls, int m, int cube_root, std::mt19937_64& rng) {
  std::vector<int> others(static_cast<std::size_t>(m - 1));
  std::iota(others.begin(), others.end(), 2);
  std::shuffle(others.begin(), others.end(), rng);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  DkVoterShape shape;
  int pos1 = 1;
  switch (cls) {
    case DkClass::a:
      shape.top_size = pick(1, 2);
      pos1 = pick(1, shape.top_size);
      break;
    case DkClass::b:
      shape.top_size = 1;
      pos1 = pick(cube_root + 1, m);
      break;
    case DkClass::c:
      shape.top_size = cube_root + 1;
      pos1 = cube_root + 1;
      break;
  }
  shape.ranking = others;
  shape.ranking.insert(shape.ranking.begin() + (pos1 - 1), 1);
  return shape;
}

}  // namespace

Profile gen_Dk(const DkParams& params, std::uint64_t seed) {
  const int m = params.m;
  if (m < 8) throw PreconditionError("gen_Dk needs m >= 8");
  if (params.k < 4 * m) throw PreconditionError("gen_Dk needs k >= 4m");
  if (params.a < 0 || params.b < 0 || params.c < 0) throw PreconditionError("class counts must be >= 0");
  if (params.a + params.c < 1) throw PreconditionError("gen_Dk needs a + c >= 1");
  const int cube_root = static_cast<int>(floor_cbrt(m));
  if (params.b > 0 && m <= cube_root) throw PreconditionError("class (b) infeasible for this m");
  if (!params.shapes.empty() && static_cast<int>(params.shapes.size()) != params.n())
    throw PreconditionError("need exactly one explicit shape per voter");

  std::mt19937_64 rng(seed);
  std::vector<Preference> voters;
  for (int i = 0; i < params.n(); ++i) {
    DkClass cls = i < params.a ? DkClass::a : (i < params.a + params.b ? DkClass::b : DkClass::c);
    DkVoterShape shape;
    if (params.shapes.empty()) {
      shape = random_shape(cls, m, cube_root, rng);
    } else {
      shape = params.shapes[i];
      check_shape(shape, cls, m, cube_root);
    }
    voters.push_back(block_preference(shape.ranking, shape.top_size, params.k));
  }
  return Profile(std::move(voters));
}

Profile gen_cyclic(int m, int star, const Rational& eps) {
  if (m < 2) throw PreconditionError("gen_cyclic needs m >= 2");
  if (star < 1 || star > m) throw PreconditionError("star must be in 1..m");
  const long mm = m;
  if (eps <= 0 || eps >= make_rational(1, mm * mm)) throw PreconditionError("eps must lie in (0, 1/m^2)");

  std::vector<Preference> voters;
  for (int i = 1; i <= m; ++i) {
    std::vector<Rational> values(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      int c = (i - 1 + r) % m + 1;
      // globally distinct, strictly decreasing along the voter's cycle
      values[c - 1] = eps * make_rational(mm * mm - ((i - 1) * mm + r), mm * mm + 1);
    }
    if (i == star) values[star - 1] = 1;
    voters.push_back(Preference::relaxed(std::move(values)));
  }
  return Profile(std::move(voters));
}

namespace {

// Shifted variables x_s = y_s - s turn the strictly increasing grid levels
// y_0 = 0 < y_1 < ... < y_{m-1} = k into a non-decreasing chain in [0, k-m+1].
class ChainFit {
 public:
  ChainFit(std::vector<Rational> targets, int width) : targets_(std::move(targets)), width_(width) {
    const int len = static_cast<int>(targets_.size());
    lo_.assign(static_cast<std::size_t>(len), 0);
    hi_.assign(static_cast<std::size_t>(len), width_);
    hi_[0] = 0;
    lo_[len - 1] = width_;
  }

  void fix(int s, int x) { lo_[s] = hi_[s] = x; }

  // Smallest x at position s attained by some optimal chain.
  int smallest_optimal(int s) const {
    auto forward = sweep(true), backward = sweep(false);
    std::optional<Rational> best;
    for (int x = lo_.back(); x <= hi_.back(); ++x)
      if (forward.back()[x] && (!best || *forward.back()[x] < *best)) best = forward.back()[x];
    for (int x = lo_[s]; x <= hi_[s]; ++x) {
      if (!forward[s][x] || !backward[s][x]) continue;
      if (*forward[s][x] + *backward[s][x] - cost(s, x) == *best) return x;
    }
    throw PreconditionError("no feasible grid placement");
  }

 private:
  Rational cost(int s, int x) const { return abs(Rational(x + s) - targets_[s]); }

  using Table = std::vector<std::vector<std::optional<Rational>>>;

  Table sweep(bool forward) const {
    const int len = static_cast<int>(targets_.size());
    Table t(static_cast<std::size_t>(len), std::vector<std::optional<Rational>>(static_cast<std::size_t>(width_ + 1)));
    for (int step = 0; step < len; ++step) {
      int s = forward ? step : len - 1 - step;
      int prev = forward ? s - 1 : s + 1;
      std::optional<Rational> running;
      auto visit = [&](int x) {
        if (step > 0 && t[prev][x] && (!running || *t[prev][x] < *running)) running = t[prev][x];
        if (x < lo_[s] || x > hi_[s]) return;
        if (step == 0) t[s][x] = cost(s, x);
        else if (running) t[s][x] = *running + cost(s, x);
      };
      if (forward) for (int x = 0; x <= width_; ++x) visit(x);
      else for (int x = width_; x >= 0; --x) visit(x);
    }
    return t;
  }

  std::vector<Rational> targets_;
  int width_;
  std::vector<int> lo_, hi_;
};

Preference discretize_one(const Preference& u, int k) {
  const int m = u.m();
  // ascending position s holds candidate order[m-1-s]
  std::vector<Rational> targets;
  std::vector<int> at_position;
  for (int s = 0; s < m; ++s) {
    int c = u.order()[m - 1 - s];
    at_position.push_back(c);
    targets.push_back(u.values()[c - 1] * k);
  }
  ChainFit fit(std::move(targets), k - m + 1);
  std::vector<int> level(static_cast<std::size_t>(m));
  for (int c = 1; c <= m; ++c) {
    int s = m - u.position(c);
    int x = fit.smallest_optimal(s);
    fit.fix(s, x);
    level[c - 1] = x + s;
  }
  std::vector<Rational> values;
  for (int c = 0; c < m; ++c) values.push_back(make_rational(level[c], k));
  return Preference::normalized(std::move(values));
}

}  // namespace

Profile discretize(const Profile& u, int k) {
  if (k < u.m() - 1)
    throw PreconditionError("k = " + std::to_string(k) + " cannot host " + std::to_string(u.m()) +
                            " distinct grid values");
  std::vector<Preference> out;
  for (const auto& p : u.prefs()) out.push_back(discretize_one(p, k));
  return Profile(std::move(out));
}

Profile sample_grid_profile(int m, int n, int k, bool tie_free, std::uint64_t seed) {
  if (m < 2 || n < 1 || k < 1) throw PreconditionError("need m >= 2, n >= 1, k >= 1");
  if (tie_free && k < m - 1) throw PreconditionError("tie-free sampling needs k >= m - 1");
  std::mt19937_64 rng(seed);
  std::vector<Preference> voters;
  for (int i = 0; i < n; ++i) {
    std::vector<int> levels(static_cast<std::size_t>(m));
    if (tie_free) {
      // a ranking plus a uniform (m-2)-subset of the interior levels
      std::vector<int> interior(static_cast<std::size_t>(k - 1));
      std::iota(interior.begin(), interior.end(), 1);
      std::vector<int> chosen;
      std::sample(interior.begin(), interior.end(), std::back_inserter(chosen), m - 2, rng);
      chosen.push_back(0);
      chosen.push_back(k);
      std::sort(chosen.begin(), chosen.end());
      std::vector<int> ranking(static_cast<std::size_t>(m));
      std::iota(ranking.begin(), ranking.end(), 0);
      std::shuffle(ranking.begin(), ranking.end(), rng);
      for (int r = 0; r < m; ++r) levels[ranking[r]] = chosen[r];
    } else {
      std::uniform_int_distribution<int> level(0, k);
      do {
        for (auto& l : levels) l = level(rng);
      } while (std::find(levels.begin(), levels.end(), 0) == levels.end() ||
               std::find(levels.begin(), levels.end(), k) == levels.end());
    }
    std::vector<Rational> values;
    for (int l : levels) values.push_back(make_rational(l, k));
    voters.push_back(Preference::normalized(std::move(values)));
  }
  return Profile(std::move(voters));
}

}  // namespace cardvote
