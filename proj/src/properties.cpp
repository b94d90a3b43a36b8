#include "cardvote/properties.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "cardvote/errors.hpp"

namespace cardvote {

std::vector<Preference> enumerate_Rk_prefs(int m, int k, bool tie_free) {
  if (m < 2) throw PreconditionError("need m >= 2");
  if (k < 1) throw PreconditionError("need k >= 1");
  if (tie_free && k < m - 1)
    throw PreconditionError("a tie-free grid preference over " + std::to_string(m) + " candidates needs k >= " +
                            std::to_string(m - 1));

  std::vector<Preference> out;
  std::vector<int> digits(static_cast<std::size_t>(m), 0);
  while (true) {
    bool has_zero = std::find(digits.begin(), digits.end(), 0) != digits.end();
    bool has_top = std::find(digits.begin(), digits.end(), k) != digits.end();
    bool ok = has_zero && has_top;
    if (ok && tie_free) {
      auto sorted = digits;
      std::sort(sorted.begin(), sorted.end());
      ok = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    if (ok) {
      std::vector<Rational> values;
      values.reserve(digits.size());
      for (int d : digits) values.push_back(make_rational(d, k));
      out.push_back(Preference::normalized(std::move(values)));
    }
    // odometer, last candidate fastest
    int pos = m - 1;
    while (pos >= 0 && digits[pos] == k) digits[pos--] = 0;
    if (pos < 0) break;
    ++digits[pos];
  }
  return out;
}

Integer rk_count(int m, int k) {
  Integer a, b, c;
  mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(m));
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
  mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(k - 1), static_cast<unsigned long>(m));
  return a - 2 * b + c;
}

namespace {

// Dense descending rank per candidate; equal vectors <=> ordinal equivalence.
std::vector<int> weak_order_pattern(const Preference& u) {
  std::vector<int> pattern(static_cast<std::size_t>(u.m()));
  int level = 0;
  for (int r = 0; r < u.m(); ++r) {
    int c = u.order()[r];
    if (r > 0 && u.values()[c - 1] != u.values()[u.order()[r - 1] - 1]) ++level;
    pattern[c - 1] = level;
  }
  return pattern;
}

}  // namespace

bool ordinal_equivalent(const Preference& u, const Preference& v) {
  if (u.m() != v.m()) throw PreconditionError("ordinal_equivalent needs equal m");
  return weak_order_pattern(u) == weak_order_pattern(v);
}

bool ordinal_equivalent(const Profile& u, const Profile& v) {
  if (u.n() != v.n() || u.m() != v.m()) return false;
  for (int i = 0; i < u.n(); ++i)
    if (!ordinal_equivalent(u.prefs()[i], v.prefs()[i])) return false;
  return true;
}

GridProfiles::GridProfiles(const Grid& grid)
    : grid_(grid), prefs_(enumerate_Rk_prefs(grid.m, grid.k, grid.tie_free)) {
  if (grid.n < 1) throw PreconditionError("need n >= 1");
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), prefs_.size(), static_cast<unsigned long>(grid.n));
  if (total > Integer("1000000000000")) throw BudgetError("grid has " + total.get_str() + " profiles");
  size_ = total.get_ui();
}

std::vector<std::size_t> GridProfiles::digits(std::uint64_t index) const {
  std::vector<std::size_t> d(static_cast<std::size_t>(grid_.n));
  for (int i = grid_.n - 1; i >= 0; --i) {
    d[i] = index % prefs_.size();
    index /= prefs_.size();
  }
  return d;
}

std::uint64_t GridProfiles::index_of(std::span<const std::size_t> digits) const {
  std::uint64_t index = 0;
  for (auto d : digits) index = index * prefs_.size() + d;
  return index;
}

Profile GridProfiles::from_digits(std::span<const std::size_t> digits) const {
  std::vector<Preference> prefs;
  prefs.reserve(digits.size());
  for (auto d : digits) prefs.push_back(prefs_[d]);
  return Profile(std::move(prefs));
}

Profile GridProfiles::at(std::uint64_t index) const { return from_digits(digits(index)); }

Rational expected_utility(const Preference& u, const CandidateDistribution& dist) {
  Rational eu = 0;
  for (int j = 0; j < u.m(); ++j)
    if (dist.probs()[j] != 0) eu += dist.probs()[j] * u.values()[j];
  return eu;
}

namespace {

using Found = std::optional<std::pair<std::uint64_t, Witness>>;

// Runs `search(begin, end)` over contiguous slices of [0, size) and keeps the
// hit from the earliest slice, which is the lexicographically first witness.
template <class Search>
Found search_partitions(std::uint64_t size, int threads, Search search) {
  std::uint64_t parts = static_cast<std::uint64_t>(std::max(1, threads));
  parts = std::min<std::uint64_t>(parts, std::max<std::uint64_t>(size, 1));
  if (parts == 1) return search(0, size);

  std::vector<Found> results(parts);
  std::vector<std::exception_ptr> errors(parts);
  {
    std::vector<std::jthread> workers;
    for (std::uint64_t p = 0; p < parts; ++p) {
      workers.emplace_back([&, p] {
        try {
          results[p] = search(size * p / parts, size * (p + 1) / parts);
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& r : results)
    if (r) return r;
  return std::nullopt;
}

std::vector<CandidateDistribution> evaluate_all(const Mechanism& mech, const GridProfiles& space, int threads) {
  std::uint64_t size = space.size();
  std::uint64_t parts = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(1, threads)), std::max<std::uint64_t>(size, 1));
  std::vector<std::vector<CandidateDistribution>> chunks(parts);
  std::vector<std::exception_ptr> errors(parts);
  auto work = [&](std::uint64_t p) {
    try {
      for (std::uint64_t i = size * p / parts; i < size * (p + 1) / parts; ++i)
        chunks[p].push_back(mech.evaluate(space.at(i)));
    } catch (...) {
      errors[p] = std::current_exception();
    }
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    for (std::uint64_t p = 0; p < parts; ++p) workers.emplace_back(work, p);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CandidateDistribution> all;
  all.reserve(size);
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(all));
  return all;
}

void check_budget(const GridProfiles& space, std::uint64_t per_profile, const CheckOptions& options) {
  if (per_profile != 0 && space.size() > options.budget / per_profile)
    throw BudgetError("search of " + std::to_string(space.size()) + " profiles x " + std::to_string(per_profile) +
                      " exceeds budget " + std::to_string(options.budget));
}

std::uint64_t factorial(int x) {
  std::uint64_t f = 1;
  for (int i = 2; i <= x; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

WitnessReport finish(std::string property, const Mechanism& mech, const GridProfiles& space, Found found) {
  WitnessReport report;
  report.property = std::move(property);
  report.mechanism = mech.name();
  report.grid = space.grid();
  if (found) {
    report.verdict = Verdict::violated;
    report.profiles_checked = found->first + 1;
    report.witness = std::move(found->second);
  } else {
    report.profiles_checked = space.size();
  }
  return report;
}

std::size_t pref_index(const std::map<Preference, std::size_t>& lookup, const Preference& p) {
  auto it = lookup.find(p);
  if (it == lookup.end()) throw PreconditionError("preference outside the enumerated grid");
  return it->second;
}

std::map<Preference, std::size_t> make_lookup(const GridProfiles& space) {
  std::map<Preference, std::size_t> lookup;
  for (std::size_t i = 0; i < space.prefs().size(); ++i) lookup.emplace(space.prefs()[i], i);
  return lookup;
}

CandidateDistribution relabel(const CandidateDistribution& d, std::span<const int> perm) {
  // candidate j of the relabelled profile is original perm[j-1]
  std::vector<Rational> out(d.probs().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = d.probs()[perm[j] - 1];
  return CandidateDistribution(std::move(out));
}

Preference compose(const Preference& u, std::span<const int> perm) {
  std::vector<Rational> vals(static_cast<std::size_t>(u.m()));
  for (int j = 0; j < u.m(); ++j) vals[j] = u.values()[perm[j] - 1];
  return Preference::relaxed(std::move(vals));
}

}  // namespace

WitnessReport check_truthful(const Mechanism& mech, const Grid& grid, const CheckOptions& options) {
  GridProfiles space(grid);
  const std::uint64_t choices = space.prefs().size();
  check_budget(space, static_cast<std::uint64_t>(grid.n) * choices, options);
  auto dists = evaluate_all(mech, space, options.threads);

  auto search = [&](std::uint64_t begin, std::uint64_t end) -> Found {
    for (std::uint64_t index = begin; index < end; ++index) {
      auto digits = space.digits(index);
      for (int i = 0; i < grid.n; ++i) {
        const Preference& honest = space.prefs()[digits[i]];
        Rational honest_eu = expected_utility(honest, dists[index]);
        auto lie = digits;
        for (std::size_t t = 0; t < choices; ++t) {
          if (t == digits[i]) continue;
          lie[i] = t;
          Rational lie_eu = expected_utility(honest, dists[space.index_of(lie)]);
          if (lie_eu > honest_eu) {
            return std::make_pair(index, Witness(TruthfulnessWitness{space.from_digits(digits), i + 1,
                                                                     space.prefs()[t], honest_eu, lie_eu,
                                                                     lie_eu - honest_eu}));
          }
        }
      }
    }
    return std::nullopt;
  };
  return finish("truthful", mech, space, search_partitions(space.size(), options.threads, search));
}

WitnessReport check_ordinal(const Mechanism& mech, const Grid& grid, const CheckOptions& options) {
  GridProfiles space(grid);
  check_budget(space, 1, options);
  auto dists = evaluate_all(mech, space, options.threads);

  // Each preference maps to the first grid preference with the same weak
  // order; every profile is compared against its class representative.
  std::map<std::vector<int>, std::size_t> first_with_pattern;
  std::vector<std::size_t> representative(space.prefs().size());
  for (std::size_t p = 0; p < space.prefs().size(); ++p)
    representative[p] = first_with_pattern.emplace(weak_order_pattern(space.prefs()[p]), p).first->second;

  auto search = [&](std::uint64_t begin, std::uint64_t end) -> Found {
    for (std::uint64_t index = begin; index < end; ++index) {
      auto digits = space.digits(index);
      auto rep = digits;
      for (auto& d : rep) d = representative[d];
      std::uint64_t rep_index = space.index_of(rep);
      if (!(dists[rep_index] == dists[index])) {
        return std::make_pair(index, Witness(OrdinalWitness{space.from_digits(rep), space.from_digits(digits),
                                                            dists[rep_index], dists[index]}));
      }
    }
    return std::nullopt;
  };
  return finish("ordinal", mech, space, search_partitions(space.size(), options.threads, search));
}

WitnessReport check_neutral(const Mechanism& mech, const Grid& grid, const CheckOptions& options) {
  GridProfiles space(grid);
  check_budget(space, factorial(grid.m), options);
  auto dists = evaluate_all(mech, space, options.threads);
  auto lookup = make_lookup(space);

  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(grid.m));
  std::iota(perm.begin(), perm.end(), 1);
  while (std::next_permutation(perm.begin(), perm.end())) perms.push_back(perm);
  // permuted_pref[s][p]: grid index of prefs[p] composed with perms[s]
  std::vector<std::vector<std::size_t>> permuted_pref(perms.size());
  for (std::size_t s = 0; s < perms.size(); ++s)
    for (const auto& p : space.prefs()) permuted_pref[s].push_back(pref_index(lookup, compose(p, perms[s])));

  auto search = [&](std::uint64_t begin, std::uint64_t end) -> Found {
    for (std::uint64_t index = begin; index < end; ++index) {
      auto digits = space.digits(index);
      for (std::size_t s = 0; s < perms.size(); ++s) {
        auto moved = digits;
        for (auto& d : moved) d = permuted_pref[s][d];
        const auto& actual = dists[space.index_of(moved)];
        auto expected = relabel(dists[index], perms[s]);
        if (!(actual == expected))
          return std::make_pair(index, Witness(NeutralityWitness{space.from_digits(digits), perms[s], expected, actual}));
      }
    }
    return std::nullopt;
  };
  return finish("neutral", mech, space, search_partitions(space.size(), options.threads, search));
}

WitnessReport check_anonymous(const Mechanism& mech, const Grid& grid, const CheckOptions& options) {
  GridProfiles space(grid);
  check_budget(space, factorial(grid.n), options);
  auto dists = evaluate_all(mech, space, options.threads);

  std::vector<std::vector<int>> orders;
  std::vector<int> order(static_cast<std::size_t>(grid.n));
  std::iota(order.begin(), order.end(), 1);
  while (std::next_permutation(order.begin(), order.end())) orders.push_back(order);

  auto search = [&](std::uint64_t begin, std::uint64_t end) -> Found {
    for (std::uint64_t index = begin; index < end; ++index) {
      auto digits = space.digits(index);
      for (const auto& o : orders) {
        std::vector<std::size_t> moved(digits.size());
        for (std::size_t r = 0; r < moved.size(); ++r) moved[r] = digits[o[r] - 1];
        const auto& permuted = dists[space.index_of(moved)];
        if (!(permuted == dists[index]))
          return std::make_pair(index,
                                Witness(AnonymityWitness{space.from_digits(digits), o, dists[index], permuted}));
      }
    }
    return std::nullopt;
  };
  return finish("anonymous", mech, space, search_partitions(space.size(), options.threads, search));
}

bool replay(const Mechanism& mech, const WitnessReport& report) {
  if (report.holds()) return !report.witness.has_value();
  if (!report.witness) return false;
  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, TruthfulnessWitness>) {
          const Preference& honest = w.profile.voter(w.voter);
          std::vector<Preference> lie(w.profile.prefs().begin(), w.profile.prefs().end());
          lie[w.voter - 1] = w.misreport;
          Rational honest_eu = expected_utility(honest, mech.evaluate(w.profile));
          Rational lie_eu = expected_utility(honest, mech.evaluate(Profile(std::move(lie))));
          return honest_eu == w.honest_utility && lie_eu == w.misreport_utility && lie_eu - honest_eu == w.gain &&
                 w.gain > 0;
        } else if constexpr (std::is_same_v<W, OrdinalWitness>) {
          auto a = mech.evaluate(w.first), b = mech.evaluate(w.second);
          return ordinal_equivalent(w.first, w.second) && a == w.first_dist && b == w.second_dist && !(a == b);
        } else if constexpr (std::is_same_v<W, NeutralityWitness>) {
          std::vector<Preference> moved;
          for (const auto& p : w.profile.prefs()) moved.push_back(compose(p, w.permutation));
          auto expected = relabel(mech.evaluate(w.profile), w.permutation);
          auto actual = mech.evaluate(Profile(std::move(moved)));
          return expected == w.expected && actual == w.actual && !(expected == actual);
        } else {
          std::vector<Preference> moved;
          for (int r : w.voter_order) moved.push_back(w.profile.voter(r));
          auto original = mech.evaluate(w.profile);
          auto permuted = mech.evaluate(Profile(std::move(moved)));
          return original == w.original && permuted == w.permuted && !(original == permuted);
        }
      },
      *report.witness);
}

}  // namespace cardvote
