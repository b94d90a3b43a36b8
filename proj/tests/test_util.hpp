#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "cardvote/core.hpp"

namespace cardvote::test {

// Values written as "p/q" strings keep the tables below readable.
inline std::vector<Rational> R(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

inline Preference P(std::initializer_list<const char*> xs) { return Preference::normalized(R(xs)); }
inline Preference Prelaxed(std::initializer_list<const char*> xs) { return Preference::relaxed(R(xs)); }

inline Profile U(std::initializer_list<std::initializer_list<const char*>> voters) {
  std::vector<Preference> prefs;
  for (auto v : voters) prefs.push_back(P(v));
  return Profile(std::move(prefs));
}

inline std::vector<Rational> probs(const CandidateDistribution& d) { return {d.probs().begin(), d.probs().end()}; }

// Small deterministic generator for property tests (splitmix64).
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }
};

// Random normalized preference on the 1/k grid (ties allowed).
inline Preference random_grid_pref(Rng& rng, int m, int k) {
  std::vector<int> levels(m);
  for (int& l : levels) l = rng.below(k + 1);
  levels[rng.below(m)] = 0;
  int top = rng.below(m);
  while (levels[top] == 0 && std::count(levels.begin(), levels.end(), 0) == 1) top = (top + 1) % m;
  levels[top] = k;
  std::vector<Rational> values;
  for (int l : levels) values.push_back(make_rational(l, k));
  return Preference::normalized(std::move(values));
}

inline Profile random_grid_profile(Rng& rng, int m, int n, int k) {
  std::vector<Preference> prefs;
  for (int i = 0; i < n; ++i) prefs.push_back(random_grid_pref(rng, m, k));
  return Profile(std::move(prefs));
}

}  // namespace cardvote::test
