#include "cardvote/mechanisms.hpp"

#include <algorithm>
#include <numeric>

#include "cardvote/errors.hpp"

namespace cardvote {

Mechanism::Mechanism(std::string name, Evaluator evaluator, MechanismTraits traits)
    : name_(std::move(name)),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      traits_(traits) {}

Rational ratio(const Mechanism& mech, const Profile& u) { return ratio(mech.evaluate(u), u); }

WelfareReport welfare_report(const Mechanism& mech, const Profile& u) {
  return welfare_report(mech.evaluate(u), u);
}

Mechanism range_voting() {
  return Mechanism("rv", [](const Profile& u) { return CandidateDistribution::point(u.m(), rv_winner(u)); });
}

namespace {

CandidateDistribution from_counts(const std::vector<long>& counts, long units) {
  std::vector<Rational> probs;
  probs.reserve(counts.size());
  for (long c : counts) probs.push_back(make_rational(c, units));
  return CandidateDistribution(std::move(probs));
}

CandidateDistribution evaluate_j1q(const Profile& u, int q) {
  if (q > u.m())
    throw IndexError("j1:" + std::to_string(q) + " needs q <= m = " + std::to_string(u.m()));
  std::vector<long> counts(static_cast<std::size_t>(u.m()), 0);
  for (const auto& p : u.prefs())
    for (int r = 0; r < q; ++r) ++counts[p.order()[r] - 1];
  return from_counts(counts, static_cast<long>(u.n()) * q);
}

CandidateDistribution evaluate_j2q(const Profile& u, int q) {
  const int m = u.m(), n = u.n();
  if (m < 2) throw IndexError("the pairwise scheme needs m >= 2");
  // Half-units: each of the m(m-1)/2 pairs hands out two halves.
  std::vector<long> halves(static_cast<std::size_t>(m), 0);
  for (int a = 1; a <= m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      int votes_a = 0;
      for (const auto& p : u.prefs())
        if (p.prefers(a, b)) ++votes_a;
      int votes_b = n - votes_a;
      bool a_meets = votes_a >= q, b_meets = votes_b >= q;
      if (a_meets && (!b_meets || votes_a > votes_b)) {
        halves[a - 1] += 2;
      } else if (b_meets && (!a_meets || votes_b > votes_a)) {
        halves[b - 1] += 2;
      } else {
        ++halves[a - 1];
        ++halves[b - 1];
      }
    }
  }
  return from_counts(halves, static_cast<long>(m) * (m - 1));
}

std::string weight_label(const Rational& w) { return to_string(w); }

bool is_composite(const std::string& name) { return name.find("mix:") != std::string::npos; }

}  // namespace

Mechanism j1q(int q) {
  if (q < 1) throw IndexError("j1 needs q >= 1");
  return Mechanism("j1:" + std::to_string(q), [q](const Profile& u) { return evaluate_j1q(u, q); },
                   {.claimed_truthful = true, .claimed_ordinal = true});
}

Mechanism j2q(int q) {
  if (q < 1) throw IndexError("j2 needs q >= 1");
  return Mechanism("j2:" + std::to_string(q), [q](const Profile& u) { return evaluate_j2q(u, q); },
                   {.claimed_truthful = true, .claimed_ordinal = true});
}

bool j2q_quota_in_range(int q, int n) { return q >= n / 2 + 1 && q <= n + 1; }

Mechanism constant(int candidate) {
  if (candidate < 1) throw IndexError("candidate must be >= 1");
  return Mechanism("const:" + std::to_string(candidate),
                   [candidate](const Profile& u) { return CandidateDistribution::point(u.m(), candidate); },
                   {.claimed_truthful = true, .claimed_ordinal = true});
}

Mechanism mix(std::vector<WeightedMechanism> parts) {
  if (parts.empty()) throw WeightError("mix needs at least one component");
  Rational total = 0;
  for (const auto& part : parts) {
    if (part.weight < 0) throw WeightError("negative mixture weight " + to_string(part.weight));
    total += part.weight;
  }
  if (total != 1) throw WeightError("mixture weights sum to " + to_string(total) + ", not 1");

  std::string name = "mix:";
  MechanismTraits traits{.claimed_truthful = true, .claimed_ordinal = true};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& inner = parts[i].mechanism.name();
    if (i > 0) name += '+';
    name += weight_label(parts[i].weight) + '*' + (is_composite(inner) ? "(" + inner + ")" : inner);
    traits.claimed_truthful = traits.claimed_truthful && parts[i].mechanism.traits().claimed_truthful;
    traits.claimed_ordinal = traits.claimed_ordinal && parts[i].mechanism.traits().claimed_ordinal;
  }

  return Mechanism(
      std::move(name),
      [parts = std::move(parts)](const Profile& u) {
        std::vector<Rational> probs(static_cast<std::size_t>(u.m()), Rational(0));
        for (const auto& part : parts) {
          if (part.weight == 0) continue;
          auto d = part.mechanism.evaluate(u);
          for (int j = 0; j < u.m(); ++j) probs[j] += part.weight * d.probs()[j];
        }
        return CandidateDistribution(std::move(probs));
      },
      traits);
}

Mechanism j_star(int m) {
  if (m < 2) throw PreconditionError("j_star needs m >= 2");
  auto q = static_cast<int>(floor_cbrt(m));
  auto inner = mix({{Rational(1, 2), j1q(1)}, {Rational(1, 2), j1q(q)}});
  return Mechanism(
      "jstar",
      [inner, m](const Profile& u) {
        if (u.m() != m)
          throw PreconditionError("jstar built for m = " + std::to_string(m) + " applied to m = " + std::to_string(u.m()));
        return inner.evaluate(u);
      },
      inner.traits());
}

Mechanism j_star() {
  return Mechanism("jstar", [](const Profile& u) { return j_star(u.m()).evaluate(u); },
                   {.claimed_truthful = true, .claimed_ordinal = true});
}

namespace {

std::uint64_t factorial_capped(int x, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int i = 2; i <= x; ++i) {
    if (f > cap / static_cast<std::uint64_t>(i)) return cap + 1;
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

}  // namespace

Mechanism symmetrize(Mechanism mech, int m, int n, std::uint64_t budget) {
  if (m < 2 || n < 1) throw PreconditionError("symmetrize needs m >= 2 and n >= 1");
  std::uint64_t voters = factorial_capped(n, budget), cands = factorial_capped(m, budget);
  if (voters > budget || cands > budget || voters > budget / cands)
    throw BudgetError("symmetrize over n! * m! relabellings exceeds budget " + std::to_string(budget));

  auto traits = mech.traits();
  std::string name = "sym:" + mech.name();
  return Mechanism(
      std::move(name),
      [mech = std::move(mech), m, n](const Profile& u) {
        if (u.m() != m || u.n() != n)
          throw PreconditionError("symmetrized mechanism defined for m = " + std::to_string(m) +
                                  ", n = " + std::to_string(n));
        std::vector<Rational> acc(static_cast<std::size_t>(m), Rational(0));
        std::vector<int> sigma(static_cast<std::size_t>(n)), tau(static_cast<std::size_t>(m));
        std::iota(sigma.begin(), sigma.end(), 0);
        long terms = 0;
        do {
          std::iota(tau.begin(), tau.end(), 0);
          do {
            // voter r reports u_{sigma(r)} composed with tau
            std::vector<Preference> prefs;
            prefs.reserve(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) {
              auto src = u.prefs()[sigma[r]].values();
              std::vector<Rational> vals(static_cast<std::size_t>(m));
              for (int j = 0; j < m; ++j) vals[j] = src[tau[j]];
              prefs.push_back(Preference::relaxed(std::move(vals)));
            }
            auto d = mech.evaluate(Profile(std::move(prefs)));
            // relabel back: candidate j of the permuted profile is tau(j)
            for (int j = 0; j < m; ++j) acc[tau[j]] += d.probs()[j];
            ++terms;
          } while (std::next_permutation(tau.begin(), tau.end()));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        for (auto& p : acc) p /= terms;
        return CandidateDistribution(std::move(acc));
      },
      traits);
}

Sampler::Sampler(const CandidateDistribution& dist, std::uint64_t seed) : rng_(gmp_randinit_mt) {
  rng_.seed(static_cast<unsigned long>(seed));
  Integer common = 1;
  for (const auto& p : dist.probs()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.get_den_mpz_t());
  Integer running = 0;
  for (const auto& p : dist.probs()) {
    running += p.get_num() * (common / p.get_den());
    cumulative_.push_back(running);
  }
  total_ = common;
}

int Sampler::draw() {
  Integer r = rng_.get_z_range(total_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  return static_cast<int>(it - cumulative_.begin()) + 1;
}

int sample(const Mechanism& mech, const Profile& u, std::uint64_t seed) {
  Sampler s(mech.evaluate(u), seed);
  return s.draw();
}

}  // namespace cardvote
