#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cardvote/core.hpp"

namespace cardvote {

/// Claims a mechanism makes about itself. Only used to pick which property
/// checks a test expects to pass; nothing is enforced from them.
struct MechanismTraits {
  bool claimed_truthful = false;
  bool claimed_ordinal = false;
};

/// A voting scheme viewed as Profile -> distribution over candidates.
/// Cheap to copy; the evaluator is shared and must be pure.
class Mechanism {
 public:
  using Evaluator = std::function<CandidateDistribution(const Profile&)>;

  Mechanism(std::string name, Evaluator evaluator, MechanismTraits traits = {});

  const std::string& name() const { return name_; }
  const MechanismTraits& traits() const { return traits_; }
  CandidateDistribution evaluate(const Profile& u) const { return (*evaluator_)(u); }
  CandidateDistribution operator()(const Profile& u) const { return evaluate(u); }

 private:
  std::string name_;
  std::shared_ptr<const Evaluator> evaluator_;
  MechanismTraits traits_;
};

inline CandidateDistribution evaluate(const Mechanism& mech, const Profile& u) { return mech.evaluate(u); }
Rational ratio(const Mechanism& mech, const Profile& u);
WelfareReport welfare_report(const Mechanism& mech, const Profile& u);

/// Deterministic welfare maximizer (lowest index on ties).
Mechanism range_voting();

/// Random voter, then a uniform pick among that voter's q favourites.
Mechanism j1q(int q);

/// Random candidate pair decided by a pairwise vote with quota q; a pair
/// where neither side reaches the quota is settled by a fair coin. A voter
/// indifferent between the pair votes for the lower-indexed candidate.
Mechanism j2q(int q);

/// True when floor(n/2) + 1 <= q <= n + 1, the range the pairwise scheme is
/// defined for. Other quotas still evaluate but reports flag them.
bool j2q_quota_in_range(int q, int n);

/// Always elects `candidate`.
Mechanism constant(int candidate);

struct WeightedMechanism {
  Rational weight;
  Mechanism mechanism;
};

/// Convex combination; weights must be non-negative and sum to exactly 1.
Mechanism mix(std::vector<WeightedMechanism> parts);

/// 1/2 * j1q(1) + 1/2 * j1q(floor(m^{1/3})) for a fixed candidate count.
Mechanism j_star(int m);
/// Same scheme, reading m from each profile it is applied to.
Mechanism j_star();

inline constexpr std::uint64_t kDefaultSymmetrizeBudget = 10'000'000;

/// Average of `mech` over every relabelling of voters and candidates. The
/// result is defined only on profiles with exactly n voters and m candidates.
/// Throws BudgetError when n! * m! exceeds `budget`.
Mechanism symmetrize(Mechanism mech, int m, int n, std::uint64_t budget = kDefaultSymmetrizeBudget);

/// Exact draws from a distribution, driven by a seeded Mersenne Twister.
class Sampler {
 public:
  Sampler(const CandidateDistribution& dist, std::uint64_t seed);
  int draw();

 private:
  std::vector<Integer> cumulative_;
  Integer total_;
  gmp_randclass rng_;
};

/// One candidate drawn from evaluate(mech, u); same seed, same answer.
int sample(const Mechanism& mech, const Profile& u, std::uint64_t seed);

}  // namespace cardvote
