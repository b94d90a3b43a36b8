#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cardvote/mechanisms.hpp"

namespace cardvote {

/// A grid preference together with the structural data the lower-bound
/// argument reads off it.
struct ClassifiedPref {
  Preference pref;
  int k = 0;
  std::vector<int> image {};      ///< grid levels present, ascending
  int switches = 0;               ///< a(u): membership changes between adjacent levels
  std::vector<int> rounded {};    ///< ū: 1 iff value > 1/2, 0-based by candidate
  int count = 0;                  ///< |{j : ū(j) = 1}|
  std::vector<int> rank {};       ///< 1-based rank per candidate (strict order)
  std::vector<int> favourites {}; ///< candidates of rank 1
  std::vector<int> runners_up {}; ///< candidates of rank 2..floor(m^{1/3}), ascending
  bool in_Rk = false;
  bool in_Ck = false;
  bool in_Da = false;
  bool in_Db = false;
  bool in_Dc = false;

  bool in_Dk() const { return in_Da || in_Db || in_Dc; }
};

/// Requires k >= m and every value on the 1/k grid with 0 and 1 present
/// (GridError otherwise).
ClassifiedPref classify(const Preference& u, int k);

/// E[sum_i u_i(W)] / sum_i u_i(1) for W drawn from jstar.
Rational g_value(const Profile& u);
/// Same with every utility rounded at 1/2.
Rational gbar_value(const Profile& u);

/// One slide of an interior image block by one grid step.
struct ReductionStep {
  int voter;
  int block_low;   ///< grid level of the block's lowest value before the move
  int block_high;
  int direction;   ///< -1 towards 0, +1 towards 1
  Rational g_before;
  Rational g_after;
  /// Neither single step kept g from growing (not expected to happen).
  bool both_directions_increase;
};

struct ReductionResult {
  Profile profile;
  std::vector<ReductionStep> steps;
};

/// Slides interior blocks of every voter's image until every voter has a
/// two-block image (a(u) = 2), always moving in a direction that does not
/// increase g (towards 0 on ties). The strict order of each voter, and
/// therefore the jstar distribution, is unchanged.
ReductionResult reduce_to_Ck(const Profile& u, int k);

struct ProjectionStep {
  int voter;
  std::string rule;  ///< "1.1", "1.2", "2.1" or "2.2"
  Preference before;
  Preference after;
};

struct ProjectionResult {
  Profile profile;
  std::vector<ProjectionStep> steps;
};

/// Replaces every two-block voter outside the structured classes by one
/// inside them with the same favourite/runner-up sets, a weakly larger
/// rounded value for candidate 1 and weakly smaller rounded values elsewhere.
/// Voters already inside are untouched. Requires every voter in C_k and
/// k >= 4m. Throws DegenerateProjectionError if no voter rounds candidate 1 up.
ProjectionResult project_to_Dk(const Profile& u, int k);

/// a/(2n K) + b^2/(2n(m-1)(a+c)) + c^2 K/(2n(m-1)(a+c)), K = floor(m^{1/3}).
Rational lower_bound_formula(int a, int b, int c, int n, int m);

struct MinRatioResult {
  std::optional<Profile> profile;
  Rational ratio;
  std::uint64_t visited = 0;
};

/// Minimum exact ratio over `family`, visiting at most `budget` members.
/// Ties keep the lexicographically smaller profile.
MinRatioResult min_ratio_search(const Mechanism& mech, std::span<const Profile> family,
                                std::uint64_t budget = UINT64_MAX);

/// Visitor form for families too large to materialise: `next` fills the
/// next member and returns false when the family is exhausted.
MinRatioResult min_ratio_search(const Mechanism& mech, const std::function<bool(std::optional<Profile>&)>& next,
                                std::uint64_t budget = UINT64_MAX);

}  // namespace cardvote
