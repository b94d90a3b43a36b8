#pragma once

#include <cstdint>
#include <vector>

#include "cardvote/core.hpp"

namespace cardvote {

/// Sizes of the adversarial profile against ordinal truthful schemes.
struct NegativeConstructionParams {
  int m;
  int k;        ///< floor(m^{1/3}): largest block size
  int g_count;  ///< floor(m^{2/3}): number of blocks / block voters
  int n;        ///< m - 1 + g_count voters before repetition
  int repeat;
  /// Candidates of each block, 1-based; together {1, ..., min(k*g, m-1)}.
  std::vector<std::vector<int>> blocks;

  static NegativeConstructionParams make(int m, int repeat = 1);
};

/// Adversarial profile against every ordinal truthful scheme.
///
/// Voters 1..m-1 each put 1 on their own candidate, 0 on candidate m and
/// distinct values below 1/m^2 elsewhere. Voters m..m-1+g each value one
/// block above 1 - 1/m^2, candidate m at exactly 1 - 1/m^2, the rest below
/// 1/m^2. The whole list is repeated `repeat` times. Every preference is
/// normalized and tie-free. Requires m >= 8.
Profile gen_negative(int m, int repeat = 1);

/// Class of a voter inside a structured top-block profile.
enum class DkClass { a, b, c };

/// Explicit layout of one voter: full ranking (1-based, best first) and how
/// many leading candidates sit in the top block.
struct DkVoterShape {
  std::vector<int> ranking;
  int top_size;
};

struct DkParams {
  int m;
  int k;
  int a;
  int b;
  int c;
  /// Optional explicit layouts, one per voter; empty means draw from the seed.
  std::vector<DkVoterShape> shapes;

  int n() const { return a + b + c; }
};

/// C_k preference with the given ranking whose top block holds the first
/// `top_size` candidates: top values 1, (k-1)/k, ...; bottom values ..., 1/k, 0.
Preference block_preference(std::span<const int> ranking, int top_size, int k);

/// Profile whose first a voters fall in class (a), next b in (b), last c in
/// (c). Requires m >= 8, k >= 4m, a + c >= 1.
Profile gen_Dk(const DkParams& params, std::uint64_t seed);

/// Profile with n = m voters, voter i ranking i > i+1 > ... > m > 1 > ... > i-1.
/// Voter `star` gives its favourite exactly 1; every other value is distinct,
/// positive and below `eps`. Unnormalized by construction. Needs 0 < eps < 1/m^2.
Profile gen_cyclic(int m, int star, const Rational& eps);

/// Closest tie-free grid profile (L1 per voter) realising each voter's strict
/// order (value descending, index ascending), with 0 and 1 kept at the ends.
/// Among equally close grid points the lexicographically smallest one (by
/// candidate index) wins. Requires k >= m - 1.
Profile discretize(const Profile& u, int k);

/// Uniform draw from normalized grid preferences, optionally tie-free.
Profile sample_grid_profile(int m, int n, int k, bool tie_free, std::uint64_t seed);

}  // namespace cardvote
