#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cardvote/mechanisms.hpp"

namespace cardvote {

/// Every normalized preference with values in {0, 1/k, ..., 1}, in
/// lexicographic order of the numerator tuple (candidate 1 most significant).
/// With `tie_free`, only injective ones; that needs k >= m - 1.
std::vector<Preference> enumerate_Rk_prefs(int m, int k, bool tie_free);

/// (k+1)^m - 2 k^m + (k-1)^m: the ties-allowed size of the enumeration above.
Integer rk_count(int m, int k);

/// u ~ v: same weak order over candidates, ties included.
bool ordinal_equivalent(const Preference& u, const Preference& v);
bool ordinal_equivalent(const Profile& u, const Profile& v);

/// Finite space searched by a checker: all n-voter profiles over the grid.
struct Grid {
  int m = 2;
  int n = 1;
  int k = 1;
  bool tie_free = false;
};

/// Profiles of a Grid indexed 0..size()-1 in lexicographic order, voter 1
/// most significant.
class GridProfiles {
 public:
  explicit GridProfiles(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const Preference> prefs() const { return prefs_; }
  std::uint64_t size() const { return size_; }
  /// Per-voter indices into prefs() for profile `index`.
  std::vector<std::size_t> digits(std::uint64_t index) const;
  std::uint64_t index_of(std::span<const std::size_t> digits) const;
  Profile at(std::uint64_t index) const;
  Profile from_digits(std::span<const std::size_t> digits) const;

 private:
  Grid grid_;
  std::vector<Preference> prefs_;
  std::uint64_t size_;
};

struct CheckOptions {
  /// Cap on mechanism evaluations (and cached distributions).
  std::uint64_t budget = 50'000'000;
  /// Contiguous lexicographic partitions searched concurrently. The reported
  /// witness is the lexicographically first one whatever this is set to.
  int threads = 1;
};

struct TruthfulnessWitness {
  Profile profile;
  int voter;
  Preference misreport;
  Rational honest_utility;
  Rational misreport_utility;
  Rational gain;
};

struct OrdinalWitness {
  Profile first;
  Profile second;
  CandidateDistribution first_dist;
  CandidateDistribution second_dist;
};

/// `permutation[j-1]` is the original candidate that candidate j of the
/// relabelled profile stands for.
struct NeutralityWitness {
  Profile profile;
  std::vector<int> permutation;
  CandidateDistribution expected;
  CandidateDistribution actual;
};

/// Voter r of the permuted profile is original voter `voter_order[r-1]`.
struct AnonymityWitness {
  Profile profile;
  std::vector<int> voter_order;
  CandidateDistribution original;
  CandidateDistribution permuted;
};

using Witness = std::variant<TruthfulnessWitness, OrdinalWitness, NeutralityWitness, AnonymityWitness>;

enum class Verdict { holds, violated };

/// Outcome of an exhaustive check. "holds" speaks only for the grid searched.
struct WitnessReport {
  std::string property;
  std::string mechanism;
  Grid grid;
  Verdict verdict = Verdict::holds;
  std::uint64_t profiles_checked = 0;
  std::optional<Witness> witness;

  bool holds() const { return verdict == Verdict::holds; }
};

/// Expected-utility truthfulness: no voter gains in expectation by reporting
/// any other grid preference.
WitnessReport check_truthful(const Mechanism& mech, const Grid& grid, const CheckOptions& options = {});
WitnessReport check_ordinal(const Mechanism& mech, const Grid& grid, const CheckOptions& options = {});
WitnessReport check_neutral(const Mechanism& mech, const Grid& grid, const CheckOptions& options = {});
WitnessReport check_anonymous(const Mechanism& mech, const Grid& grid, const CheckOptions& options = {});

/// Re-evaluates `mech` on the stored witness; true iff the exact violation
/// (gain or distribution pair) is reproduced. A "holds" report replays
/// trivially.
bool replay(const Mechanism& mech, const WitnessReport& report);

/// E[u(W)] for W drawn from `dist`.
Rational expected_utility(const Preference& u, const CandidateDistribution& dist);

}  // namespace cardvote
