#pragma once

#include <span>
#include <vector>

#include "cardvote/rational.hpp"

// Candidates and voters are numbered from 1 in every public signature. Raw
// spans returned by `values()` / `probs()` are ordinary 0-based containers.
namespace cardvote {

/// One voter's cardinal utilities over m >= 2 candidates, every value in [0, 1].
///
/// `normalized()` enforces min = 0 and max = 1; `relaxed()` only enforces the
/// [0, 1] range and exists for experiments on unnormalized inputs. The strict
/// order (value descending, candidate index ascending) is computed once at
/// construction since every ordinal mechanism reads it.
class Preference {
 public:
  static Preference normalized(std::vector<Rational> values);
  static Preference relaxed(std::vector<Rational> values);

  int m() const { return static_cast<int>(values_.size()); }
  std::span<const Rational> values() const& { return values_; }
  // Owned copies on temporaries, so `for (x : make().values())` cannot dangle.
  std::vector<Rational> values() && { return std::move(values_); }
  const Rational& value(int candidate) const;

  bool is_normalized() const;
  bool is_tie_free() const;

  /// Candidates from most to least preferred, ties broken by lower index.
  std::span<const int> order() const& { return order_; }
  std::vector<int> order() && { return std::move(order_); }
  /// 1-based position of `candidate` in order().
  int position(int candidate) const;
  /// True iff this voter ranks a above b under the strict order.
  bool prefers(int a, int b) const { return position_[a - 1] < position_[b - 1]; }

  friend bool operator==(const Preference& a, const Preference& b) { return a.values_ == b.values_; }
  /// Lexicographic on values by candidate index.
  friend bool operator<(const Preference& a, const Preference& b);

 private:
  explicit Preference(std::vector<Rational> values);

  std::vector<Rational> values_;
  std::vector<int> order_;
  std::vector<int> position_;
};

/// Affine rescaling of arbitrary scores onto [0, 1] hitting both ends.
Preference normalize(std::span<const Rational> raw);

class Profile {
 public:
  explicit Profile(std::vector<Preference> prefs);

  int m() const { return m_; }
  int n() const { return static_cast<int>(prefs_.size()); }
  std::span<const Preference> prefs() const& { return prefs_; }
  std::vector<Preference> prefs() && { return std::move(prefs_); }
  const Preference& voter(int i) const;

  bool is_normalized() const;
  bool is_tie_free() const;

  /// Voter list of `a` followed by `b`; both must share m.
  friend Profile concat(const Profile& a, const Profile& b);
  friend bool operator==(const Profile& a, const Profile& b) { return a.prefs_ == b.prefs_; }
  friend bool operator<(const Profile& a, const Profile& b);

 private:
  std::vector<Preference> prefs_;
  int m_;
};

/// Exact lottery over candidates: entries >= 0 summing to exactly 1.
class CandidateDistribution {
 public:
  explicit CandidateDistribution(std::vector<Rational> probs);
  static CandidateDistribution point(int m, int candidate);

  int m() const { return static_cast<int>(probs_.size()); }
  std::span<const Rational> probs() const& { return probs_; }
  std::vector<Rational> probs() && { return std::move(probs_); }
  const Rational& prob(int candidate) const;

  friend bool operator==(const CandidateDistribution& a, const CandidateDistribution& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<Rational> probs_;
};

/// Wel(j, u): total utility of candidate j.
Rational welfare(const Profile& u, int candidate);
/// Welfare of every candidate, 0-based.
std::vector<Rational> welfares(const Profile& u);

/// Range-voting winner: lowest-index argmax of welfare.
int rv_winner(const Profile& u);
int rv_winner(std::span<const Rational> welfare_vector);

/// Expected welfare of `dist` divided by the range-voting welfare.
/// Throws UndefinedRatioError when the range-voting welfare is zero.
Rational ratio(const CandidateDistribution& dist, const Profile& u);
Rational ratio(const CandidateDistribution& dist, std::span<const Rational> welfare_vector);

/// |{j' : u(j') >= u(j)}|; requires a tie-free preference.
int rank(const Preference& u, int candidate);

/// The q most preferred candidates, name tie-break, in preference order.
std::vector<int> top_q_set(const Preference& u, int q);

struct WelfareReport {
  std::vector<Rational> welfares;
  int rv_winner;
  Rational rv_welfare;
  Rational expected_welfare;
  Rational ratio;
};

WelfareReport welfare_report(const CandidateDistribution& dist, const Profile& u);

}  // namespace cardvote
