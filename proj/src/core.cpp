#include "cardvote/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cardvote/errors.hpp"

namespace cardvote {

namespace {

void check_candidate(int candidate, int m) {
  if (candidate < 1 || candidate > m)
    throw IndexError("candidate " + std::to_string(candidate) + " outside 1.." + std::to_string(m));
}

}  // namespace

Preference::Preference(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw PreconditionError("a preference needs at least 2 candidates");
  for (const auto& v : values_)
    if (v < 0 || v > 1) throw NormalizationError("utility " + to_string(v) + " outside [0, 1]");

  order_.resize(values_.size());
  std::iota(order_.begin(), order_.end(), 1);
  std::stable_sort(order_.begin(), order_.end(),
                   [this](int a, int b) { return values_[a - 1] > values_[b - 1]; });
  position_.resize(values_.size());
  for (std::size_t r = 0; r < order_.size(); ++r) position_[order_[r] - 1] = static_cast<int>(r) + 1;
}

Preference Preference::normalized(std::vector<Rational> values) {
  Preference p(std::move(values));
  if (!p.is_normalized()) throw NormalizationError("preference must have minimum 0 and maximum 1");
  return p;
}

Preference Preference::relaxed(std::vector<Rational> values) { return Preference(std::move(values)); }

const Rational& Preference::value(int candidate) const {
  check_candidate(candidate, m());
  return values_[candidate - 1];
}

bool Preference::is_normalized() const {
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return *lo == 0 && *hi == 1;
}

bool Preference::is_tie_free() const {
  for (std::size_t r = 1; r < order_.size(); ++r)
    if (values_[order_[r] - 1] == values_[order_[r - 1] - 1]) return false;
  return true;
}

int Preference::position(int candidate) const {
  check_candidate(candidate, m());
  return position_[candidate - 1];
}

bool operator<(const Preference& a, const Preference& b) {
  return std::lexicographical_compare(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end());
}

Preference normalize(std::span<const Rational> raw) {
  if (raw.size() < 2) throw PreconditionError("normalize needs at least 2 values");
  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  if (*lo == *hi) throw NormalizationError("constant scores cannot be normalized");
  Rational low = *lo, span = *hi - *lo;
  std::vector<Rational> out;
  out.reserve(raw.size());
  for (const auto& x : raw) out.push_back((x - low) / span);
  return Preference::normalized(std::move(out));
}

Profile::Profile(std::vector<Preference> prefs) : prefs_(std::move(prefs)) {
  if (prefs_.empty()) throw PreconditionError("a profile needs at least one voter");
  m_ = prefs_.front().m();
  for (const auto& p : prefs_)
    if (p.m() != m_) throw PreconditionError("all voters must rank the same number of candidates");
}

const Preference& Profile::voter(int i) const {
  if (i < 1 || i > n()) throw IndexError("voter " + std::to_string(i) + " outside 1.." + std::to_string(n()));
  return prefs_[i - 1];
}

bool Profile::is_normalized() const {
  return std::all_of(prefs_.begin(), prefs_.end(), [](const Preference& p) { return p.is_normalized(); });
}

bool Profile::is_tie_free() const {
  return std::all_of(prefs_.begin(), prefs_.end(), [](const Preference& p) { return p.is_tie_free(); });
}

Profile concat(const Profile& a, const Profile& b) {
  std::vector<Preference> all(a.prefs_);
  all.insert(all.end(), b.prefs_.begin(), b.prefs_.end());
  return Profile(std::move(all));
}

bool operator<(const Profile& a, const Profile& b) {
  return std::lexicographical_compare(a.prefs_.begin(), a.prefs_.end(), b.prefs_.begin(), b.prefs_.end());
}

CandidateDistribution::CandidateDistribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw PreconditionError("empty distribution");
  Rational total = 0;
  for (const auto& p : probs_) {
    if (p < 0) throw PreconditionError("negative probability " + to_string(p));
    total += p;
  }
  if (total != 1) throw PreconditionError("probabilities sum to " + to_string(total) + ", not 1");
}

CandidateDistribution CandidateDistribution::point(int m, int candidate) {
  check_candidate(candidate, m);
  std::vector<Rational> probs(static_cast<std::size_t>(m), Rational(0));
  probs[candidate - 1] = 1;
  return CandidateDistribution(std::move(probs));
}

const Rational& CandidateDistribution::prob(int candidate) const {
  check_candidate(candidate, m());
  return probs_[candidate - 1];
}

Rational welfare(const Profile& u, int candidate) {
  check_candidate(candidate, u.m());
  Rational total = 0;
  for (const auto& p : u.prefs()) total += p.values()[candidate - 1];
  return total;
}

std::vector<Rational> welfares(const Profile& u) {
  std::vector<Rational> w(static_cast<std::size_t>(u.m()), Rational(0));
  for (const auto& p : u.prefs())
    for (int j = 0; j < u.m(); ++j) w[j] += p.values()[j];
  return w;
}

int rv_winner(std::span<const Rational> welfare_vector) {
  // max_element keeps the first maximum
  return static_cast<int>(std::max_element(welfare_vector.begin(), welfare_vector.end()) - welfare_vector.begin()) + 1;
}

int rv_winner(const Profile& u) { return rv_winner(welfares(u)); }

Rational ratio(const CandidateDistribution& dist, std::span<const Rational> welfare_vector) {
  if (static_cast<std::size_t>(dist.m()) != welfare_vector.size())
    throw PreconditionError("distribution and profile disagree on m");
  const Rational& best = welfare_vector[rv_winner(welfare_vector) - 1];
  if (best == 0) throw UndefinedRatioError("range-voting welfare is zero");
  Rational expected = 0;
  for (std::size_t j = 0; j < welfare_vector.size(); ++j)
    if (dist.probs()[j] != 0) expected += dist.probs()[j] * welfare_vector[j];
  return expected / best;
}

Rational ratio(const CandidateDistribution& dist, const Profile& u) { return ratio(dist, welfares(u)); }

int rank(const Preference& u, int candidate) {
  check_candidate(candidate, u.m());
  if (!u.is_tie_free()) throw PreconditionError("rank needs a tie-free preference");
  return u.position(candidate);
}

std::vector<int> top_q_set(const Preference& u, int q) {
  if (q < 1 || q > u.m())
    throw IndexError("q = " + std::to_string(q) + " outside 1.." + std::to_string(u.m()));
  return {u.order().begin(), u.order().begin() + q};
}

WelfareReport welfare_report(const CandidateDistribution& dist, const Profile& u) {
  WelfareReport r;
  r.welfares = welfares(u);
  r.rv_winner = rv_winner(r.welfares);
  r.rv_welfare = r.welfares[r.rv_winner - 1];
  r.expected_welfare = 0;
  for (int j = 0; j < u.m(); ++j) r.expected_welfare += dist.probs()[j] * r.welfares[j];
  r.ratio = ratio(dist, r.welfares);
  return r;
}

}  // namespace cardvote
