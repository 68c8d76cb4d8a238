#ifndef MGL_VERBAL_HPP_
#define MGL_VERBAL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgl/marked.hpp"
#include "mgl/sequence.hpp"

namespace mgl {

// A word w in F_arity, viewed as the evaluation map
// (g_1, ..., g_arity) -> w(g_1, ..., g_arity).
struct WordMap {
  FreeWord w;

  int arity() const { return w.rank(); }
  std::string str() const { return w.str(); }
};

WordMap make_word_map(const FreeWord& w);
// Accepts the word grammar; arity = highest generator index mentioned.
WordMap make_word_map(const std::string& text);

struct ValueSet {
  std::vector<ElementKey> keys;  // sorted, deduplicated
  bool exhaustive = false;       // full w{G} vs observed lower bound

  long long size() const { return static_cast<long long>(keys.size()); }
};

// Exact w{G} over all |G|^arity argument tuples. Requires a finite group;
// throws CapExceeded when the tuple count passes caps.max_evaluations.
ValueSet w_values(const MarkedGroup& g, const WordMap& w, const Caps& caps = {});

// Lower bound on w{G}: arguments drawn from the ball of the given radius,
// exhaustively when the tuple count fits the budget, else `budget` seeded
// random tuples. Never marked exhaustive.
ValueSet w_values_sampled(const MarkedGroup& g, const WordMap& w, long long budget,
                          int radius, std::uint64_t seed = 0, const Caps& caps = {});

// Least subset of a finite G containing the seeds and closed under product
// and inverse. Keys must name elements of G.
std::vector<ElementKey> subgroup_closure(const MarkedGroup& g,
                                         const std::vector<ElementKey>& seeds);

// BFS subgroup closure by word arithmetic, valid in infinite groups: stops
// exploring any element whose norm exceeds radius_bound and flags the
// escape. Keys require the group to admit element keys.
struct BallClosure {
  std::vector<ElementKey> keys;
  std::vector<FreeWord> reps;
  bool escaped = false;
};
BallClosure closure_in_ball(const MarkedGroup& g, const std::vector<FreeWord>& seeds,
                            int radius_bound, const Caps& caps = {});

struct ConcisenessRecord {
  std::string group;
  long long m = 0;             // |w{G}|
  long long verbal_order = 0;  // |G_w|
  std::vector<ElementKey> values;
  bool exhaustive = true;

  nlohmann::json json() const;
};

ConcisenessRecord conciseness_record(const MarkedGroup& g, const WordMap& w,
                                     const Caps& caps = {});

struct DeltaProfile {
  std::string word;
  std::string family;
  std::vector<ConcisenessRecord> records;
  std::vector<std::string> errors;       // per-member failures, never fatal
  std::map<long long, long long> delta;  // m -> max observed |G_w|

  nlohmann::json json() const;
  std::string table() const;
};

DeltaProfile delta_profile(const std::vector<MarkedGroup>& family, const WordMap& w,
                           const std::string& family_id = "", int workers = 1,
                           const Caps& caps = {});

// Search for a finite F with w{F} = w{G}: arguments restricted to balls of
// increasing radius. stabilized = no new values for `stable_window`
// consecutive radii (a heuristic certificate, exact only when the ball
// stopped growing, i.e. exhausted a finite group).
struct SupportReport {
  std::string word;
  std::vector<int> radii;
  std::vector<long long> value_counts;  // per radius
  std::vector<FreeWord> support;        // ball representatives at the last radius
  std::vector<ElementKey> values;       // value keys at the last radius
  std::vector<FreeWord> value_words;    // matching representatives
  bool stabilized = false;
  bool exhausted_group = false;

  nlohmann::json json() const;
};

SupportReport finite_support(const MarkedGroup& g, const WordMap& w,
                             const std::vector<int>& schedule, int stable_window = 2,
                             const Caps& caps = {});

struct TheoremAOptions {
  int r_max = 10;
  std::vector<int> support_schedule;  // default 1..6
  int stable_window = 2;
  int workers = 1;
};

// Replays the bounded-conciseness argument on a convergent sequence of
// finite groups, step by step:
//   (a) stabilize the limit's value set inside a ball B(R)
//   (b) find r_bar with member R-balls isomorphic to the limit's
//   (c) |w{G_r}| equals the limit's value count for sampled r >= r_bar
//   (d) delta = max |(G_r)_w| over those members
//   (e) enlarge R to cover every (G_r)_w; the limit's closure inside that
//       ball must reach the same order
// Verdicts: "pass", "fail" (a step's assertion is violated),
// "inconclusive" (a cap or search limit got in the way; never a false
// pass), "hypothesis not met" (step (a) does not stabilize).
struct TheoremAReport {
  std::string word;
  std::string verdict;
  std::string detail;

  bool stabilized = false;
  int R = 0;
  std::vector<ElementKey> limit_values;

  std::optional<int> r_bar;
  int r_max = 0;

  std::vector<std::pair<int, long long>> member_m;       // r -> |w{G_r}|
  std::vector<std::pair<int, long long>> member_verbal;  // r -> |(G_r)_w|
  long long delta = 0;

  int R_final = 0;
  long long limit_verbal_order = 0;

  long long m() const { return static_cast<long long>(limit_values.size()); }
  nlohmann::json json() const;
};

TheoremAReport theorem_a_check(const GroupSequence& seq, const WordMap& w,
                               const TheoremAOptions& opts = {});

}  // namespace mgl

#endif  // MGL_VERBAL_HPP_
