#ifndef MGL_SEQUENCE_HPP_
#define MGL_SEQUENCE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgl/cache.hpp"
#include "mgl/marked.hpp"
#include "mgl/metric.hpp"

namespace mgl {

// Sequence of n-marked groups indexed r = 1, 2, ..., with an optional
// designated limit of the same rank. Members are constructed lazily and
// memoized; cheap to copy (shared state).
class GroupSequence {
 public:
  // {"template": <GroupSpec with "$r">, "limit": <GroupSpec>} or
  // {"members": [<GroupSpec>, ...], "limit": <GroupSpec>}; "limit" optional.
  // Catalog expression strings are accepted wherever a GroupSpec is.
  static GroupSequence from_json(const nlohmann::json& doc, const Caps& caps = {});

  static GroupSequence from_function(std::function<MarkedGroup(int)> fn,
                                     std::optional<MarkedGroup> limit,
                                     const Caps& caps = {});

  // r >= 1. Throws SpecError when construction fails or ranks disagree,
  // Error past the end of an explicit member list.
  MarkedGroup member(int r) const;

  const std::optional<MarkedGroup>& limit() const;
  // Set when built from an explicit member list.
  std::optional<int> member_count() const;
  const Caps& caps() const;

 private:
  struct State;
  explicit GroupSequence(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

struct MembershipReport {
  std::string word;
  bool in_limit = false;
  // Least r with membership in every sampled N_r', r' in [r, r_max], equal
  // to the limit membership; absent when the last sample still disagrees.
  std::optional<int> r_bar;
  int r_max = 0;
  std::vector<std::pair<int, bool>> samples;  // (r, w in N_r)

  bool settled() const { return r_bar.has_value(); }
  nlohmann::json json() const;
};

struct MatchingReport {
  int radius = 0;  // ball radius R compared
  std::optional<int> r_bar;
  int r_max = 0;
  std::vector<std::pair<int, bool>> samples;  // (r, balls isomorphic)

  bool settled() const { return r_bar.has_value(); }
  nlohmann::json json() const;
};

struct ConvergenceReport {
  int cap = 0;
  int r_max = 0;
  std::vector<std::pair<int, NuResult>> table;  // r -> nu(N, N_r)
  // For every c <= cap the sampled tail reaches and keeps agreement radius
  // >= c; on a finite sample this means the final entries hold >= cap.
  bool consistent = false;

  nlohmann::json json() const;
};

// Classifies w against the limit and finds the onset of stable agreement
// across members. Requires a limit; negative findings are reports.
MembershipReport eventual_membership(const GroupSequence& seq, const FreeWord& w,
                                     int r_max, int workers = 1);

// Least r with ball(member(r'), R) isomorphic to ball(limit, R) for every
// sampled r' in [r, r_max]. Requires a limit.
MatchingReport matching_radius(const GroupSequence& seq, int radius, int r_max,
                               int workers = 1, const BallCache* cache = nullptr);

// nu(limit, member(r)) for r = 1..r_max, with the convergence verdict.
ConvergenceReport verify_convergence(const GroupSequence& seq, int cap, int r_max,
                                     int workers = 1);

}  // namespace mgl

#endif  // MGL_SEQUENCE_HPP_
