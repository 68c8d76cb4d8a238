#include "mgl/sequence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include "mgl/group_spec.hpp"
#include "mgl/parallel.hpp"

namespace mgl {

struct GroupSequence::State {
  std::function<MarkedGroup(int)> fn;
  std::optional<MarkedGroup> limit;
  std::optional<int> count;  // explicit member list size
  Caps caps;
  mutable std::mutex mu;
  mutable std::map<int, MarkedGroup> members;
};

GroupSequence GroupSequence::from_json(const nlohmann::json& doc, const Caps& caps) {
  if (!doc.is_object()) throw SpecError("sequence spec must be a JSON object");
  auto state = std::make_shared<State>();
  state->caps = caps;
  if (doc.contains("limit")) {
    state->limit = make_marked(doc.at("limit"), caps);
  }
  if (doc.contains("template") == doc.contains("members")) {
    throw SpecError("sequence spec needs exactly one of \"template\" or \"members\"");
  }
  if (doc.contains("template")) {
    nlohmann::json tpl = doc.at("template");
    state->fn = [tpl, caps](int r) {
      return make_marked(instantiate_template(tpl, r), caps);
    };
  } else {
    nlohmann::json members = doc.at("members");
    if (!members.is_array() || members.empty()) {
      throw SpecError("sequence \"members\" must be a nonempty array");
    }
    state->count = static_cast<int>(members.size());
    state->fn = [members, caps](int r) {
      if (r > static_cast<int>(members.size())) {
        throw Error("sequence member " + std::to_string(r) + " past the end (" +
                    std::to_string(members.size()) + " members)");
      }
      return make_marked(members.at(r - 1), caps);
    };
  }
  return GroupSequence(std::move(state));
}

GroupSequence GroupSequence::from_function(std::function<MarkedGroup(int)> fn,
                                           std::optional<MarkedGroup> limit,
                                           const Caps& caps) {
  auto state = std::make_shared<State>();
  state->fn = std::move(fn);
  state->limit = std::move(limit);
  state->caps = caps;
  return GroupSequence(std::move(state));
}

MarkedGroup GroupSequence::member(int r) const {
  if (r < 1) throw Error("sequence index starts at 1, got " + std::to_string(r));
  std::lock_guard<std::mutex> lock(state_->mu);
  auto it = state_->members.find(r);
  if (it != state_->members.end()) return it->second;
  MarkedGroup g = state_->fn(r);
  int expected = state_->limit ? state_->limit->rank()
                 : state_->members.empty() ? g.rank()
                                           : state_->members.begin()->second.rank();
  if (g.rank() != expected) {
    throw SpecError("sequence member " + std::to_string(r) + " has rank " +
                    std::to_string(g.rank()) + ", expected " +
                    std::to_string(expected));
  }
  state_->members.emplace(r, g);
  return g;
}

const std::optional<MarkedGroup>& GroupSequence::limit() const { return state_->limit; }
std::optional<int> GroupSequence::member_count() const { return state_->count; }
const Caps& GroupSequence::caps() const { return state_->caps; }

namespace {

const MarkedGroup& require_limit(const GroupSequence& seq) {
  if (!seq.limit()) throw SpecError("sequence has no designated limit");
  return *seq.limit();
}

// Least r such that sample r',...,r_max all hold; nullopt when the last
// sample fails.
std::optional<int> onset(const std::vector<std::pair<int, bool>>& samples) {
  std::optional<int> r_bar;
  for (const auto& [r, ok] : samples) {
    if (!ok) {
      r_bar = std::nullopt;
    } else if (!r_bar) {
      r_bar = r;
    }
  }
  return r_bar;
}

nlohmann::json samples_json(const std::vector<std::pair<int, bool>>& samples,
                            const char* field) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [r, v] : samples) arr.push_back({{"r", r}, {field, v}});
  return arr;
}

}  // namespace

nlohmann::json MembershipReport::json() const {
  nlohmann::json doc{{"word", word},
                     {"in_limit", in_limit},
                     {"r_max", r_max},
                     {"settled", settled()},
                     {"samples", samples_json(samples, "in_member")}};
  doc["r_bar"] = r_bar ? nlohmann::json(*r_bar) : nlohmann::json();
  return doc;
}

nlohmann::json MatchingReport::json() const {
  nlohmann::json doc{{"radius", radius},
                     {"r_max", r_max},
                     {"settled", settled()},
                     {"samples", samples_json(samples, "isomorphic")}};
  doc["r_bar"] = r_bar ? nlohmann::json(*r_bar) : nlohmann::json();
  return doc;
}

nlohmann::json ConvergenceReport::json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [r, v] : table) {
    rows.push_back({{"r", r}, {"exact", v.exact}, {"nu", v.value}});
  }
  return {{"cap", cap}, {"r_max", r_max}, {"table", rows}, {"consistent", consistent}};
}

MembershipReport eventual_membership(const GroupSequence& seq, const FreeWord& w,
                                     int r_max, int workers) {
  const MarkedGroup& limit = require_limit(seq);
  if (r_max < 1) throw Error("r_max must be at least 1");
  if (std::optional<int> count = seq.member_count()) r_max = std::min(r_max, *count);
  MembershipReport report;
  report.word = w.str();
  report.in_limit = limit.contains(w);
  report.r_max = r_max;
  // int, not bool: parallel_map writes results[i] concurrently and
  // std::vector<bool> packs adjacent indices into one byte.
  std::vector<int> in = parallel_map(r_max, workers, [&](std::size_t i) -> int {
    return seq.member(static_cast<int>(i) + 1).contains(w) ? 1 : 0;
  });
  std::vector<std::pair<int, bool>> agree;
  for (int r = 1; r <= r_max; ++r) {
    report.samples.emplace_back(r, in[r - 1] != 0);
    agree.emplace_back(r, (in[r - 1] != 0) == report.in_limit);
  }
  report.r_bar = onset(agree);
  return report;
}

MatchingReport matching_radius(const GroupSequence& seq, int radius, int r_max,
                               int workers, const BallCache* cache) {
  const MarkedGroup& limit = require_limit(seq);
  if (r_max < 1) throw Error("r_max must be at least 1");
  if (std::optional<int> count = seq.member_count()) r_max = std::min(r_max, *count);
  if (radius < 0) throw Error("ball radius must be nonnegative");
  MatchingReport report;
  report.radius = radius;
  report.r_max = r_max;
  BallCode limit_code =
      canonical_code(build_ball_cached(limit, radius, cache, seq.caps()));
  std::vector<int> iso = parallel_map(r_max, workers, [&](std::size_t i) -> int {
    LabeledBall b =
        build_ball_cached(seq.member(static_cast<int>(i) + 1), radius, cache, seq.caps());
    return canonical_code(b) == limit_code ? 1 : 0;
  });
  for (int r = 1; r <= r_max; ++r) report.samples.emplace_back(r, iso[r - 1] != 0);
  report.r_bar = onset(report.samples);
  return report;
}

ConvergenceReport verify_convergence(const GroupSequence& seq, int cap, int r_max,
                                     int workers) {
  const MarkedGroup& limit = require_limit(seq);
  if (r_max < 1) throw Error("r_max must be at least 1");
  if (std::optional<int> count = seq.member_count()) r_max = std::min(r_max, *count);
  ConvergenceReport report;
  report.cap = cap;
  report.r_max = r_max;
  std::vector<NuResult> nus = parallel_map(r_max, workers, [&](std::size_t i) {
    return nu(limit, seq.member(static_cast<int>(i) + 1), cap, seq.caps());
  });
  std::vector<std::pair<int, bool>> reached;
  for (int r = 1; r <= r_max; ++r) {
    report.table.emplace_back(r, nus[r - 1]);
    reached.emplace_back(r, nus[r - 1].lower() >= cap);
  }
  report.consistent = onset(reached).has_value();
  return report;
}

}  // namespace mgl
