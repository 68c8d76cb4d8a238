#include "mgl/verbal.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "mgl/ball.hpp"
#include "mgl/parallel.hpp"
#include "mgl/word_parse.hpp"

namespace mgl {

namespace {

// n^arity, or nullopt once the product would pass `cap`.
std::optional<long long> tuple_count(long long n, int arity, long long cap) {
  if (n == 0) return 0;
  long long total = 1;
  for (int i = 0; i < arity; ++i) {
    if (total > cap / n) return std::nullopt;
    total *= n;
  }
  return total;
}

int eval_at(const FiniteModel& model, const FreeWord& w, const std::vector<int>& args) {
  int val = 0;
  for (int l : w.letters()) {
    int a = l > 0 ? args[l - 1] : model.inv(args[-l - 1]);
    val = model.mul(val, a);
  }
  return val;
}

// Subgroup generated by the seed elements: BFS from the identity over the
// seeds and their inverses. Returns ascending model indices.
std::vector<int> closure_indices(const FiniteModel& model, const std::vector<int>& seeds) {
  std::vector<int> gens;
  for (int s : seeds) {
    gens.push_back(s);
    gens.push_back(model.inv(s));
  }
  std::vector<char> known(model.order(), 0);
  std::vector<int> queue{0};
  known[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int s : gens) {
      int v = model.mul(queue[head], s);
      if (!known[v]) {
        known[v] = 1;
        queue.push_back(v);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < model.order(); ++i) {
    if (known[i]) out.push_back(i);
  }
  return out;
}

ModelPtr require_model(const MarkedGroup& g, const char* op) {
  ModelPtr model = g.model();
  if (!model) {
    throw SpecError(std::string(op) + " requires a finite group; " + g.describe() +
                    " is not known finite");
  }
  return model;
}

}  // namespace

WordMap make_word_map(const FreeWord& w) {
  if (w.rank() < 1) throw SpecError("word map arity must be at least 1");
  return WordMap{w};
}

WordMap make_word_map(const std::string& text) {
  return make_word_map(parse_free_word(text));
}

ValueSet w_values(const MarkedGroup& g, const WordMap& w, const Caps& caps) {
  ModelPtr model = require_model(g, "w_values");
  long long order = model->order();
  auto total = tuple_count(order, w.arity(), caps.max_evaluations);
  if (!total) {
    throw CapExceeded("w_values over " + g.describe() + " needs |G|^" +
                      std::to_string(w.arity()) + " > " +
                      std::to_string(caps.max_evaluations) + " evaluations");
  }
  std::vector<int> args(w.arity(), 0);
  std::vector<char> hit(order, 0);
  while (true) {
    hit[eval_at(*model, w.w, args)] = 1;
    int pos = w.arity() - 1;
    while (pos >= 0 && ++args[pos] == order) {
      args[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  ValueSet out;
  out.exhaustive = true;
  for (int i = 0; i < order; ++i) {
    if (hit[i]) out.keys.push_back(model->key(i));
  }
  std::sort(out.keys.begin(), out.keys.end());
  return out;
}

ValueSet w_values_sampled(const MarkedGroup& g, const WordMap& w, long long budget,
                          int radius, std::uint64_t seed, const Caps& caps) {
  if (budget < 1) throw Error("sample budget must be at least 1");
  LabeledBall ball = build_ball(g, radius, caps);
  long long n = static_cast<long long>(ball.vertices.size());
  int arity = w.arity();
  std::set<ElementKey> seen;
  std::vector<FreeWord> args(arity, FreeWord(g.rank()));
  auto evaluate = [&] { seen.insert(g.element_key(w.w.substitute(args))); };

  if (auto total = tuple_count(n, arity, budget)) {
    std::vector<int> idx(arity, 0);
    while (true) {
      for (int i = 0; i < arity; ++i) args[i] = ball.vertices[idx[i]].rep;
      evaluate();
      int pos = arity - 1;
      while (pos >= 0 && ++idx[pos] == n) {
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  } else {
    Rng rng(seed);
    for (long long t = 0; t < budget; ++t) {
      for (int i = 0; i < arity; ++i) {
        args[i] = ball.vertices[rng.below(static_cast<std::uint64_t>(n))].rep;
      }
      evaluate();
    }
  }
  ValueSet out;
  out.exhaustive = false;
  out.keys.assign(seen.begin(), seen.end());
  return out;
}

std::vector<ElementKey> subgroup_closure(const MarkedGroup& g,
                                         const std::vector<ElementKey>& seeds) {
  ModelPtr model = require_model(g, "subgroup_closure");
  std::vector<int> seed_idx;
  for (const ElementKey& k : seeds) {
    auto idx = model->index_of_key(k);
    if (!idx) throw SpecError("seed key names no element of the group: " + k);
    seed_idx.push_back(*idx);
  }
  std::vector<ElementKey> out;
  for (int i : closure_indices(*model, seed_idx)) out.push_back(model->key(i));
  std::sort(out.begin(), out.end());
  return out;
}

BallClosure closure_in_ball(const MarkedGroup& g, const std::vector<FreeWord>& seeds,
                            int radius_bound, const Caps& caps) {
  std::vector<FreeWord> gens;
  std::set<ElementKey> gen_keys;
  for (const FreeWord& s : seeds) {
    for (const FreeWord& v : {s, s.inverse()}) {
      if (gen_keys.insert(g.element_key(v)).second) gens.push_back(v);
    }
  }
  BallClosure out;
  std::set<ElementKey> known;
  std::vector<FreeWord> queue{FreeWord(g.rank())};
  known.insert(g.element_key(queue[0]));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const FreeWord& s : gens) {
      FreeWord v = queue[head] * s;
      ElementKey k = g.element_key(v);
      if (known.count(k)) continue;
      known.insert(k);
      if (g.norm(v) > radius_bound) {
        out.escaped = true;
        continue;
      }
      queue.push_back(v);
      if (static_cast<long long>(queue.size()) > caps.max_group_ball) {
        throw CapExceeded("subgroup closure exceeds " +
                          std::to_string(caps.max_group_ball) + " elements");
      }
    }
  }
  for (const FreeWord& v : queue) {
    out.keys.push_back(g.element_key(v));
    out.reps.push_back(v);
  }
  return out;
}

nlohmann::json ConcisenessRecord::json() const {
  return {{"group", group},
          {"m", m},
          {"verbal_order", verbal_order},
          {"values", values},
          {"exhaustive", exhaustive}};
}

ConcisenessRecord conciseness_record(const MarkedGroup& g, const WordMap& w,
                                     const Caps& caps) {
  ValueSet vs = w_values(g, w, caps);
  ConcisenessRecord rec;
  rec.group = g.describe();
  rec.m = vs.size();
  rec.values = vs.keys;
  rec.exhaustive = vs.exhaustive;
  rec.verbal_order = static_cast<long long>(subgroup_closure(g, vs.keys).size());
  return rec;
}

nlohmann::json DeltaProfile::json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const ConcisenessRecord& r : records) {
    recs.push_back({{"group", r.group},
                    {"m", r.m},
                    {"verbal_order", r.verbal_order},
                    {"exhaustive", r.exhaustive}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [m, bound] : delta) pairs.push_back(nlohmann::json::array({m, bound}));
  return {{"schema", "mgl/1"}, {"word", word},    {"family", family},
          {"records", recs},   {"delta", pairs},  {"errors", errors}};
}

std::string DeltaProfile::table() const {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"group", "m", "|G_w|", "exhaustive"});
  for (const ConcisenessRecord& r : records) {
    rows.push_back({r.group, std::to_string(r.m), std::to_string(r.verbal_order),
                    r.exhaustive ? "yes" : "no"});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : rows) {
    for (int c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (int c = 0; c < 4; ++c) {
      out += row[c];
      if (c < 3) out += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

DeltaProfile delta_profile(const std::vector<MarkedGroup>& family, const WordMap& w,
                           const std::string& family_id, int workers, const Caps& caps) {
  struct Slot {
    std::optional<ConcisenessRecord> rec;
    std::string error;
  };
  std::vector<Slot> slots =
      parallel_map(family.size(), workers, [&](std::size_t i) -> Slot {
        try {
          return {conciseness_record(family[i], w, caps), ""};
        } catch (const std::exception& e) {
          return {std::nullopt, family[i].describe() + ": " + e.what()};
        }
      });
  DeltaProfile profile;
  profile.word = w.str();
  profile.family = family_id;
  for (Slot& slot : slots) {
    if (slot.rec) {
      long long& bound = profile.delta[slot.rec->m];
      bound = std::max(bound, slot.rec->verbal_order);
      profile.records.push_back(std::move(*slot.rec));
    } else {
      profile.errors.push_back(std::move(slot.error));
    }
  }
  return profile;
}

nlohmann::json SupportReport::json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rows.push_back({{"radius", radii[i]}, {"values", value_counts[i]}});
  }
  nlohmann::json support_words = nlohmann::json::array();
  for (const FreeWord& f : support) support_words.push_back(f.str());
  return {{"schema", "mgl/1"},
          {"word", word},
          {"rounds", rows},
          {"support", support_words},
          {"values", values},
          {"stabilized", stabilized},
          {"exhausted_group", exhausted_group}};
}

SupportReport finite_support(const MarkedGroup& g, const WordMap& w,
                             const std::vector<int>& schedule, int stable_window,
                             const Caps& caps) {
  if (schedule.empty()) throw Error("radius schedule is empty");
  if (stable_window < 2) throw Error("stable window must be at least 2 radii");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) throw Error("radius schedule must increase");
  }

  SupportReport report;
  report.word = w.str();
  std::map<ElementKey, FreeWord> found;
  std::vector<FreeWord> args(w.arity(), FreeWord(g.rank()));
  long long prev_ball = -1;
  int run = 0;  // consecutive radii with an unchanged value set
  for (int radius : schedule) {
    LabeledBall ball = build_ball(g, radius, caps);
    long long n = static_cast<long long>(ball.vertices.size());
    if (!tuple_count(n, w.arity(), caps.max_evaluations)) {
      throw CapExceeded("value search at radius " + std::to_string(radius) +
                            " needs more than " + std::to_string(caps.max_evaluations) +
                            " evaluations",
                        report.radii.empty() ? -1 : report.radii.back());
    }
    std::size_t before = found.size();
    std::vector<int> idx(w.arity(), 0);
    while (true) {
      for (int i = 0; i < w.arity(); ++i) args[i] = ball.vertices[idx[i]].rep;
      FreeWord value = w.w.substitute(args);
      found.emplace(g.element_key(value), value);
      int pos = w.arity() - 1;
      while (pos >= 0 && ++idx[pos] == n) {
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    report.radii.push_back(radius);
    report.value_counts.push_back(static_cast<long long>(found.size()));
    run = found.size() == before && prev_ball >= 0 ? run + 1 : 1;
    report.exhausted_group = n == prev_ball;
    prev_ball = n;
    if (report.exhausted_group || run >= stable_window) {
      report.stabilized = true;
      for (const BallVertex& v : ball.vertices) report.support.push_back(v.rep);
      break;
    }
    if (radius == schedule.back()) {
      for (const BallVertex& v : ball.vertices) report.support.push_back(v.rep);
    }
  }
  for (const auto& [key, word] : found) {
    report.values.push_back(key);
    report.value_words.push_back(word);
  }
  return report;
}

nlohmann::json TheoremAReport::json() const {
  nlohmann::json member_m_json = nlohmann::json::array();
  for (const auto& [r, v] : member_m) member_m_json.push_back(nlohmann::json::array({r, v}));
  nlohmann::json member_verbal_json = nlohmann::json::array();
  for (const auto& [r, v] : member_verbal) {
    member_verbal_json.push_back(nlohmann::json::array({r, v}));
  }
  return {{"schema", "mgl/1"},
          {"word", word},
          {"verdict", verdict},
          {"detail", detail},
          {"steps",
           {{"a", {{"stabilized", stabilized}, {"R", R}, {"m", m()}, {"values", limit_values}}},
            {"b", {{"r_bar", r_bar ? nlohmann::json(*r_bar) : nlohmann::json()}, {"r_max", r_max}}},
            {"c", {{"member_m", member_m_json}}},
            {"d", {{"delta", delta}, {"member_verbal", member_verbal_json}}},
            {"e", {{"R_final", R_final}, {"limit_verbal_order", limit_verbal_order}}}}}};
}

TheoremAReport theorem_a_check(const GroupSequence& seq, const WordMap& w,
                               const TheoremAOptions& opts) {
  TheoremAReport rep;
  rep.word = w.str();
  int r_max = opts.r_max;
  if (std::optional<int> count = seq.member_count()) r_max = std::min(r_max, *count);
  rep.r_max = r_max;
  if (!seq.limit()) throw SpecError("sequence has no designated limit");
  const MarkedGroup& limit = *seq.limit();
  const Caps& caps = seq.caps();

  auto inconclusive = [&rep](const std::string& why) -> TheoremAReport& {
    rep.verdict = "inconclusive";
    rep.detail = why;
    return rep;
  };

  std::vector<int> schedule = opts.support_schedule;
  if (schedule.empty()) {
    for (int r = 1; r <= 6; ++r) schedule.push_back(r);
  }

  SupportReport support;
  try {
    support = finite_support(limit, w, schedule, opts.stable_window, caps);
  } catch (const CapExceeded& e) {
    return inconclusive(std::string("step (a): ") + e.what());
  }
  rep.stabilized = support.stabilized;
  rep.limit_values = support.values;
  if (!support.stabilized) {
    rep.verdict = "hypothesis not met";
    rep.detail = "step (a): the value set kept growing through radius " +
                 std::to_string(support.radii.back()) + "; w{G} looks infinite";
    return rep;
  }

  try {
    for (const FreeWord& v : support.value_words) {
      rep.R = std::max(rep.R, limit.norm(v));
    }
  } catch (const CapExceeded& e) {
    return inconclusive(std::string("step (a): value norm: ") + e.what());
  }

  std::optional<MatchingReport> match;
  try {
    match = matching_radius(seq, rep.R, r_max, opts.workers);
  } catch (const CapExceeded& e) {
    return inconclusive(std::string("step (b): ") + e.what());
  }
  if (!match->settled()) {
    return inconclusive("step (b): no matching radius for R = " + std::to_string(rep.R) +
                        " within r_max = " + std::to_string(r_max));
  }
  rep.r_bar = match->r_bar;

  struct MemberStats {
    long long m = 0;
    long long verbal = 0;
    int verbal_radius = 0;
    std::string error;
  };
  int lo = *rep.r_bar;
  std::vector<MemberStats> stats = parallel_map(
      static_cast<std::size_t>(r_max - lo + 1), opts.workers,
      [&](std::size_t i) -> MemberStats {
        MemberStats s;
        try {
          MarkedGroup gr = seq.member(lo + static_cast<int>(i));
          ValueSet vs = w_values(gr, w, caps);
          s.m = vs.size();
          ModelPtr model = gr.model();
          std::vector<int> seeds;
          for (const ElementKey& k : vs.keys) seeds.push_back(*model->index_of_key(k));
          for (int e : closure_indices(*model, seeds)) {
            ++s.verbal;
            s.verbal_radius = std::max(s.verbal_radius, model->norm(e));
          }
        } catch (const std::exception& e) {
          s.error = e.what();
        }
        return s;
      });

  rep.R_final = rep.R;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    int r = lo + static_cast<int>(i);
    const MemberStats& s = stats[i];
    if (!s.error.empty()) {
      return inconclusive("step (c): member r=" + std::to_string(r) + ": " + s.error);
    }
    rep.member_m.emplace_back(r, s.m);
    rep.member_verbal.emplace_back(r, s.verbal);
    rep.delta = std::max(rep.delta, s.verbal);
    rep.R_final = std::max(rep.R_final, s.verbal_radius);
  }
  for (const auto& [r, m_r] : rep.member_m) {
    if (m_r != rep.m()) {
      rep.verdict = "fail";
      rep.detail = "step (c): |w{G_r}| = " + std::to_string(m_r) + " at r=" +
                   std::to_string(r) + ", but the limit has m = " + std::to_string(rep.m());
      return rep;
    }
  }

  BallClosure closure;
  try {
    closure = closure_in_ball(limit, support.value_words, rep.R_final, caps);
  } catch (const CapExceeded& e) {
    return inconclusive(std::string("step (e): ") + e.what());
  }
  if (closure.escaped) {
    return inconclusive("step (e): the limit's verbal closure leaves the ball of radius " +
                        std::to_string(rep.R_final));
  }
  rep.limit_verbal_order = static_cast<long long>(closure.keys.size());
  for (const auto& [r, verbal_r] : rep.member_verbal) {
    if (verbal_r != rep.limit_verbal_order) {
      rep.verdict = "fail";
      rep.detail = "step (e): |(G_r)_w| = " + std::to_string(verbal_r) + " at r=" +
                   std::to_string(r) + ", but the limit's verbal subgroup has order " +
                   std::to_string(rep.limit_verbal_order);
      return rep;
    }
  }

  rep.verdict = "pass";
  return rep;
}

}  // namespace mgl
