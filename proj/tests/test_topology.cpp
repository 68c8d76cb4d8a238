#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "mgl/ball.hpp"
#include "mgl/cache.hpp"
#include "mgl/group_spec.hpp"
#include "mgl/metric.hpp"
#include "mgl/parallel.hpp"
#include "mgl/sequence.hpp"
#include "mgl/word_parse.hpp"

using namespace mgl;

namespace {

FreeWord W(const std::string& text, int rank = 0) { return parse_free_word(text, rank); }

// Membership comparison by literal scan of enumerate_ball(n, r) for
// r = 1..cap; the reference the DFS in nu() must reproduce.
NuResult naive_nu(const MarkedGroup& g, const MarkedGroup& h, int cap) {
  for (int r = 1; r <= cap; ++r) {
    for (const FreeWord& w : enumerate_ball(g.rank(), r)) {
      if (g.contains(w) != h.contains(w)) return NuResult::Exact(r - 1);
    }
  }
  return NuResult::AtLeast(cap);
}

// Z/m behind an oracle that does not admit to being finite, forcing the
// generic (indexer-based) ball construction instead of the model prefix.
class HiddenCyclicOracle : public GroupOracle {
 public:
  HiddenCyclicOracle(long long m, bool keyed) : m_(m), keyed_(keyed) {}

  int rank() const override { return 1; }
  bool contains(const FreeWord& w) const override { return residue(w) == 0; }
  bool has_normal_form() const override { return keyed_; }
  ElementKey normal_form(const FreeWord& w) const override {
    if (!keyed_) throw Error("no normal form");
    return std::to_string(residue(w));
  }
  bool finite_hint() const override { return false; }
  std::optional<long long> base_order() const override { return std::nullopt; }
  std::string describe() const override { return "hidden Z/" + std::to_string(m_); }
  nlohmann::json spec_json() const override {
    return {{"kind", "cyclic"}, {"modulus", m_}, {"marking", {1}}};
  }

 private:
  long long residue(const FreeWord& w) const {
    long long s = 0;
    for (int l : w.letters()) s += l > 0 ? 1 : -1;
    return ((s % m_) + m_) % m_;
  }

  long long m_;
  bool keyed_;
};

std::vector<std::pair<std::string, std::string>> edge_keys(const LabeledBall& b) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const BallEdge& e : b.edges) {
    out.emplace_back(b.vertices[e.src].key, b.vertices[e.dst].key);
  }
  return out;
}

// Cayley table and marking indices read off a finite group's model.
std::pair<std::vector<std::vector<int>>, std::vector<int>> table_of(const MarkedGroup& g) {
  ModelPtr m = g.model();
  std::vector<std::vector<int>> table(m->order(), std::vector<int>(m->order()));
  for (int i = 0; i < m->order(); ++i) {
    for (int j = 0; j < m->order(); ++j) table[i][j] = m->mul(i, j);
  }
  std::vector<int> marking;
  for (int i = 1; i <= g.rank(); ++i) marking.push_back(m->generator(i));
  return {table, marking};
}

std::string fresh_dir(const std::string& tag) {
  auto path = std::filesystem::temp_directory_path() /
              ("mgl-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(path);
  return path.string();
}

GroupSequence cyclic_to_z() {
  return GroupSequence::from_json(nlohmann::json::parse(R"json({
    "template": {"kind": "cyclic", "modulus": "$r", "marking": [1]},
    "limit": "z"
  })json"));
}

}  // namespace

TEST_CASE("cyclic ball matches the hand construction") {
  MarkedGroup z6 = make_marked("cyclic(6)");
  LabeledBall b = build_ball(z6, 2);
  REQUIRE(b.vertices.size() == 5);
  std::vector<std::string> keys;
  std::vector<int> norms;
  for (const BallVertex& v : b.vertices) {
    keys.push_back(v.key);
    norms.push_back(v.norm);
  }
  CHECK(keys == std::vector<std::string>{"0", "1", "5", "2", "4"});
  CHECK(norms == std::vector<int>{0, 1, 1, 2, 2});

  std::vector<std::pair<std::string, std::string>> expected{
      {"0", "1"}, {"1", "2"}, {"5", "0"}, {"4", "5"}};
  auto got = edge_keys(b);
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
  for (const BallEdge& e : b.edges) CHECK(e.label == 1);
}

TEST_CASE("infinite cyclic ball is a labeled path") {
  MarkedGroup z = make_marked("z");
  LabeledBall b = build_ball(z, 2);
  REQUIRE(b.vertices.size() == 5);
  CHECK(b.edges.size() == 4);
  std::set<std::string> keys;
  for (const BallVertex& v : b.vertices) keys.insert(v.key);
  CHECK(keys == std::set<std::string>{"-2", "-1", "0", "1", "2"});
  // Path: exactly one vertex (the top end, key "2") has no out-edge.
  std::set<int> sources;
  for (const BallEdge& e : b.edges) sources.insert(e.src);
  CHECK(sources.size() == 4);
}

TEST_CASE("radius zero ball is a single root") {
  for (const char* expr : {"z", "symmetric(3)", "q8"}) {
    LabeledBall b = build_ball(make_marked(expr), 0);
    CHECK(b.vertices.size() == 1);
    CHECK(b.vertices[0].rep.is_identity());
    CHECK(b.vertices[0].norm == 0);
    CHECK(b.edges.empty());
  }
}

TEST_CASE("identity marking letters carry no edges") {
  MarkedGroup z3p = make_marked("padded(cyclic(3))");
  REQUIRE(z3p.rank() == 2);
  LabeledBall b = build_ball(z3p, 2);
  CHECK(b.vertices.size() == 3);
  for (const BallEdge& e : b.edges) CHECK(e.label == 1);
}

TEST_CASE("codes identify the 5-path and separate the 5-cycle") {
  LabeledBall path_z = build_ball(make_marked("z"), 2);
  LabeledBall path_z6 = build_ball(make_marked("cyclic(6)"), 2);
  LabeledBall cycle_z5 = build_ball(make_marked("cyclic(5)"), 2);
  CHECK(canonical_code(path_z) == canonical_code(path_z6));
  CHECK(canonical_code(path_z) != canonical_code(cycle_z5));
  CHECK(cycle_z5.edges.size() == 5);
  CHECK(path_z.edges.size() == 4);
  CHECK(balls_isomorphic(path_z, path_z6));
  CHECK_FALSE(balls_isomorphic(path_z, cycle_z5));
}

TEST_CASE("cyclic balls match the infinite cyclic group exactly when large enough") {
  MarkedGroup z = make_marked("z");
  for (int R = 1; R <= 5; ++R) {
    LabeledBall zball = build_ball(z, R);
    for (int n = 2; n <= 13; ++n) {
      LabeledBall nball = build_ball(make_marked("cyclic(" + std::to_string(n) + ")"), R);
      CHECK(balls_isomorphic(zball, nball) == (n >= 2 * R + 2));
    }
  }
}

TEST_CASE("ball comparison rejects different ranks") {
  MarkedGroup a = make_marked("product(cyclic(2),cyclic(3))");
  MarkedGroup b = make_marked("cyclic(6)");
  LabeledBall ba = build_ball(a, 2);
  CHECK(ba.rank == 2);
  LabeledBall bb = build_ball(b, 2);
  CHECK_THROWS_AS(balls_isomorphic(ba, bb), RankMismatch);
}

TEST_CASE("ball comparison requires equal radii in the code") {
  MarkedGroup z = make_marked("z");
  LabeledBall r1 = build_ball(z, 1);
  LabeledBall r2 = build_ball(z, 2);
  CHECK_FALSE(balls_isomorphic(r1, r2));
}

TEST_CASE("canonical code ignores element relabeling") {
  std::vector<MarkedGroup> pool{make_marked("cyclic(6)"), make_marked("symmetric(3)"),
                                make_marked("q8")};
  Rng rng(20240817);
  int trials = 0;
  for (const MarkedGroup& g : pool) {
    auto [table, marking] = table_of(g);
    int order = static_cast<int>(table.size());
    MarkedGroup original = MarkedGroup::make(make_table_oracle(table, marking));
    for (int t = 0; t < 17; ++t) {
      // Random permutation of 1..order-1; index 0 stays the identity.
      std::vector<int> sigma(order);
      for (int i = 0; i < order; ++i) sigma[i] = i;
      for (int i = order - 1; i >= 2; --i) {
        int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
        std::swap(sigma[i], sigma[j]);
      }
      std::vector<std::vector<int>> shuffled(order, std::vector<int>(order));
      for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
          shuffled[sigma[i]][sigma[j]] = sigma[table[i][j]];
        }
      }
      std::vector<int> shuffled_marking;
      for (int m : marking) shuffled_marking.push_back(sigma[m]);
      MarkedGroup relabeled = MarkedGroup::make(make_table_oracle(shuffled, shuffled_marking));
      for (int R : {1, 2, 3}) {
        LabeledBall lhs = build_ball(original, R);
        LabeledBall rhs = build_ball(relabeled, R);
        CHECK(canonical_code(lhs) == canonical_code(rhs));
        CHECK(lhs.vertices.size() == rhs.vertices.size());
        std::map<int, int> lhs_labels, rhs_labels;
        for (const BallEdge& e : lhs.edges) ++lhs_labels[e.label];
        for (const BallEdge& e : rhs.edges) ++rhs_labels[e.label];
        CHECK(lhs_labels == rhs_labels);
      }
      ++trials;
    }
  }
  CHECK(trials == 51);
}

TEST_CASE("generic construction agrees with the model prefix") {
  MarkedGroup z6 = make_marked("cyclic(6)");
  MarkedGroup hidden = MarkedGroup::make(std::make_shared<HiddenCyclicOracle>(6, true));
  MarkedGroup hidden_keyless =
      MarkedGroup::make(std::make_shared<HiddenCyclicOracle>(6, false));
  for (int R = 0; R <= 3; ++R) {
    LabeledBall via_model = build_ball(z6, R);
    LabeledBall via_generic = build_ball(hidden, R);
    LabeledBall via_pairwise = build_ball(hidden_keyless, R);
    REQUIRE(via_model.vertices.size() == via_generic.vertices.size());
    REQUIRE(via_model.vertices.size() == via_pairwise.vertices.size());
    for (std::size_t v = 0; v < via_model.vertices.size(); ++v) {
      CHECK(via_model.vertices[v].key == via_generic.vertices[v].key);
      CHECK(via_model.vertices[v].rep == via_generic.vertices[v].rep);
      CHECK(via_model.vertices[v].norm == via_generic.vertices[v].norm);
      CHECK(via_model.vertices[v].rep == via_pairwise.vertices[v].rep);
      CHECK(via_model.vertices[v].norm == via_pairwise.vertices[v].norm);
    }
    CHECK(via_model.edges == via_generic.edges);
    CHECK(via_model.edges == via_pairwise.edges);
  }
}

TEST_CASE("ball construction reports the completed radius on cap overflow") {
  Caps tight;
  tight.max_group_ball = 4;
  MarkedGroup hidden = MarkedGroup::make(std::make_shared<HiddenCyclicOracle>(100, true));
  try {
    build_ball(hidden, 3, tight);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.partial() == 1);
  }
}

TEST_CASE("dot and json exports carry the ball structure") {
  LabeledBall b = build_ball(make_marked("cyclic(6)"), 2);
  std::string dot = ball_dot(b);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"s1\"") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);

  nlohmann::json doc = ball_json(b);
  CHECK(doc["schema"] == "mgl/1");
  CHECK(doc["radius"] == 2);
  CHECK(doc["rank"] == 1);
  CHECK(doc["vertices"].size() == 5);
  CHECK(doc["vertices"][0] == "e");
  CHECK(doc["edges"].size() == 4);
  CHECK(code_hex(canonical_code(b)).size() == canonical_code(b).size() * 2);
}

TEST_CASE("nu matches the brute-force membership scan") {
  std::vector<MarkedGroup> rank1{make_marked("z"),         make_marked("cyclic(2)"),
                                 make_marked("cyclic(3)"), make_marked("cyclic(4)"),
                                 make_marked("cyclic(6)"), make_marked("cyclic(8)")};
  for (const MarkedGroup& g : rank1) {
    for (const MarkedGroup& h : rank1) {
      NuResult fast = nu(g, h, 10);
      CHECK(fast == naive_nu(g, h, 10));
      CHECK(fast == nu(h, g, 10));
    }
  }

  std::vector<MarkedGroup> rank2{make_marked("q8"), make_marked("symmetric(3)"),
                                 make_marked("dihedral(4)"),
                                 make_marked("product(cyclic(2),cyclic(2))"),
                                 make_marked("free(2)"),
                                 make_marked("product(z,z)")};
  for (const MarkedGroup& g : rank2) {
    for (const MarkedGroup& h : rank2) {
      NuResult fast = nu(g, h, 7);
      CHECK(fast == naive_nu(g, h, 7));
      CHECK(fast == nu(h, g, 7));
    }
  }
}

TEST_CASE("nu reproduces the cyclic family values") {
  MarkedGroup z = make_marked("z");
  for (int n = 2; n <= 16; ++n) {
    NuResult v = nu(z, make_marked("cyclic(" + std::to_string(n) + ")"), 16);
    CHECK(v == NuResult::Exact(n - 1));
  }
  CHECK(nu(make_marked("cyclic(4)"), make_marked("cyclic(2)"), 16) == NuResult::Exact(1));
  CHECK(nu(z, make_marked("z"), 16) == NuResult::AtLeast(16));
}

TEST_CASE("distance maps nu to dyadic bounds") {
  MarkedGroup z = make_marked("z");
  DyadicBound d = distance(z, make_marked("cyclic(5)"), 16);
  CHECK(d.exact);
  CHECK(d.exponent == 4);
  CHECK(d.str() == "2^-4");

  DyadicBound same = distance(z, make_marked("z"), 16);
  CHECK_FALSE(same.exact);
  CHECK(same.exponent == 16);
  CHECK(same.str() == "<=2^-16");

  DyadicBound half = distance(make_marked("cyclic(4)"), make_marked("cyclic(2)"), 16);
  CHECK(half.exact);
  CHECK(half.exponent == 1);
  CHECK(half.str() == "2^-1");

  CHECK(distance(z, make_marked("cyclic(2)"), 16).str() == "2^-1");
  CHECK(NuResult::Exact(3).str() == "3");
  CHECK(NuResult::AtLeast(12).str() == ">=12");
}

TEST_CASE("nu rejects rank mismatches and bad caps") {
  CHECK_THROWS_AS(nu(make_marked("z"), make_marked("q8"), 8), RankMismatch);
  CHECK_THROWS_AS(nu(make_marked("z"), make_marked("z"), 0), Error);
}

TEST_CASE("nu stops at the free ball cap with the completed radius") {
  Caps tight;
  tight.max_free_ball = 100;
  MarkedGroup a = make_marked("q8", tight);
  MarkedGroup b = make_marked("q8", tight);
  try {
    nu(a, b, 10, tight);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    // |B_F2(3)| = 53 fits in 100 words, |B_F2(4)| = 161 does not.
    CHECK(e.partial() == 3);
  }
}

TEST_CASE("ultrametric symmetry and strong triangle hold at cap resolution") {
  std::vector<MarkedGroup> pool;
  pool.push_back(make_marked("z"));
  for (int n = 2; n <= 9; ++n) pool.push_back(make_marked("cyclic(" + std::to_string(n) + ")"));
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const MarkedGroup& g = pool[rng.below(pool.size())];
    const MarkedGroup& h = pool[rng.below(pool.size())];
    const MarkedGroup& k = pool[rng.below(pool.size())];
    NuResult gh = nu(g, h, 12);
    NuResult hk = nu(h, k, 12);
    NuResult gk = nu(g, k, 12);
    CHECK(gh == nu(h, g, 12));
    CHECK(triangle_consistent(gk, gh, hk));
  }
}

TEST_CASE("padding the marking preserves nu") {
  std::vector<MarkedGroup> pool;
  for (int n = 2; n <= 9; ++n) pool.push_back(make_marked("cyclic(" + std::to_string(n) + ")"));
  Rng rng(11);
  for (int t = 0; t < 15; ++t) {
    const MarkedGroup& g = pool[rng.below(pool.size())];
    const MarkedGroup& h = pool[rng.below(pool.size())];
    CHECK(nu(pad_marking(g), pad_marking(h), 12) == nu(g, h, 12));
  }
}

TEST_CASE("sequence members come from the template lazily") {
  GroupSequence seq = cyclic_to_z();
  REQUIRE(seq.limit().has_value());
  CHECK_FALSE(seq.member_count().has_value());
  CHECK(seq.member(3).spec_json()["modulus"] == 3);
  CHECK(seq.member(1).spec_json()["modulus"] == 1);
  CHECK(seq.member(3).contains(W("x1^3")));
  CHECK_FALSE(seq.member(4).contains(W("x1^3")));
  CHECK_THROWS_AS(seq.member(0), Error);
}

TEST_CASE("sequence member lists are bounded and rank-checked") {
  GroupSequence listed = GroupSequence::from_json(nlohmann::json::parse(R"json({
    "members": ["cyclic(2)", "cyclic(4)"],
    "limit": "z"
  })json"));
  REQUIRE(listed.member_count() == 2);
  CHECK(listed.member(2).spec_json()["modulus"] == 4);
  CHECK_THROWS_AS(listed.member(3), Error);

  GroupSequence bad_rank = GroupSequence::from_json(nlohmann::json::parse(R"json({
    "template": {"kind": "cyclic", "modulus": "$r", "marking": [1]},
    "limit": "q8"
  })json"));
  CHECK_THROWS_AS(bad_rank.member(1), SpecError);

  CHECK_THROWS_AS(GroupSequence::from_json(nlohmann::json::parse(R"json({"limit": "z"})json")),
                  SpecError);
  CHECK_THROWS_AS(GroupSequence::from_json(nlohmann::json::parse(R"json({
    "template": {}, "members": [], "limit": "z"
  })json")),
                  SpecError);
}

TEST_CASE("eventual membership of x^3 settles at r=4") {
  GroupSequence seq = cyclic_to_z();
  MembershipReport report = eventual_membership(seq, W("x1^3"), 10);
  CHECK_FALSE(report.in_limit);
  REQUIRE(report.settled());
  CHECK(report.r_bar == 4);
  // x^3 lands in N_r exactly when r divides 3.
  for (const auto& [r, in] : report.samples) CHECK(in == (3 % r == 0));

  MembershipReport identity = eventual_membership(seq, W("e", 1), 10);
  CHECK(identity.in_limit);
  CHECK(identity.r_bar == 1);

  MembershipReport unsettled = eventual_membership(seq, W("x1^5"), 5);
  CHECK_FALSE(unsettled.settled());
  CHECK(unsettled.json()["r_bar"].is_null());
}

TEST_CASE("constant sequences settle immediately") {
  GroupSequence constant = GroupSequence::from_function(
      [](int) { return make_marked("cyclic(6)"); }, make_marked("cyclic(6)"));
  CHECK(eventual_membership(constant, W("x1^2"), 6).r_bar == 1);
  CHECK(matching_radius(constant, 3, 6).r_bar == 1);
  ConvergenceReport conv = verify_convergence(constant, 8, 6);
  CHECK(conv.consistent);
  for (const auto& [r, v] : conv.table) CHECK(v == NuResult::AtLeast(8));
}

TEST_CASE("matching radius for the cyclic sequence follows 2R+2") {
  GroupSequence seq = cyclic_to_z();
  MatchingReport r0 = matching_radius(seq, 0, 8);
  CHECK(r0.r_bar == 1);
  MatchingReport r2 = matching_radius(seq, 2, 14);
  REQUIRE(r2.settled());
  CHECK(r2.r_bar == 6);
  for (const auto& [r, iso] : r2.samples) CHECK(iso == (r >= 6));

  int last = 1;
  for (int R = 0; R <= 4; ++R) {
    MatchingReport m = matching_radius(seq, R, 14, 2);
    REQUIRE(m.settled());
    CHECK(*m.r_bar >= last);
    CHECK(*m.r_bar == (R == 0 ? 1 : 2 * R + 2));
    last = *m.r_bar;
  }
}

TEST_CASE("convergence table increases and certifies the cyclic sequence") {
  GroupSequence seq = cyclic_to_z();
  ConvergenceReport report = verify_convergence(seq, 6, 10);
  CHECK(report.consistent);
  REQUIRE(report.table.size() == 10);
  for (const auto& [r, v] : report.table) {
    if (r <= 6) {
      CHECK(v == NuResult::Exact(r - 1));
    } else {
      CHECK(v == NuResult::AtLeast(6));
    }
  }
  nlohmann::json one = verify_convergence(seq, 6, 10, 1).json();
  nlohmann::json four = verify_convergence(seq, 6, 10, 4).json();
  CHECK(one.dump() == four.dump());
}

TEST_CASE("wrong limits are reported as not consistent") {
  GroupSequence wrong = GroupSequence::from_json(nlohmann::json::parse(R"json({
    "template": {"kind": "cyclic", "modulus": "$r", "marking": [1]},
    "limit": "cyclic(5)"
  })json"));
  ConvergenceReport report = verify_convergence(wrong, 6, 12);
  CHECK_FALSE(report.consistent);
  // x^5 separates every member past r=5, pinning nu at 4.
  for (const auto& [r, v] : report.table) {
    if (r > 5) CHECK(v == NuResult::Exact(4));
    if (r == 5) CHECK(v == NuResult::AtLeast(6));
  }
}

TEST_CASE("the three convergence readings agree on the cyclic sequence") {
  GroupSequence seq = cyclic_to_z();
  CHECK(verify_convergence(seq, 5, 12).consistent);
  for (int R = 0; R <= 4; ++R) CHECK(matching_radius(seq, R, 12).settled());
  for (const char* text : {"e", "x1", "x1^3", "x1^-2", "x1^6"}) {
    CHECK(eventual_membership(seq, W(text, 1), 12).settled());
  }
}

TEST_CASE("ball cache round-trips and invalidates on mismatch") {
  std::string dir = fresh_dir("cache");
  BallCache cache(dir);
  MarkedGroup z6 = make_marked("cyclic(6)");
  nlohmann::json spec = z6.spec_json();

  CHECK_FALSE(cache.load(spec, 2).has_value());
  LabeledBall built = build_ball_cached(z6, 2, &cache);
  auto loaded = cache.load(spec, 2);
  REQUIRE(loaded.has_value());
  CHECK(loaded->radius == built.radius);
  CHECK(loaded->rank == built.rank);
  REQUIRE(loaded->vertices.size() == built.vertices.size());
  for (std::size_t v = 0; v < built.vertices.size(); ++v) {
    CHECK(loaded->vertices[v].key == built.vertices[v].key);
    CHECK(loaded->vertices[v].rep == built.vertices[v].rep);
    CHECK(loaded->vertices[v].norm == built.vertices[v].norm);
  }
  CHECK(loaded->edges == built.edges);
  CHECK(ball_json(build_ball_cached(z6, 2, &cache)).dump() == ball_json(built).dump());

  CHECK_FALSE(cache.load(spec, 3).has_value());
  CHECK_FALSE(cache.load(make_marked("cyclic(7)").spec_json(), 2).has_value());

  // A tampered entry (hash collision stand-in) must read as a miss.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    nlohmann::json doc;
    {
      std::ifstream in(entry.path());
      in >> doc;
    }
    doc["spec"]["modulus"] = 9;
    std::ofstream out(entry.path());
    out << doc.dump();
  }
  CHECK_FALSE(cache.load(spec, 2).has_value());
  // Corrupt JSON likewise.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ofstream out(entry.path());
    out << "not json";
  }
  CHECK_FALSE(cache.load(spec, 2).has_value());
  LabeledBall rebuilt = build_ball_cached(z6, 2, &cache);
  CHECK(rebuilt.edges == built.edges);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache directory comes from the environment") {
  ::setenv("MGL_CACHE_DIR", "/tmp/mgl-env-cache", 1);
  CHECK(BallCache::default_dir() == "/tmp/mgl-env-cache");
  ::unsetenv("MGL_CACHE_DIR");
  CHECK(BallCache::default_dir() == "./.mgl-cache");
}

TEST_CASE("concurrent cached ball builds agree") {
  std::string dir = fresh_dir("cache-par");
  BallCache cache(dir);
  MarkedGroup s4 = make_marked("symmetric(4)");
  LabeledBall reference = build_ball(s4, 3);
  std::vector<std::string> dumps = parallel_map(8, 4, [&](std::size_t) {
    return ball_json(build_ball_cached(s4, 3, &cache)).dump();
  });
  for (const std::string& d : dumps) CHECK(d == ball_json(reference).dump());
  std::filesystem::remove_all(dir);
}
