#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgl/group_spec.hpp"
#include "mgl/marked.hpp"
#include "mgl/parallel.hpp"
#include "mgl/word_parse.hpp"

using namespace mgl;

namespace {

FreeWord W(const std::string& text, int rank = 0) { return parse_free_word(text, rank); }

FreeWord random_word(Rng& rng, int rank, int max_len) {
  int len = static_cast<int>(rng.range(0, max_len));
  std::vector<int> raw;
  for (int i = 0; i < len; ++i) {
    int idx = static_cast<int>(rng.range(1, rank));
    raw.push_back(rng.coin() ? idx : -idx);
  }
  return FreeWord::reduce(rank, raw);
}

// Q8 in its regular representation: points 1..8 are [1,-1,i,-i,j,-j,k,-k]
// and the generators act by right multiplication by i and j.
MarkedGroup q8_regular() {
  Perm ri = Perm::from_cycles(8, {{1, 3, 2, 4}, {5, 8, 6, 7}});
  Perm rj = Perm::from_cycles(8, {{1, 5, 2, 6}, {3, 7, 4, 8}});
  return MarkedGroup::make(make_perm_oracle(
      8, {ri, rj}, {FreeWord::generator(2, 1), FreeWord::generator(2, 2)}));
}

MarkedGroup s3_standard() {
  Perm t = Perm::from_cycles(3, {{1, 2}});
  Perm c = Perm::from_cycles(3, {{1, 2, 3}});
  return MarkedGroup::make(make_perm_oracle(
      3, {t, c}, {FreeWord::generator(2, 1), FreeWord::generator(2, 2)}));
}

}  // namespace

TEST_CASE("cyclic groups") {
  MarkedGroup z6 = make_marked("cyclic(6)");
  CHECK(z6.rank() == 1);
  CHECK(z6.is_finite());
  CHECK(z6.contains(W("x1^6")));
  CHECK_FALSE(z6.contains(W("x1^5")));
  CHECK(z6.model()->order() == 6);

  MarkedGroup z = make_marked("z");
  CHECK_FALSE(z.is_finite());
  CHECK_FALSE(z.contains(W("x1^5")));
  CHECK(z.model() == nullptr);

  MarkedGroup z5 = make_marked("cyclic(5)");
  CHECK(z5.contains(W("x1^5")));

  MarkedGroup trivial = make_marked("cyclic(1)");
  CHECK(trivial.contains(W("x1")));
  CHECK(trivial.model()->order() == 1);
}

TEST_CASE("norms") {
  MarkedGroup z = make_marked("z");
  CHECK(z.norm(W("x1^3")) == 3);
  CHECK(z.norm(FreeWord(1)) == 0);

  MarkedGroup z23 = MarkedGroup::make(make_cyclic_oracle(0, {2, 3}));
  CHECK(z23.norm(W("x2*x1^-1", 2)) == 2);  // maps to 1 = 3 - 2
  CHECK(z23.norm(W("x1", 2)) == 1);

  MarkedGroup z6 = make_marked("cyclic(6)");
  CHECK(z6.norm(W("x1^3")) == 3);
  CHECK(z6.norm(W("x1^4")) == 2);  // 4 = -2 mod 6
  CHECK(z6.norm(W("x1^35")) == 1);
}

TEST_CASE("S3 marked by a transposition and a 3-cycle") {
  MarkedGroup s3 = s3_standard();
  CHECK(s3.contains(W("[x1,x2]^3")));
  CHECK_FALSE(s3.contains(W("[x1,x2]")));
  CHECK(s3.equal(W("[x1,x2]"), W("x2^-1", 2)));
  CHECK_FALSE(s3.equal(W("[x1,x2]"), W("x2", 2)));
  CHECK(s3.model()->order() == 6);
}

TEST_CASE("Q8 regular representation") {
  MarkedGroup q8 = q8_regular();
  CHECK(q8.model()->order() == 8);
  CHECK(q8.contains(W("[x1,x2]^2")));
  CHECK_FALSE(q8.contains(W("[x1,x2]")));
  CHECK(q8.contains(W("x1^4", 2)));
  CHECK(q8.contains(W("x1^2*x2^2")));  // i^2 = j^2 = -1
  CHECK(q8.norm(W("x1^2", 2)) == 2);   // -1 at distance 2
}

TEST_CASE("Q8 Cayley table agrees with the regular representation") {
  MarkedGroup table = make_marked("q8");
  MarkedGroup perm = q8_regular();
  CHECK(table.model()->order() == 8);
  Rng rng(421);
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord w = random_word(rng, 2, 10);
    CHECK(table.contains(w) == perm.contains(w));
  }
  CHECK(table.norm(W("x1^2", 2)) == 2);
}

TEST_CASE("table validation") {
  // Non-Latin row.
  std::vector<std::vector<int>> bad{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(make_table_oracle(bad, {1}), SpecError);

  // Latin square with identity that is not associative (a loop of order 5).
  std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4},
                                     {1, 0, 3, 4, 2},
                                     {2, 3, 4, 0, 1},
                                     {3, 4, 1, 2, 0},
                                     {4, 2, 0, 1, 3}};
  CHECK_THROWS_AS(make_table_oracle(loop, {1}), SpecError);

  // Row 0 is not the identity.
  std::vector<std::vector<int>> shifted{{1, 0}, {0, 1}};
  CHECK_THROWS_AS(make_table_oracle(shifted, {1}), SpecError);

  // Marking index out of range.
  std::vector<std::vector<int>> z2{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(make_table_oracle(z2, {2}), SpecError);
  CHECK_NOTHROW(make_table_oracle(z2, {1}));
}

TEST_CASE("marking must generate finite groups") {
  CHECK_THROWS_AS(MarkedGroup::make(make_cyclic_oracle(4, {2})), SpecError);

  // S3 marked only by the 3-cycle generates just A3.
  Perm t = Perm::from_cycles(3, {{1, 2}});
  Perm c = Perm::from_cycles(3, {{1, 2, 3}});
  CHECK_THROWS_AS(MarkedGroup::make(make_perm_oracle(3, {t, c}, {W("x2", 2)})),
                  SpecError);
}

TEST_CASE("marking words over native generators") {
  // S3 marked by ((12), (12)(123)) = ((12), (13)).
  Perm t = Perm::from_cycles(3, {{1, 2}});
  Perm c = Perm::from_cycles(3, {{1, 2, 3}});
  MarkedGroup g = MarkedGroup::make(
      make_perm_oracle(3, {t, c}, {W("x1", 2), W("x1*x2", 2)}));
  CHECK(g.model()->order() == 6);
  CHECK(g.contains(W("x2^2")));  // (13)^2 = e
}

TEST_CASE("padding") {
  MarkedGroup z3p = make_marked("cyclic(3)").padded();
  CHECK(z3p.rank() == 2);
  CHECK(z3p.contains(W("x2", 2)));
  CHECK(z3p.model()->order() == 3);

  MarkedGroup zp = make_marked("z").padded();
  CHECK(zp.contains(W("x1*x2*x1^-1", 2)));
  CHECK_FALSE(zp.contains(W("x1*x2", 2)));

  MarkedGroup z6 = make_marked("cyclic(6)");
  MarkedGroup z6p = z6.padded();
  Rng rng(422);
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord w = random_word(rng, 1, 10);
    CHECK(z6.contains(w) == z6p.contains(w.with_rank(2)));
    FreeWord v = random_word(rng, 2, 10);
    FreeWord erased = FreeWord::reduce(1, v.erase_generator(2).letters());
    CHECK(z6p.contains(v) == z6.contains(erased));
  }
}

TEST_CASE("element keys") {
  MarkedGroup z4 = make_marked("cyclic(4)");
  CHECK(z4.element_key(W("x1")) == z4.element_key(W("x1^5")));
  CHECK(z4.element_key(W("x1")) != z4.element_key(W("x1^2")));
  CHECK(z4.element_key(W("x1")) == z4.element_key(W("x1")));

  MarkedGroup f2 = make_marked("free(2)");
  CHECK(f2.element_key(W("x1*x2")) != f2.element_key(W("x2*x1")));
  CHECK_FALSE(f2.equal(W("x1*x2"), W("x2*x1")));
  CHECK(f2.equal(W("x1*x2*x2^-1"), W("x1", 2)));
}

TEST_CASE("distinct keys over a large ball count the group order") {
  MarkedGroup q8 = make_marked("q8");
  std::set<ElementKey> keys;
  for (const FreeWord& w : enumerate_ball(2, 8)) keys.insert(q8.element_key(w));
  CHECK(keys.size() == 8);
}

TEST_CASE("direct products") {
  MarkedGroup g = make_marked("product(q8, cyclic(3))");
  CHECK(g.rank() == 3);
  CHECK(g.model()->order() == 24);
  CHECK(g.contains(W("x3^3", 3)));
  CHECK(g.contains(W("x1^4", 3)));
  CHECK(g.contains(W("[x1,x3]", 3)));  // factors commute
  CHECK_FALSE(g.contains(W("x1^2*x3", 3)));
  CHECK(g.element_key(W("x1^2", 3)) == g.element_key(W("x2^2", 3)));

  MarkedGroup zz = make_marked("product(z, z)");
  CHECK_FALSE(zz.is_finite());
  CHECK(zz.contains(W("[x1,x2]")));
  CHECK(zz.norm(W("x1*x2", 2)) == 2);
}

TEST_CASE("product markings are explicit words") {
  // Z/2 x Z/2 marked by the diagonal only: does not generate.
  nlohmann::json spec = nlohmann::json::parse(R"({
    "kind": "product",
    "factors": [{"kind":"cyclic","modulus":2,"marking":[1]},
                {"kind":"cyclic","modulus":2,"marking":[1]}],
    "marking": ["x1*x2"]})");
  CHECK_THROWS_AS(make_marked(spec), SpecError);

  // The same diagonal marking generates Z/2 x Z/3.
  nlohmann::json spec23 = nlohmann::json::parse(R"({
    "kind": "product",
    "factors": [{"kind":"cyclic","modulus":2,"marking":[1]},
                {"kind":"cyclic","modulus":3,"marking":[1]}],
    "marking": ["x1*x2"]})");
  MarkedGroup g = make_marked(spec23);
  CHECK(g.rank() == 1);
  CHECK(g.model()->order() == 6);
  CHECK(g.contains(W("x1^6")));
  CHECK_FALSE(g.contains(W("x1^3")));
}

TEST_CASE("equality is a congruence") {
  std::vector<MarkedGroup> groups{
      make_marked("cyclic(12)"), make_marked("q8"), s3_standard(),
      make_marked("product(cyclic(2), cyclic(2))"), make_marked("free(2)")};
  Rng rng(423);
  for (const MarkedGroup& g : groups) {
    int premise_hits = 0;
    for (int trial = 0; trial < 500; ++trial) {
      FreeWord u = random_word(rng, g.rank(), 6);
      FreeWord v = random_word(rng, g.rank(), 6);
      FreeWord u2 = random_word(rng, g.rank(), 6);
      FreeWord v2 = random_word(rng, g.rank(), 6);
      CHECK(g.equal(u, u));
      CHECK(g.equal(u, v) == g.equal(v, u));
      if (g.equal(u, u2) && g.equal(v, v2)) {
        ++premise_hits;
        CHECK(g.equal(u * v, u2 * v2));
      }
      if (g.equal(u, v) && g.equal(v, u2)) CHECK(g.equal(u, u2));
    }
    if (g.is_finite()) CHECK(premise_hits > 0);
  }
}

TEST_CASE("membership is conjugation-closed") {
  std::vector<MarkedGroup> groups{make_marked("cyclic(9)"), make_marked("q8"),
                                  s3_standard(), make_marked("dihedral(4)")};
  Rng rng(424);
  for (const MarkedGroup& g : groups) {
    int hits = 0;
    for (int trial = 0; trial < 500; ++trial) {
      FreeWord w = random_word(rng, g.rank(), 8);
      if (!g.contains(w)) continue;
      ++hits;
      FreeWord conj = random_word(rng, g.rank(), 5);
      CHECK(g.contains(conj * w * conj.inverse()));
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("catalog families") {
  CHECK(make_marked("dihedral(3)").model()->order() == 6);
  CHECK(make_marked("dihedral(7)").model()->order() == 14);
  CHECK(make_marked("symmetric(2)").model()->order() == 2);
  CHECK(make_marked("symmetric(4)").model()->order() == 24);
  CHECK(make_marked("symmetric(5)").model()->order() == 120);
  CHECK(make_marked("alternating(3)").model()->order() == 3);
  CHECK(make_marked("alternating(4)").model()->order() == 12);
  CHECK(make_marked("alternating(5)").model()->order() == 60);
  CHECK(make_marked("alternating(6)").model()->order() == 360);
  CHECK(make_marked("Symmetric(3)").model()->order() == 6);  // case-insensitive

  CHECK_THROWS_AS(make_marked("alternating(7)"), SpecError);
  CHECK_THROWS_AS(make_marked("nosuch(3)"), SpecError);
  CHECK_THROWS_AS(make_marked("cyclic(6) junk"), SpecError);
}

TEST_CASE("group spec documents") {
  MarkedGroup g = make_marked(R"({"kind":"cyclic","modulus":6,"marking":[1]})");
  CHECK(g.contains(W("x1^6")));

  MarkedGroup h = make_marked(R"({"kind":"perm","degree":3,
    "gens":[[[1,2]],[[1,2,3]]],"marking":["x1","x2"]})");
  CHECK(h.model()->order() == 6);

  CHECK_THROWS_AS(make_marked(R"({"kind":"wat"})"), SpecError);
  CHECK_THROWS_AS(make_marked(R"({"modulus":6})"), SpecError);
  CHECK_THROWS_AS(make_marked(R"({"kind":"cyclic","modulus":6,)"), ParseError);

  // Specs round-trip through spec_json.
  MarkedGroup q8 = make_marked("q8");
  MarkedGroup q8again = make_marked(q8.spec_json());
  Rng rng(425);
  for (int trial = 0; trial < 100; ++trial) {
    FreeWord w = random_word(rng, 2, 8);
    CHECK(q8.contains(w) == q8again.contains(w));
  }
  CHECK(q8.spec_json() == q8again.spec_json());

  MarkedGroup prod = make_marked("product(dihedral(3), cyclic(2))");
  CHECK(make_marked(prod.spec_json()).model()->order() == 12);
}

TEST_CASE("rank mismatches are rejected") {
  MarkedGroup z6 = make_marked("cyclic(6)");
  CHECK_THROWS_AS(z6.contains(W("x2")), RankMismatch);
  CHECK_THROWS_AS(z6.norm(W("x2")), RankMismatch);
  MarkedGroup q8 = make_marked("q8");
  CHECK_THROWS_AS(q8.contains(W("x1", 3)), RankMismatch);
}

TEST_CASE("template instantiation") {
  nlohmann::json tmpl =
      nlohmann::json::parse(R"({"kind":"cyclic","modulus":"$r","marking":[1]})");
  nlohmann::json at7 = instantiate_template(tmpl, 7);
  CHECK(at7.at("modulus") == 7);
  MarkedGroup g = make_marked(at7);
  CHECK(g.contains(W("x1^7")));
  CHECK_FALSE(g.contains(W("x1^6")));
}
