#include "mgl/lef.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "mgl/ball.hpp"
#include "mgl/finite_model.hpp"
#include "mgl/group_spec.hpp"
#include "mgl/parallel.hpp"
#include "mgl/word_parse.hpp"

namespace mgl {

namespace {

// Resolves phi at subject elements: by element key when the subject admits
// one, otherwise by scanning entries with element equality (first match
// wins; keyless witnesses are trusted not to repeat elements).
class PhiMap {
 public:
  PhiMap(const MarkedGroup& g, const std::vector<std::pair<FreeWord, int>>& phi)
      : g_(g), entries_(phi), keyed_(g.oracle().has_normal_form() || g.is_finite()) {
    if (!keyed_) return;
    for (const auto& [word, image] : entries_) {
      auto [it, fresh] = by_key_.emplace(g.element_key(word), image);
      if (!fresh && it->second != image) {
        throw SpecError("phi maps the element " + word.str() + " to two images");
      }
    }
  }

  std::optional<int> find(const FreeWord& x) const {
    if (keyed_) {
      auto it = by_key_.find(g_.element_key(x));
      if (it == by_key_.end()) return std::nullopt;
      return it->second;
    }
    for (const auto& [word, image] : entries_) {
      if (g_.equal(word, x)) return image;
    }
    return std::nullopt;
  }

  int require(const FreeWord& x) const {
    std::optional<int> image = find(x);
    if (!image) throw IncompleteWitness("phi is undefined at " + x.str());
    return *image;
  }

 private:
  const MarkedGroup& g_;
  const std::vector<std::pair<FreeWord, int>>& entries_;
  bool keyed_;
  std::unordered_map<ElementKey, int> by_key_;
};

void require_distinct_in(const MarkedGroup& g, const std::vector<FreeWord>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (g.equal(words[i], words[j])) {
        throw SpecError("F entries " + words[i].str() + " and " + words[j].str() +
                        " name the same group element");
      }
    }
  }
}

}  // namespace

nlohmann::json LefWitness::json() const {
  nlohmann::json f = nlohmann::json::array();
  for (const FreeWord& w : F) f.push_back(w.str());
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [word, image] : phi) {
    entries.push_back(nlohmann::json::array({word.str(), image}));
  }
  nlohmann::json prov;
  if (provenance.constructed) {
    prov = {{"kind", "constructed"}, {"r", provenance.r}, {"R", provenance.R}};
  } else {
    prov = {{"kind", "manual"}};
  }
  return {{"schema", "mgl/1"}, {"subject", subject}, {"rank", rank},     {"F", f},
          {"Q", Q.spec_json()}, {"phi", entries},    {"provenance", prov}};
}

LefWitness LefWitness::from_json(const nlohmann::json& doc, const Caps& caps) {
  try {
    int rank = doc.at("rank").get<int>();
    if (rank < 1) throw SpecError("witness rank must be positive");
    MarkedGroup q = make_marked(doc.at("Q"), caps);
    LefWitness wit{doc.value("subject", std::string{}), rank, {}, q, {}, {}};
    for (const auto& s : doc.at("F")) {
      wit.F.push_back(parse_free_word(s.get<std::string>(), rank, caps));
    }
    for (const auto& entry : doc.at("phi")) {
      wit.phi.emplace_back(parse_free_word(entry.at(0).get<std::string>(), rank, caps),
                           entry.at(1).get<int>());
    }
    if (doc.contains("provenance")) {
      const nlohmann::json& prov = doc.at("provenance");
      if (prov.value("kind", "manual") == "constructed") {
        wit.provenance = {true, prov.value("r", 0), prov.value("R", 0)};
      }
    }
    return wit;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed witness document: ") + e.what());
  }
}

nlohmann::json LefVerdict::json() const {
  auto pairs = [](const std::vector<std::pair<std::size_t, std::size_t>>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [i, j] : v) out.push_back(nlohmann::json::array({i, j}));
    return out;
  };
  return {{"schema", "mgl/1"},
          {"pass", pass},
          {"injectivity_violations", pairs(injectivity_violations)},
          {"multiplicativity_violations", pairs(multiplicativity_violations)},
          {"detail", detail}};
}

LefVerdict check_lef_witness(const MarkedGroup& g, const LefWitness& wit) {
  if (wit.rank != g.rank()) {
    throw RankMismatch("witness words have rank " + std::to_string(wit.rank) +
                       " but the group has rank " + std::to_string(g.rank()));
  }
  if (!wit.Q.is_finite()) throw SpecError("the witness target group must be finite");
  ModelPtr qmodel = wit.Q.model();
  for (const auto& [word, image] : wit.phi) {
    if (image < 0 || image >= qmodel->order()) {
      throw SpecError("phi image " + std::to_string(image) + " is outside the target group");
    }
  }
  require_distinct_in(g, wit.F);

  PhiMap phi(g, wit.phi);
  std::vector<int> images;
  images.reserve(wit.F.size());
  for (const FreeWord& f : wit.F) images.push_back(phi.require(f));

  LefVerdict verdict;
  for (std::size_t i = 0; i < wit.F.size(); ++i) {
    for (std::size_t j = i + 1; j < wit.F.size(); ++j) {
      if (images[i] == images[j]) verdict.injectivity_violations.emplace_back(i, j);
    }
  }
  for (std::size_t i = 0; i < wit.F.size(); ++i) {
    for (std::size_t j = 0; j < wit.F.size(); ++j) {
      int lhs = phi.require(wit.F[i] * wit.F[j]);
      if (lhs != qmodel->mul(images[i], images[j])) {
        verdict.multiplicativity_violations.emplace_back(i, j);
      }
    }
  }
  verdict.pass =
      verdict.injectivity_violations.empty() && verdict.multiplicativity_violations.empty();
  if (!verdict.pass) {
    if (!verdict.injectivity_violations.empty()) {
      auto [i, j] = verdict.injectivity_violations.front();
      verdict.detail = "phi identifies the distinct elements " + wit.F[i].str() + " and " +
                       wit.F[j].str();
    } else {
      auto [i, j] = verdict.multiplicativity_violations.front();
      verdict.detail = "phi(" + wit.F[i].str() + " * " + wit.F[j].str() +
                       ") differs from phi(" + wit.F[i].str() + ") * phi(" + wit.F[j].str() + ")";
    }
  }
  return verdict;
}

PairCheck is_homomorphism_on(const MarkedGroup& g, const MarkedGroup& q,
                             const std::vector<std::pair<FreeWord, int>>& phi,
                             const std::vector<FreeWord>& domain) {
  if (!q.is_finite()) throw SpecError("the image group must be finite");
  ModelPtr qmodel = q.model();
  PhiMap map(g, phi);
  std::vector<int> images;
  images.reserve(domain.size());
  for (const FreeWord& f : domain) images.push_back(map.require(f));
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = 0; j < domain.size(); ++j) {
      if (map.require(domain[i] * domain[j]) != qmodel->mul(images[i], images[j])) {
        return {false, std::make_pair(i, j)};
      }
    }
  }
  return {};
}

LefWitness lef_witness_from_limit(const GroupSequence& seq, const std::vector<FreeWord>& F,
                                  int r_max, int workers) {
  if (r_max < 1) throw Error("r_max must be at least 1");
  if (std::optional<int> count = seq.member_count()) r_max = std::min(r_max, *count);
  if (!seq.limit()) throw SpecError("sequence has no designated limit");
  const MarkedGroup& limit = *seq.limit();
  const Caps& caps = seq.caps();
  for (const FreeWord& f : F) {
    if (f.rank() != limit.rank()) {
      throw RankMismatch("F word " + f.str() + " has rank " + std::to_string(f.rank()) +
                         " but the limit has rank " + std::to_string(limit.rank()));
    }
  }
  require_distinct_in(limit, F);

  int R = 0;
  for (const FreeWord& f : F) R = std::max(R, limit.norm(f));
  for (const FreeWord& f : F) {
    for (const FreeWord& h : F) R = std::max(R, limit.norm(f * h));
  }

  LabeledBall limit_ball = build_ball(limit, R, caps);
  BallCode limit_code = canonical_code(limit_ball);

  // Lowest matching member wins; fixed-size blocks keep the winner
  // independent of the worker count.
  int block = std::max(workers, 1);
  int found = 0;
  for (int base = 1; base <= r_max && found == 0; base += block) {
    int count = std::min(block, r_max - base + 1);
    std::vector<int> hits =
        parallel_map(static_cast<std::size_t>(count), workers, [&](std::size_t k) -> int {
          MarkedGroup member = seq.member(base + static_cast<int>(k));
          if (!member.is_finite()) {
            throw SpecError("witness construction needs finite members; member " +
                            std::to_string(base + static_cast<int>(k)) + " is not known finite");
          }
          return canonical_code(build_ball(member, R, caps)) == limit_code ? 1 : 0;
        });
    for (int k = 0; k < count; ++k) {
      if (hits[static_cast<std::size_t>(k)] != 0) {
        found = base + k;
        break;
      }
    }
  }
  if (found == 0) {
    throw SearchExhausted("no member ball of radius " + std::to_string(R) +
                          " matches the limit within r_max = " + std::to_string(r_max));
  }

  MarkedGroup q = seq.member(found);
  LabeledBall member_ball = build_ball(q, R, caps);
  std::vector<int> limit_order = canonical_order(limit_ball);
  std::vector<int> member_order = canonical_order(member_ball);
  ModelPtr qmodel = q.model();

  LefWitness wit{limit.describe(), limit.rank(), F, q, {}, {true, found, R}};
  wit.phi.reserve(limit_order.size());
  for (std::size_t k = 0; k < limit_order.size(); ++k) {
    const FreeWord& source = limit_ball.vertices[static_cast<std::size_t>(limit_order[k])].rep;
    const FreeWord& target = member_ball.vertices[static_cast<std::size_t>(member_order[k])].rep;
    wit.phi.emplace_back(source, qmodel->eval(target));
  }
  return wit;
}

}  // namespace mgl
