#ifndef MGL_LEF_HPP_
#define MGL_LEF_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgl/common.hpp"
#include "mgl/marked.hpp"
#include "mgl/sequence.hpp"
#include "mgl/word.hpp"

namespace mgl {

// Raised when a bounded search ends without a decision; distinct from a
// refutation.
struct SearchExhausted : Error {
  using Error::Error;
};

struct LefProvenance {
  bool constructed = false;
  int r = 0;  // sequence index the ball was matched against
  int R = 0;  // ball radius carrying F and F*F
};

// A local embedding certificate: a finite subset F of the subject group, a
// finite group Q and a partial map phi from subject elements (given by
// representative words of a fixed rank) to Q element indices. phi must cover
// F and F*F; behavior elsewhere is unconstrained.
struct LefWitness {
  std::string subject;
  int rank = 0;  // rank of every subject-side word below
  std::vector<FreeWord> F;
  MarkedGroup Q;
  std::vector<std::pair<FreeWord, int>> phi;  // (subject word, Q model index)
  LefProvenance provenance;

  nlohmann::json json() const;
  static LefWitness from_json(const nlohmann::json& doc, const Caps& caps = {});
};

// Violations are index pairs into F: for injectivity an unordered pair with
// equal images, for multiplicativity an ordered pair (i, j) where
// phi(F[i]*F[j]) != phi(F[i]) * phi(F[j]).
struct LefVerdict {
  bool pass = false;
  std::vector<std::pair<std::size_t, std::size_t>> injectivity_violations;
  std::vector<std::pair<std::size_t, std::size_t>> multiplicativity_violations;
  std::string detail;

  nlohmann::json json() const;
};

// Checks the two local-embedding conditions: phi restricted to F is
// injective, and phi(gh) = phi(g) phi(h) for every ordered pair g, h from F.
// Lists every violated pair. Throws IncompleteWitness when phi misses a
// required element, SpecError on malformed witnesses (duplicate F entries,
// an infinite Q, images outside Q, rank mismatch).
LefVerdict check_lef_witness(const MarkedGroup& g, const LefWitness& wit);

struct PairCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> offending;  // domain indices

  explicit operator bool() const { return ok; }
};

// True iff phi is multiplicative on all ordered pairs from `domain` (it may
// still fail injectivity). Throws IncompleteWitness on an undefined image.
PairCheck is_homomorphism_on(const MarkedGroup& g, const MarkedGroup& q,
                             const std::vector<std::pair<FreeWord, int>>& phi,
                             const std::vector<FreeWord>& domain);

// Witness construction for a limit of finite groups: take the radius R ball
// of the limit containing F and F*F, scan members for an isomorphic R-ball
// (lowest r wins, parallelized in blocks without changing the answer) and
// read phi off the root-preserving vertex bijection. The result passes
// check_lef_witness by construction. Throws SearchExhausted when no member
// matches within r_max and SpecError when a probed member is infinite.
LefWitness lef_witness_from_limit(const GroupSequence& seq, const std::vector<FreeWord>& F,
                                  int r_max, int workers = 1);

}  // namespace mgl

#endif  // MGL_LEF_HPP_
