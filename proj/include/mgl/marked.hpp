#ifndef MGL_MARKED_HPP_
#define MGL_MARKED_HPP_

#include <memory>
#include <string>

#include "json.hpp"
#include "mgl/finite_model.hpp"
#include "mgl/oracle.hpp"
#include "mgl/word.hpp"

namespace mgl {

// A marked group (G, S): rank n plus a word-problem oracle, semantically the
// normal subgroup N of F_n with F_n/N = G. Cheap to copy; all state is
// shared and immutable (the finite model is built lazily, thread-safely).
class MarkedGroup {
 public:
  // Validates the oracle: identity containment, inverse-closure on a small
  // word sample, and (finite oracles with a known base order) that the
  // marking generates. Throws SpecError on violation.
  static MarkedGroup make(OraclePtr oracle, const Caps& caps = {});

  int rank() const;
  const GroupOracle& oracle() const;
  bool is_finite() const;

  // w in N, i.e. w evaluates to the identity of G.
  bool contains(const FreeWord& w) const;
  // contains(u * v^-1).
  bool equal(const FreeWord& u, const FreeWord& v) const;
  // Stable canonical key of w's image. Uses the oracle normal form when
  // present, otherwise the finite model; throws Error when neither applies.
  ElementKey element_key(const FreeWord& w) const;
  // Word norm |w|_S: BFS distance from the identity over S and S^-1.
  int norm(const FreeWord& w) const;

  // Same group with e_G appended to the marking (the embedding into the
  // space of (rank+1)-marked groups).
  MarkedGroup padded() const;

  // Enumerated model; nullptr when the group is not known finite. Built on
  // first use and cached.
  ModelPtr model() const;

  const Caps& caps() const;
  std::string describe() const;
  nlohmann::json spec_json() const;

 private:
  struct State;
  explicit MarkedGroup(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

// Free-function forms of the MarkedGroup accessors.
bool contains(const MarkedGroup& g, const FreeWord& w);
int norm(const MarkedGroup& g, const FreeWord& w);
MarkedGroup pad_marking(const MarkedGroup& g);
bool equal_elements(const MarkedGroup& g, const FreeWord& u, const FreeWord& v);
ElementKey element_key(const MarkedGroup& g, const FreeWord& w);

}  // namespace mgl

#endif  // MGL_MARKED_HPP_
