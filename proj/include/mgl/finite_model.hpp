#ifndef MGL_FINITE_MODEL_HPP_
#define MGL_FINITE_MODEL_HPP_

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "mgl/oracle.hpp"
#include "mgl/word.hpp"

namespace mgl {

// Fully enumerated copy of a finite marked group. Elements are indexed
// 0..order-1 in BFS discovery order from the identity, stepping by the
// letters +1,-1,+2,-2,...; consequently indices are sorted by word norm and
// the elements of norm <= R form a prefix.
class FiniteModel {
 public:
  // BFS closure over the marked generators. Throws CapExceeded once more
  // than caps.max_group_ball elements are discovered.
  static std::shared_ptr<const FiniteModel> build(const GroupOracle& oracle,
                                                  const Caps& caps = {});

  int order() const { return static_cast<int>(keys_.size()); }
  int rank() const { return rank_; }

  // elem * s_letter^{sign(letter)}, letter in +-1..+-rank.
  int step(int elem, int letter) const {
    return step_[static_cast<std::size_t>(elem) * 2 * rank_ + slot(letter)];
  }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  int norm(int elem) const { return norms_[elem]; }
  const FreeWord& rep(int elem) const { return reps_[elem]; }
  const ElementKey& key(int elem) const { return keys_[elem]; }

  // Index of the image of w (walks the step table from the identity).
  int eval(const FreeWord& w) const;

  std::optional<int> index_of_key(const ElementKey& k) const;

  // Image of x_index, 1-based.
  int generator(int index) const { return step(0, index); }

 private:
  FiniteModel() = default;
  static std::size_t slot(int letter) {
    return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
  }

  int rank_ = 0;
  std::vector<ElementKey> keys_;
  std::vector<FreeWord> reps_;
  std::vector<int> norms_;
  std::vector<int> step_;
  std::vector<int> inv_;
  std::map<ElementKey, int> index_;
};

using ModelPtr = std::shared_ptr<const FiniteModel>;

}  // namespace mgl

#endif  // MGL_FINITE_MODEL_HPP_
