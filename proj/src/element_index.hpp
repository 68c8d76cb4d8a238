#ifndef MGL_SRC_ELEMENT_INDEX_HPP_
#define MGL_SRC_ELEMENT_INDEX_HPP_

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mgl/oracle.hpp"
#include "mgl/word.hpp"

namespace mgl {

// Assigns dense indices to group elements in first-seen order. Uses the
// oracle's normal form when available; otherwise falls back to pairwise
// membership tests contains(w * rep_i^-1), with the first-seen representative
// word doubling as the element's key.
class ElementIndexer {
 public:
  explicit ElementIndexer(const GroupOracle& oracle)
      : oracle_(oracle), keyed_(oracle.has_normal_form()) {}

  // Index of w's element; inserts a new slot when unseen.
  std::pair<int, bool> insert(const FreeWord& w) {
    if (keyed_) {
      ElementKey k = oracle_.normal_form(w);
      auto [it, inserted] = by_key_.emplace(std::move(k), size());
      if (inserted) {
        keys_.push_back(it->first);
        reps_.push_back(w);
      }
      return {it->second, inserted};
    }
    for (int i = 0; i < size(); ++i) {
      if (oracle_.contains(w * reps_[i].inverse())) return {i, false};
    }
    reps_.push_back(w);
    keys_.push_back(w.str());
    by_key_.emplace(keys_.back(), size() - 1);
    return {size() - 1, true};
  }

  // Index of w's element if already seen; never inserts.
  std::optional<int> lookup(const FreeWord& w) const {
    if (keyed_) return find(oracle_.normal_form(w));
    for (int i = 0; i < size(); ++i) {
      if (oracle_.contains(w * reps_[i].inverse())) return i;
    }
    return std::nullopt;
  }

  int size() const { return static_cast<int>(reps_.size()); }
  const ElementKey& key(int index) const { return keys_[index]; }
  const FreeWord& rep(int index) const { return reps_[index]; }

  std::optional<int> find(const ElementKey& k) const {
    auto it = by_key_.find(k);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
  }

 private:
  const GroupOracle& oracle_;
  bool keyed_;
  std::vector<ElementKey> keys_;
  std::vector<FreeWord> reps_;
  std::map<ElementKey, int> by_key_;
};

}  // namespace mgl

#endif  // MGL_SRC_ELEMENT_INDEX_HPP_
