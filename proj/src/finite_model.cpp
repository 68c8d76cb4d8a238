#include "mgl/finite_model.hpp"

#include <cstdlib>
#include <string>

#include "element_index.hpp"

namespace mgl {

std::shared_ptr<const FiniteModel> FiniteModel::build(const GroupOracle& oracle,
                                                      const Caps& caps) {
  auto model = std::shared_ptr<FiniteModel>(new FiniteModel());
  int n = oracle.rank();
  model->rank_ = n;

  ElementIndexer index(oracle);
  index.insert(FreeWord(n));
  model->norms_.push_back(0);

  std::vector<int> letters;
  for (int i = 1; i <= n; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }

  for (int head = 0; head < index.size(); ++head) {
    for (int l : letters) {
      FreeWord next = index.rep(head) * FreeWord::generator(n, std::abs(l), l < 0);
      auto [idx, inserted] = index.insert(next);
      if (inserted) {
        if (index.size() > caps.max_group_ball) {
          throw CapExceeded("group element closure exceeds cap of " +
                                std::to_string(caps.max_group_ball),
                            model->norms_[head]);
        }
        model->norms_.push_back(model->norms_[head] + 1);
      }
      model->step_.push_back(idx);
    }
  }

  int order = index.size();
  model->keys_.reserve(order);
  model->reps_.reserve(order);
  for (int i = 0; i < order; ++i) {
    model->keys_.push_back(index.key(i));
    model->reps_.push_back(index.rep(i));
    model->index_.emplace(model->keys_.back(), i);
  }
  model->inv_.resize(order);
  for (int i = 0; i < order; ++i) {
    model->inv_[i] = model->eval(model->reps_[i].inverse());
  }
  return model;
}

int FiniteModel::mul(int a, int b) const {
  int cur = a;
  for (int l : reps_[b].letters()) cur = step(cur, l);
  return cur;
}

int FiniteModel::eval(const FreeWord& w) const {
  int cur = 0;
  for (int l : w.letters()) cur = step(cur, l);
  return cur;
}

std::optional<int> FiniteModel::index_of_key(const ElementKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace mgl
