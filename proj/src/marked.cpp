#include "mgl/marked.hpp"

#include <mutex>
#include <string>
#include <vector>

#include "element_index.hpp"

namespace mgl {

struct MarkedGroup::State {
  OraclePtr oracle;
  Caps caps;
  mutable std::mutex model_mutex;
  mutable ModelPtr model;
};

namespace {

// Identity containment plus inverse-closure of membership on the words of
// length <= 2 (capped); cheap smoke test that the oracle is a group.
void self_check(const GroupOracle& oracle) {
  int n = oracle.rank();
  if (!oracle.contains(FreeWord(n))) {
    throw SpecError("oracle rejects the identity word");
  }
  std::vector<FreeWord> sample = enumerate_ball(n, 2, 500);
  for (const FreeWord& w : sample) {
    if (oracle.contains(w) != oracle.contains(w.inverse())) {
      throw SpecError("oracle membership is not inverse-closed at " + w.str());
    }
  }
}

}  // namespace

MarkedGroup MarkedGroup::make(OraclePtr oracle, const Caps& caps) {
  if (!oracle) throw SpecError("null oracle");
  self_check(*oracle);
  auto state = std::make_shared<State>();
  state->oracle = std::move(oracle);
  state->caps = caps;
  MarkedGroup g(state);
  if (g.is_finite()) {
    ModelPtr m = g.model();
    if (auto expect = state->oracle->base_order(); expect && m->order() != *expect) {
      throw SpecError("marking generates only " + std::to_string(m->order()) +
                      " of " + std::to_string(*expect) + " elements");
    }
  }
  return g;
}

int MarkedGroup::rank() const { return state_->oracle->rank(); }

const GroupOracle& MarkedGroup::oracle() const { return *state_->oracle; }

bool MarkedGroup::is_finite() const { return state_->oracle->finite_hint(); }

bool MarkedGroup::contains(const FreeWord& w) const {
  return state_->oracle->contains(w);
}

bool MarkedGroup::equal(const FreeWord& u, const FreeWord& v) const {
  return contains(u * v.inverse());
}

ElementKey MarkedGroup::element_key(const FreeWord& w) const {
  if (state_->oracle->has_normal_form()) return state_->oracle->normal_form(w);
  if (ModelPtr m = model()) return m->key(m->eval(w));
  throw Error("no canonical key: oracle has no normal form and the group is not known finite");
}

int MarkedGroup::norm(const FreeWord& w) const {
  if (contains(w)) return 0;
  if (ModelPtr m = model()) return m->norm(m->eval(w));
  // BFS over group elements by increasing norm until w's element appears.
  const GroupOracle& oracle = *state_->oracle;
  bool keyed = oracle.has_normal_form();
  ElementKey target = keyed ? oracle.normal_form(w) : ElementKey{};
  ElementIndexer index(oracle);
  index.insert(FreeWord(rank()));
  std::vector<int> depth{0};
  for (int head = 0; head < index.size(); ++head) {
    for (int i = 1; i <= rank(); ++i) {
      for (bool inverse : {false, true}) {
        FreeWord next = index.rep(head) * FreeWord::generator(rank(), i, inverse);
        auto [idx, inserted] = index.insert(next);
        if (!inserted) continue;
        if (index.size() > state_->caps.max_group_ball) {
          throw CapExceeded("norm search exceeds group ball cap", depth[head]);
        }
        depth.push_back(depth[head] + 1);
        bool hit = keyed ? index.key(idx) == target
                         : oracle.contains(w * next.inverse());
        if (hit) return depth[idx];
      }
    }
  }
  throw Error("norm: element not reached; marking does not generate");
}

MarkedGroup MarkedGroup::padded() const {
  return make(make_padded_oracle(state_->oracle), state_->caps);
}

ModelPtr MarkedGroup::model() const {
  if (!is_finite()) return nullptr;
  std::lock_guard<std::mutex> lock(state_->model_mutex);
  if (!state_->model) {
    state_->model = FiniteModel::build(*state_->oracle, state_->caps);
  }
  return state_->model;
}

const Caps& MarkedGroup::caps() const { return state_->caps; }

std::string MarkedGroup::describe() const { return state_->oracle->describe(); }

nlohmann::json MarkedGroup::spec_json() const { return state_->oracle->spec_json(); }

bool contains(const MarkedGroup& g, const FreeWord& w) { return g.contains(w); }
int norm(const MarkedGroup& g, const FreeWord& w) { return g.norm(w); }
MarkedGroup pad_marking(const MarkedGroup& g) { return g.padded(); }
bool equal_elements(const MarkedGroup& g, const FreeWord& u, const FreeWord& v) {
  return g.equal(u, v);
}
ElementKey element_key(const MarkedGroup& g, const FreeWord& w) {
  return g.element_key(w);
}

}  // namespace mgl
