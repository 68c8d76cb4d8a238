#include "mgl/metric.hpp"

#include <algorithm>
#include <vector>

#include "mgl/word.hpp"

namespace mgl {

namespace {

// Membership of the DFS path word, O(1) per step when a finite model is
// available, oracle evaluation otherwise.
class SideWalker {
 public:
  explicit SideWalker(const MarkedGroup& g) : oracle_(&g.oracle()), rank_(g.rank()) {
    if (g.is_finite()) {
      try {
        model_ = g.model();
      } catch (const CapExceeded&) {
        // Group larger than the model cap; fall back to oracle calls.
      }
    }
    if (model_) stack_.push_back(0);
  }

  void push(int letter) {
    if (model_) stack_.push_back(model_->step(stack_.back(), letter));
  }
  void pop() {
    if (model_) stack_.pop_back();
  }

  bool contains(const std::vector<int>& path) const {
    if (model_) return stack_.back() == 0;
    return oracle_->contains(FreeWord::reduce(rank_, path));
  }

 private:
  const GroupOracle* oracle_;
  int rank_;
  ModelPtr model_;
  std::vector<int> stack_;
};

// True when some reduced word of length exactly `target` separates the two
// memberships. Words of shorter length were checked at earlier levels.
bool mismatch_at_level(int target, int rank, SideWalker& g, SideWalker& h,
                       std::vector<int>& path) {
  std::vector<int> slot(target, 0);
  int depth = 0;
  while (true) {
    if (depth == target) {
      if (g.contains(path) != h.contains(path)) return true;
      --depth;
      path.pop_back();
      g.pop();
      h.pop();
      continue;
    }
    if (slot[depth] == 2 * rank) {
      if (depth == 0) return false;
      --depth;
      path.pop_back();
      g.pop();
      h.pop();
      continue;
    }
    int s = slot[depth]++;
    int letter = (s % 2 == 0) ? s / 2 + 1 : -(s / 2 + 1);
    if (depth > 0 && letter == -path.back()) continue;
    path.push_back(letter);
    g.push(letter);
    h.push(letter);
    ++depth;
    if (depth < target) slot[depth] = 0;
  }
}

}  // namespace

std::string NuResult::str() const {
  return (exact ? "" : ">=") + std::to_string(value);
}

std::string DyadicBound::str() const {
  std::string core = exponent == 0 ? "1" : "2^-" + std::to_string(exponent);
  return exact ? core : "<=" + core;
}

NuResult nu(const MarkedGroup& g, const MarkedGroup& h, int cap, const Caps& caps) {
  if (g.rank() != h.rank()) {
    throw RankMismatch("nu requires equal ranks, got " + std::to_string(g.rank()) +
                       " and " + std::to_string(h.rank()));
  }
  if (cap < 1) throw Error("nu cap must be at least 1");

  int rank = g.rank();
  SideWalker gw(g);
  SideWalker hw(h);
  std::vector<int> path;
  path.reserve(cap);

  long long ball = 1;    // |B_F(r-1)|, saturating just past the cap
  long long sphere = 1;  // words of length r-1
  const long long limit = caps.max_free_ball;
  for (int r = 1; r <= cap; ++r) {
    long long mult = r == 1 ? 2LL * rank : 2LL * rank - 1;
    sphere = sphere > limit / mult ? limit + 1 : sphere * mult;
    ball = std::min(limit + 1, ball + std::min(limit + 1, sphere));
    if (ball > limit) {
      throw CapExceeded("free ball B(" + std::to_string(r) + ") over rank " +
                            std::to_string(rank) + " exceeds " +
                            std::to_string(caps.max_free_ball) + " words",
                        r - 1);
    }
    if (mismatch_at_level(r, rank, gw, hw, path)) return NuResult::Exact(r - 1);
  }
  return NuResult::AtLeast(cap);
}

DyadicBound distance(const MarkedGroup& g, const MarkedGroup& h, int cap,
                     const Caps& caps) {
  NuResult v = nu(g, h, cap, caps);
  return {v.exact, v.value};
}

bool triangle_consistent(const NuResult& gk, const NuResult& gh, const NuResult& hk) {
  if (!gk.exact) return true;  // nu(G,K) can be arbitrarily large
  return gk.value >= std::min(gh.lower(), hk.lower());
}

}  // namespace mgl
