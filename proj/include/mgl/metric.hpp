#ifndef MGL_METRIC_HPP_
#define MGL_METRIC_HPP_

#include <string>

#include "mgl/marked.hpp"

namespace mgl {

// nu(N, N') observed at a finite cap. Exact(v): the marked groups agree on
// B_F(v) and disagree on B_F(v+1). AtLeast(cap): agreement through B_F(cap);
// the true value may be anything >= cap, including infinity (equal groups).
struct NuResult {
  bool exact = false;
  int value = 0;

  static NuResult Exact(int v) { return {true, v}; }
  static NuResult AtLeast(int cap) { return {false, cap}; }

  // Agreement radius established in either case.
  int lower() const { return value; }
  std::string str() const;

  bool operator==(const NuResult&) const = default;
};

// d = 2^-exponent when exact, d <= 2^-exponent otherwise. Never collapsed
// to 0: zero distance is unobservable at any finite cap.
struct DyadicBound {
  bool exact = false;
  int exponent = 0;

  std::string str() const;

  bool operator==(const DyadicBound&) const = default;
};

// Least length of a reduced word on which membership differs, minus one.
// Scans B_F(r) for r = 1..cap by iterative deepening; throws RankMismatch on
// unequal ranks, CapExceeded (partial = last completed radius) once a level
// would exceed caps.max_free_ball words.
NuResult nu(const MarkedGroup& g, const MarkedGroup& h, int cap,
            const Caps& caps = {});

DyadicBound distance(const MarkedGroup& g, const MarkedGroup& h, int cap,
                     const Caps& caps = {});

// Strong triangle inequality d(G,K) <= max(d(G,H), d(H,K)), i.e.
// nu(G,K) >= min(nu(G,H), nu(H,K)), on interval semantics: AtLeast(c) spans
// [c, infinity]. True unless the inequality fails for every value in the
// intervals.
bool triangle_consistent(const NuResult& gk, const NuResult& gh,
                         const NuResult& hk);

}  // namespace mgl

#endif  // MGL_METRIC_HPP_
