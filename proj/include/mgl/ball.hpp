#ifndef MGL_BALL_HPP_
#define MGL_BALL_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "mgl/marked.hpp"

namespace mgl {

struct BallVertex {
  ElementKey key;
  FreeWord rep;
  int norm;
};

struct BallEdge {
  int src;
  int dst;
  int label;  // generator index 1..rank

  bool operator==(const BallEdge&) const = default;
};

// Radius-R ball of the Cayley graph of (G, S) as a rooted labeled digraph.
// Vertex 0 is the identity; vertices appear in BFS discovery order over the
// letters +1,-1,+2,-2,... An edge (u,v,i) means v = u * s_i and is present
// only when both endpoints lie in the ball and s_i != e_G; consequently each
// vertex has at most one in- and one out-edge per label.
struct LabeledBall {
  int radius = 0;
  int rank = 0;
  std::vector<BallVertex> vertices;
  std::vector<BallEdge> edges;  // sorted by (src, label)
};

// BFS construction. Throws CapExceeded (with the radius completed so far as
// `partial`) once the vertex count would exceed caps.max_group_ball.
LabeledBall build_ball(const MarkedGroup& g, int radius, const Caps& caps = {});

// Canonical serialization of the rooted labeled digraph: a deterministic
// BFS from the root (following out- then in-edges per label, labels
// ascending) assigns canonical vertex numbers; the code records radius,
// rank, vertex count and every vertex's out-targets per label. Two balls of
// equal radius get equal codes iff a root- and label-preserving digraph
// isomorphism exists.
using BallCode = std::string;
BallCode canonical_code(const LabeledBall& ball);
std::string code_hex(const BallCode& code);

// order[k] = index (into ball.vertices) of the vertex with canonical number
// k. Aligning two isomorphic balls by canonical number gives the unique
// root-preserving isomorphism realized by the codes.
std::vector<int> canonical_order(const LabeledBall& ball);

// Equal radii required to compare; throws RankMismatch on different ranks.
bool balls_isomorphic(const LabeledBall& a, const LabeledBall& b);

std::string ball_dot(const LabeledBall& ball);
nlohmann::json ball_json(const LabeledBall& ball);

}  // namespace mgl

#endif  // MGL_BALL_HPP_
