#include "mgl/ball.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "element_index.hpp"

namespace mgl {

namespace {

// True for labels whose marking element is the identity of G: they carry no
// edges (but still occupy a label slot).
std::vector<bool> identity_labels(const MarkedGroup& g) {
  std::vector<bool> is_e(g.rank() + 1, false);
  for (int i = 1; i <= g.rank(); ++i) {
    is_e[i] = g.contains(FreeWord::generator(g.rank(), i));
  }
  return is_e;
}

LabeledBall ball_from_model(const MarkedGroup& g, int radius) {
  ModelPtr m = g.model();
  LabeledBall ball;
  ball.radius = radius;
  ball.rank = g.rank();
  // Model indices are BFS discovery order, so norms are nondecreasing and
  // the ball is a prefix.
  int cutoff = 0;
  while (cutoff < m->order() && m->norm(cutoff) <= radius) ++cutoff;
  ball.vertices.reserve(cutoff);
  for (int v = 0; v < cutoff; ++v) {
    ball.vertices.push_back({m->key(v), m->rep(v), m->norm(v)});
  }
  for (int u = 0; u < cutoff; ++u) {
    for (int i = 1; i <= ball.rank; ++i) {
      if (m->generator(i) == 0) continue;  // s_i = e_G
      int v = m->step(u, i);
      if (v < cutoff) ball.edges.push_back({u, v, i});
    }
  }
  return ball;
}

LabeledBall ball_generic(const MarkedGroup& g, int radius, const Caps& caps) {
  const GroupOracle& oracle = g.oracle();
  int n = g.rank();
  LabeledBall ball;
  ball.radius = radius;
  ball.rank = n;

  ElementIndexer index(oracle);
  index.insert(FreeWord(n));
  std::vector<int> depth{0};
  for (int head = 0; head < index.size(); ++head) {
    if (depth[head] >= radius) break;  // BFS: no vertex beyond this expands
    for (int i = 1; i <= n; ++i) {
      for (bool inverse : {false, true}) {
        FreeWord next = index.rep(head) * FreeWord::generator(n, i, inverse);
        auto [idx, inserted] = index.insert(next);
        (void)idx;
        if (!inserted) continue;
        if (index.size() > caps.max_group_ball) {
          throw CapExceeded("ball exceeds " + std::to_string(caps.max_group_ball) +
                                " vertices",
                            depth[head]);
        }
        depth.push_back(depth[head] + 1);
      }
    }
  }
  for (int v = 0; v < index.size(); ++v) {
    ball.vertices.push_back({index.key(v), index.rep(v), depth[v]});
  }

  std::vector<bool> is_e = identity_labels(g);
  for (int u = 0; u < index.size(); ++u) {
    for (int i = 1; i <= n; ++i) {
      if (is_e[i]) continue;
      FreeWord target = index.rep(u) * FreeWord::generator(n, i);
      if (std::optional<int> v = index.lookup(target)) {
        ball.edges.push_back({u, *v, i});
      }
    }
  }
  return ball;
}

void append_u32(std::string& out, unsigned long long value) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((value >> shift) & 0xff));
  }
}

}  // namespace

LabeledBall build_ball(const MarkedGroup& g, int radius, const Caps& caps) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  if (g.is_finite()) {
    try {
      return ball_from_model(g, radius);
    } catch (const CapExceeded&) {
      // Model too large for the cap; the radius-bounded BFS may still fit.
    }
  }
  return ball_generic(g, radius, caps);
}

std::vector<int> canonical_order(const LabeledBall& ball) {
  int n = ball.rank;
  int count = static_cast<int>(ball.vertices.size());
  // Per-vertex out/in neighbor by label; -1 when absent. At most one each,
  // by the ball invariants.
  std::vector<int> out(static_cast<std::size_t>(count) * n, -1);
  std::vector<int> in(static_cast<std::size_t>(count) * n, -1);
  for (const BallEdge& e : ball.edges) {
    out[static_cast<std::size_t>(e.src) * n + e.label - 1] = e.dst;
    in[static_cast<std::size_t>(e.dst) * n + e.label - 1] = e.src;
  }

  std::vector<int> order;
  order.reserve(count);
  std::vector<int> position(count, -1);
  order.push_back(0);
  position[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int u = order[head];
    for (int i = 0; i < n; ++i) {
      for (const std::vector<int>* adj : {&out, &in}) {
        int v = (*adj)[static_cast<std::size_t>(u) * n + i];
        if (v >= 0 && position[v] < 0) {
          position[v] = static_cast<int>(order.size());
          order.push_back(v);
        }
      }
    }
  }
  if (static_cast<int>(order.size()) != count) {
    throw Error("ball is not connected to its root");
  }
  return order;
}

BallCode canonical_code(const LabeledBall& ball) {
  int n = ball.rank;
  std::vector<int> order = canonical_order(ball);
  std::vector<int> position(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = static_cast<int>(k);

  std::vector<int> out(order.size() * n, -1);
  for (const BallEdge& e : ball.edges) {
    out[static_cast<std::size_t>(e.src) * n + e.label - 1] = e.dst;
  }

  BallCode code;
  append_u32(code, static_cast<unsigned>(ball.radius));
  append_u32(code, static_cast<unsigned>(n));
  append_u32(code, order.size());
  append_u32(code, ball.edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    int u = order[k];
    for (int i = 0; i < n; ++i) {
      int v = out[static_cast<std::size_t>(u) * n + i];
      // 0 = no edge, else canonical target + 1.
      append_u32(code, v < 0 ? 0u : static_cast<unsigned>(position[v]) + 1u);
    }
  }
  return code;
}

std::string code_hex(const BallCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char c : code) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

bool balls_isomorphic(const LabeledBall& a, const LabeledBall& b) {
  if (a.rank != b.rank) {
    throw RankMismatch("cannot compare balls over different label alphabets");
  }
  return canonical_code(a) == canonical_code(b);
}

std::string ball_dot(const LabeledBall& ball) {
  std::string out = "digraph ball {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    out += "  " + std::to_string(v) + " [label=\"" + ball.vertices[v].rep.str() + "\"";
    if (v == 0) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (const BallEdge& e : ball.edges) {
    out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
           " [label=\"s" + std::to_string(e.label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

nlohmann::json ball_json(const LabeledBall& ball) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const BallVertex& v : ball.vertices) vertices.push_back(v.rep.str());
  nlohmann::json edges = nlohmann::json::array();
  for (const BallEdge& e : ball.edges) {
    edges.push_back(nlohmann::json::array({e.src, e.dst, e.label}));
  }
  return {{"schema", "mgl/1"},
          {"radius", ball.radius},
          {"rank", ball.rank},
          {"vertices", vertices},
          {"edges", edges}};
}

}  // namespace mgl
