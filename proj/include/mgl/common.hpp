#ifndef MGL_COMMON_HPP_
#define MGL_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mgl {

// Canonical identifier of a group element. The encoding is oracle-specific
// (residue, permutation image table, chosen representative word, ...); the
// only contract is that equal keys mean equal elements within one group.
using ElementKey = std::string;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Word-grammar or spec-file syntax error; `position` is a 0-based offset
// into the offending text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed group/sequence spec (bad Cayley table, marking that does not
// generate, unknown kind, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap was hit before the computation finished.
// `partial` carries the radius/size reached, when meaningful.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what, long long partial = -1)
      : Error(what), partial_(partial) {}
  long long partial() const { return partial_; }

 private:
  long long partial_;
};

// A LEF witness whose map is undefined on a probed element. Kept distinct
// from a failing verdict: the witness cannot be evaluated at all.
class IncompleteWitness : public Error {
 public:
  using Error::Error;
};

// Resource caps shared by all modules. All values must stay positive.
struct Caps {
  long long max_free_ball = 5'000'000;   // reduced words enumerated per ball
  long long max_group_ball = 200'000;    // group elements per BFS ball/closure
  long long max_evaluations = 10'000'000;  // word-map evaluations per value set
  int nu_cap = 16;                       // default radius cap for nu/distance
  int r_max = 50;                        // default sampled sequence indices
  long long max_word_letters = 1'000'000;  // letters in a single reduced word
};

}  // namespace mgl

#endif  // MGL_COMMON_HPP_
