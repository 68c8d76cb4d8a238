#ifndef MGL_WORD_HPP_
#define MGL_WORD_HPP_

#include <span>
#include <string>
#include <vector>

#include "mgl/common.hpp"

namespace mgl {

// A reduced word in the free group F_n. Letters are stored as nonzero
// integers: +i stands for x_i, -i for x_i^-1, 1 <= i <= rank. The letter
// sequence never contains an adjacent cancelling pair.
class FreeWord {
 public:
  // The identity of F_rank.
  explicit FreeWord(int rank);

  // Free reduction of an arbitrary letter sequence. Throws Error on a letter
  // out of range, SpecError on rank < 1.
  static FreeWord reduce(int rank, std::span<const int> raw);

  // x_i or x_i^-1 as a one-letter word.
  static FreeWord generator(int rank, int index, bool inverse = false);

  int rank() const { return rank_; }
  const std::vector<int>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  // Product of reduced words (cancellation at the seam only).
  FreeWord operator*(const FreeWord& other) const;
  FreeWord inverse() const;

  // Simultaneous substitution x_i -> args[i-1]; requires args.size() == rank
  // and all args of equal rank. Result is reduced over the args' rank.
  FreeWord substitute(std::span<const FreeWord> args) const;

  // Same word viewed in a larger free group (new_rank >= rank).
  FreeWord with_rank(int new_rank) const;

  // Drops every occurrence of x_index^(+-1) and re-reduces.
  FreeWord erase_generator(int index) const;

  // Canonical printable form, e.g. "x1^2*x2^-1"; identity prints as "e".
  // parse_word() round-trips this exactly.
  std::string str() const;

  bool operator==(const FreeWord& other) const = default;

 private:
  int rank_;
  std::vector<int> letters_;
};

// All reduced words of length <= radius in F_rank, identity first, in
// depth-first order over the letter sequence +1,-1,+2,-2,... Throws
// CapExceeded once more than cap words would be produced.
std::vector<FreeWord> enumerate_ball(int rank, int radius,
                                     long long cap = Caps{}.max_free_ball);

// |enumerate_ball(rank, radius)| by the closed formula:
// 2r+1 for rank 1, and 1 + 2n((2n-1)^r - 1)/(2n-2) for rank n >= 2.
long long free_ball_size(int rank, int radius);

}  // namespace mgl

#endif  // MGL_WORD_HPP_
