#ifndef MGL_PERM_HPP_
#define MGL_PERM_HPP_

#include <string>
#include <vector>

#include "mgl/common.hpp"

namespace mgl {

// Permutation of {0,...,degree-1} as an image table. Products compose
// left-to-right: (p * q)(x) = q(p(x)).
class Perm {
 public:
  explicit Perm(int degree);                       // identity
  explicit Perm(std::vector<int> images);          // validates bijectivity

  // Cycles use 1-based points, e.g. {{1,2,3},{4,5}}. Points may repeat
  // across cycles; the cycles are applied left to right.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  Perm operator*(const Perm& other) const;
  Perm inverse() const;
  bool is_identity() const;
  bool operator==(const Perm& other) const = default;

  std::string key() const;          // comma-joined image table
  std::string cycle_str() const;    // "(1 2 3)(4 5)" or "()"

 private:
  std::vector<int> images_;
};

}  // namespace mgl

#endif  // MGL_PERM_HPP_
