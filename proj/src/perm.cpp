#include "mgl/perm.hpp"

#include <numeric>

namespace mgl {

Perm::Perm(int degree) {
  if (degree < 1) throw SpecError("permutation degree must be positive");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 0);
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int img : images_) {
    if (img < 0 || img >= static_cast<int>(images_.size()) || seen[img]) {
      throw SpecError("image table is not a permutation");
    }
    seen[img] = 1;
  }
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  for (const auto& cycle : cycles) {
    Perm c(degree);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      int to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > degree || to < 1 || to > degree) {
        throw SpecError("cycle point out of range 1.." + std::to_string(degree));
      }
      if (c.images_[from - 1] != from - 1) {
        throw SpecError("point " + std::to_string(from) + " repeated within a cycle");
      }
      c.images_[from - 1] = to - 1;
    }
    p = p * c;
  }
  return p;
}

Perm Perm::operator*(const Perm& other) const {
  if (degree() != other.degree()) throw SpecError("permutation degrees differ");
  Perm out(degree());
  for (int i = 0; i < degree(); ++i) out.images_[i] = other.images_[images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out(degree());
  for (int i = 0; i < degree(); ++i) out.images_[images_[i]] = i;
  return out;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string Perm::key() const {
  std::string out;
  for (int i = 0; i < degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out;
}

std::string Perm::cycle_str() const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out += '(';
    int p = start;
    bool first = true;
    do {
      seen[p] = 1;
      if (!first) out += ' ';
      out += std::to_string(p + 1);
      first = false;
      p = images_[p];
    } while (p != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace mgl
