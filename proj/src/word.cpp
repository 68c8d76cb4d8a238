#include "mgl/word.hpp"

#include <cmath>
#include <cstdlib>

namespace mgl {

namespace {

void check_rank(int rank) {
  if (rank < 1) throw SpecError("free-group rank must be positive, got " + std::to_string(rank));
}

}  // namespace

FreeWord::FreeWord(int rank) : rank_(rank) { check_rank(rank); }

FreeWord FreeWord::reduce(int rank, std::span<const int> raw) {
  check_rank(rank);
  FreeWord w(rank);
  w.letters_.reserve(raw.size());
  for (int l : raw) {
    if (l == 0 || std::abs(l) > rank) {
      throw Error("letter " + std::to_string(l) + " out of range for rank " +
                  std::to_string(rank));
    }
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

FreeWord FreeWord::generator(int rank, int index, bool inverse) {
  check_rank(rank);
  if (index < 1 || index > rank) {
    throw Error("generator index " + std::to_string(index) +
                " out of range for rank " + std::to_string(rank));
  }
  FreeWord w(rank);
  w.letters_.push_back(inverse ? -index : index);
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
  if (rank_ != other.rank_) {
    throw RankMismatch("cannot multiply words of ranks " + std::to_string(rank_) +
                       " and " + std::to_string(other.rank_));
  }
  FreeWord w(rank_);
  w.letters_ = letters_;
  for (int l : other.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == -l) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

FreeWord FreeWord::inverse() const {
  FreeWord w(rank_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(-*it);
  }
  return w;
}

FreeWord FreeWord::substitute(std::span<const FreeWord> args) const {
  if (static_cast<int>(args.size()) != rank_) {
    throw Error("substitute: expected " + std::to_string(rank_) + " arguments, got " +
                std::to_string(args.size()));
  }
  int target_rank = args.empty() ? 1 : args[0].rank();
  std::vector<int> raw;
  for (const FreeWord& a : args) {
    if (a.rank() != target_rank) throw RankMismatch("substitute: arguments of unequal rank");
  }
  for (int l : letters_) {
    const FreeWord& a = args[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l > 0) {
      raw.insert(raw.end(), a.letters().begin(), a.letters().end());
    } else {
      for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) {
        raw.push_back(-*it);
      }
    }
  }
  return reduce(target_rank, raw);
}

FreeWord FreeWord::with_rank(int new_rank) const {
  if (new_rank < rank_) {
    throw RankMismatch("with_rank: cannot shrink rank " + std::to_string(rank_) +
                       " to " + std::to_string(new_rank));
  }
  FreeWord w(new_rank);
  w.letters_ = letters_;
  return w;
}

FreeWord FreeWord::erase_generator(int index) const {
  std::vector<int> raw;
  raw.reserve(letters_.size());
  for (int l : letters_) {
    if (std::abs(l) != index) raw.push_back(l);
  }
  return reduce(rank_, raw);
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    if (!out.empty()) out += '*';
    int l = letters_[i];
    long long exp = static_cast<long long>(j - i) * (l > 0 ? 1 : -1);
    out += 'x';
    out += std::to_string(std::abs(l));
    if (exp != 1) {
      out += '^';
      out += std::to_string(exp);
    }
    i = j;
  }
  return out;
}

namespace {

void ball_dfs(FreeWord& current, int radius, long long cap, long long& count,
              std::vector<FreeWord>& out) {
  if (current.length() >= radius) return;
  int rank = current.rank();
  int last = current.letters().empty() ? 0 : current.letters().back();
  for (int i = 1; i <= rank; ++i) {
    for (int sign : {+1, -1}) {
      int l = sign * i;
      if (l == -last) continue;  // would cancel: not a reduced extension
      FreeWord next = current * FreeWord::generator(rank, i, sign < 0);
      if (++count > cap) {
        throw CapExceeded("free ball cap of " + std::to_string(cap) +
                              " words exceeded at radius " + std::to_string(next.length()),
                          next.length() - 1);
      }
      out.push_back(next);
      ball_dfs(next, radius, cap, count, out);
    }
  }
}

}  // namespace

std::vector<FreeWord> enumerate_ball(int rank, int radius, long long cap) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  std::vector<FreeWord> out;
  FreeWord e(rank);
  long long count = 1;
  if (count > cap) throw CapExceeded("free ball cap exceeded", 0);
  out.push_back(e);
  ball_dfs(e, radius, cap, count, out);
  return out;
}

long long free_ball_size(int rank, int radius) {
  if (rank == 1) return 2LL * radius + 1;
  long long q = 2LL * rank - 1;
  long long pw = 1;
  for (int i = 0; i < radius; ++i) pw *= q;
  return 1 + 2LL * rank * (pw - 1) / (2LL * rank - 2);
}

}  // namespace mgl
