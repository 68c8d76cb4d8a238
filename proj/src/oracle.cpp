#include "mgl/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

namespace mgl {

void GroupOracle::check_rank(const FreeWord& w) const {
  if (w.rank() != rank()) {
    throw RankMismatch("word of rank " + std::to_string(w.rank()) +
                       " against group of rank " + std::to_string(rank()));
  }
}

namespace {

long long mod_reduce(long long v, long long m) {
  if (m == 0) return v;
  v %= m;
  return v < 0 ? v + m : v;
}

class CyclicOracle final : public GroupOracle {
 public:
  CyclicOracle(long long modulus, std::vector<long long> marking)
      : modulus_(modulus), marking_(std::move(marking)) {
    if (modulus_ < 0) throw SpecError("cyclic modulus must be >= 0");
    if (marking_.empty()) throw SpecError("empty marking");
    for (long long& v : marking_) v = mod_reduce(v, modulus_);
  }

  int rank() const override { return static_cast<int>(marking_.size()); }

  bool contains(const FreeWord& w) const override { return eval(w) == 0; }

  bool has_normal_form() const override { return true; }

  ElementKey normal_form(const FreeWord& w) const override {
    return std::to_string(eval(w));
  }

  bool finite_hint() const override { return modulus_ != 0; }

  std::optional<long long> base_order() const override {
    if (modulus_ == 0) return std::nullopt;
    return modulus_;
  }

  std::string describe() const override {
    std::string out = modulus_ == 0 ? "Z" : "Z/" + std::to_string(modulus_);
    out += " marked (";
    for (std::size_t i = 0; i < marking_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(marking_[i]);
    }
    return out + ")";
  }

  nlohmann::json spec_json() const override {
    return {{"kind", "cyclic"}, {"modulus", modulus_}, {"marking", marking_}};
  }

 private:
  long long eval(const FreeWord& w) const {
    check_rank(w);
    long long sum = 0;
    for (int l : w.letters()) {
      sum += l > 0 ? marking_[l - 1] : -marking_[-l - 1];
    }
    return mod_reduce(sum, modulus_);
  }

  long long modulus_;
  std::vector<long long> marking_;
};

class PermOracle final : public GroupOracle {
 public:
  PermOracle(int degree, std::vector<Perm> gens, std::vector<FreeWord> marking)
      : degree_(degree), native_(std::move(gens)) {
    if (native_.empty()) throw SpecError("permutation group needs at least one generator");
    if (marking.empty()) throw SpecError("empty marking");
    for (const Perm& p : native_) {
      if (p.degree() != degree_) throw SpecError("permutation degree mismatch");
    }
    int native_rank = static_cast<int>(native_.size());
    std::vector<Perm> native_inv;
    native_inv.reserve(native_.size());
    for (const Perm& p : native_) native_inv.push_back(p.inverse());
    for (const FreeWord& mw : marking) {
      if (mw.rank() != native_rank) {
        throw SpecError("marking word rank " + std::to_string(mw.rank()) +
                        " does not match native generator count " +
                        std::to_string(native_rank));
      }
      Perm s(degree_);
      for (int l : mw.letters()) s = s * (l > 0 ? native_[l - 1] : native_inv[-l - 1]);
      marked_.push_back(s);
      marking_words_.push_back(mw);
    }
    for (const Perm& s : marked_) marked_inv_.push_back(s.inverse());
    order_ = native_closure_order(native_inv);
  }

  int rank() const override { return static_cast<int>(marked_.size()); }

  bool contains(const FreeWord& w) const override { return eval(w).is_identity(); }

  bool has_normal_form() const override { return true; }

  ElementKey normal_form(const FreeWord& w) const override { return eval(w).key(); }

  bool finite_hint() const override { return true; }

  std::optional<long long> base_order() const override { return order_; }

  std::string describe() const override {
    std::string out = "perm(deg " + std::to_string(degree_) + ") marked (";
    for (std::size_t i = 0; i < marked_.size(); ++i) {
      if (i) out += ",";
      out += marked_[i].cycle_str();
    }
    return out + ")";
  }

  nlohmann::json spec_json() const override {
    nlohmann::json gens = nlohmann::json::array();
    for (const Perm& p : native_) {
      nlohmann::json cycles = nlohmann::json::array();
      std::vector<char> seen(p.degree(), 0);
      for (int start = 0; start < p.degree(); ++start) {
        if (seen[start] || p.apply(start) == start) continue;
        nlohmann::json cyc = nlohmann::json::array();
        int q = start;
        do {
          seen[q] = 1;
          cyc.push_back(q + 1);
          q = p.apply(q);
        } while (q != start);
        cycles.push_back(cyc);
      }
      gens.push_back(cycles);
    }
    nlohmann::json marking = nlohmann::json::array();
    for (const FreeWord& mw : marking_words_) marking.push_back(mw.str());
    return {{"kind", "perm"}, {"degree", degree_}, {"gens", gens}, {"marking", marking}};
  }

  const std::vector<Perm>& native_gens() const { return native_; }

 private:
  Perm eval(const FreeWord& w) const {
    check_rank(w);
    Perm e(degree_);
    for (int l : w.letters()) e = e * (l > 0 ? marked_[l - 1] : marked_inv_[-l - 1]);
    return e;
  }

  long long native_closure_order(const std::vector<Perm>& native_inv) const {
    constexpr std::size_t kLimit = 1'000'000;
    std::map<std::string, std::size_t> index;
    std::vector<Perm> elems{Perm(degree_)};
    index.emplace(elems[0].key(), 0);
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (std::size_t g = 0; g < native_.size(); ++g) {
        for (const Perm* step : {&native_[g], &native_inv[g]}) {
          Perm next = elems[head] * *step;
          if (index.emplace(next.key(), elems.size()).second) {
            if (elems.size() >= kLimit) {
              throw CapExceeded("permutation group closure exceeds " +
                                std::to_string(kLimit) + " elements");
            }
            elems.push_back(std::move(next));
          }
        }
      }
    }
    return static_cast<long long>(elems.size());
  }

  int degree_;
  std::vector<Perm> native_;
  std::vector<Perm> marked_;
  std::vector<Perm> marked_inv_;
  std::vector<FreeWord> marking_words_;
  long long order_ = 0;
};

class TableOracle final : public GroupOracle {
 public:
  TableOracle(std::vector<std::vector<int>> table, std::vector<int> marking)
      : table_(std::move(table)), marking_(std::move(marking)) {
    int k = static_cast<int>(table_.size());
    if (k == 0) throw SpecError("empty Cayley table");
    if (marking_.empty()) throw SpecError("empty marking");
    for (int i = 0; i < k; ++i) {
      if (static_cast<int>(table_[i].size()) != k) {
        throw SpecError("Cayley table row " + std::to_string(i) + " has wrong length");
      }
      std::vector<char> seen(k, 0);
      for (int v : table_[i]) {
        if (v < 0 || v >= k || seen[v]) {
          throw SpecError("Cayley table row " + std::to_string(i) + " is not a Latin row");
        }
        seen[v] = 1;
      }
    }
    for (int j = 0; j < k; ++j) {
      std::vector<char> seen(k, 0);
      for (int i = 0; i < k; ++i) {
        int v = table_[i][j];
        if (seen[v]) throw SpecError("Cayley table column " + std::to_string(j) + " is not a Latin column");
        seen[v] = 1;
      }
      if (table_[0][j] != j) throw SpecError("row 0 of the Cayley table must be the identity");
      if (table_[j][0] != j) throw SpecError("column 0 of the Cayley table must be the identity");
    }
    for (int s : marking_) {
      if (s < 0 || s >= k) throw SpecError("marking index out of range");
    }
    check_associativity();
    inv_.assign(k, -1);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (table_[a][b] == 0) inv_[a] = b;
      }
    }
  }

  int rank() const override { return static_cast<int>(marking_.size()); }

  bool contains(const FreeWord& w) const override { return eval(w) == 0; }

  bool has_normal_form() const override { return true; }

  ElementKey normal_form(const FreeWord& w) const override {
    return std::to_string(eval(w));
  }

  bool finite_hint() const override { return true; }

  std::optional<long long> base_order() const override {
    return static_cast<long long>(table_.size());
  }

  std::string describe() const override {
    std::string out = "table(order " + std::to_string(table_.size()) + ") marked (";
    for (std::size_t i = 0; i < marking_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(marking_[i]);
    }
    return out + ")";
  }

  nlohmann::json spec_json() const override {
    return {{"kind", "table"},
            {"order", table_.size()},
            {"table", table_},
            {"marking", marking_}};
  }

 private:
  // A Latin square with identity is a group table only if associative;
  // verified by Light's test (cubic in the order, fine at this scale).
  void check_associativity() const {
    int k = static_cast<int>(table_.size());
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        int ab = table_[a][b];
        for (int c = 0; c < k; ++c) {
          if (table_[ab][c] != table_[a][table_[b][c]]) {
            throw SpecError("Cayley table is not associative");
          }
        }
      }
    }
  }

  int eval(const FreeWord& w) const {
    check_rank(w);
    int cur = 0;
    for (int l : w.letters()) {
      int s = marking_[std::abs(l) - 1];
      cur = table_[cur][l > 0 ? s : inv_[s]];
    }
    return cur;
  }

  std::vector<std::vector<int>> table_;
  std::vector<int> marking_;
  std::vector<int> inv_;
};

class ProductOracle final : public GroupOracle {
 public:
  ProductOracle(std::vector<OraclePtr> factors, std::vector<FreeWord> marking)
      : factors_(std::move(factors)), marking_(std::move(marking)) {
    if (factors_.empty()) throw SpecError("product needs at least one factor");
    if (marking_.empty()) throw SpecError("empty marking");
    native_rank_ = 0;
    for (const auto& f : factors_) {
      offsets_.push_back(native_rank_);
      native_rank_ += f->rank();
    }
    for (const FreeWord& mw : marking_) {
      if (mw.rank() != native_rank_) {
        throw SpecError("product marking word rank " + std::to_string(mw.rank()) +
                        " does not match concatenated native rank " +
                        std::to_string(native_rank_));
      }
    }
  }

  int rank() const override { return static_cast<int>(marking_.size()); }

  bool contains(const FreeWord& w) const override {
    FreeWord native = expand(w);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (!factors_[i]->contains(project(native, i))) return false;
    }
    return true;
  }

  bool has_normal_form() const override {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const OraclePtr& f) { return f->has_normal_form(); });
  }

  ElementKey normal_form(const FreeWord& w) const override {
    FreeWord native = expand(w);
    std::string out = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += "|";
      out += factors_[i]->normal_form(project(native, i));
    }
    return out + ")";
  }

  bool finite_hint() const override {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const OraclePtr& f) { return f->finite_hint(); });
  }

  std::optional<long long> base_order() const override {
    long long prod = 1;
    for (const auto& f : factors_) {
      auto o = f->base_order();
      if (!o) return std::nullopt;
      prod *= *o;
    }
    return prod;
  }

  std::string describe() const override {
    std::string out = "product[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += " x ";
      out += factors_[i]->describe();
    }
    out += "] marked (";
    for (std::size_t i = 0; i < marking_.size(); ++i) {
      if (i) out += ",";
      out += marking_[i].str();
    }
    return out + ")";
  }

  nlohmann::json spec_json() const override {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : factors_) factors.push_back(f->spec_json());
    nlohmann::json marking = nlohmann::json::array();
    for (const FreeWord& mw : marking_) marking.push_back(mw.str());
    return {{"kind", "product"}, {"factors", factors}, {"marking", marking}};
  }

 private:
  // Word over the marked generators -> word over the concatenated native
  // generators (the factors' marked generators).
  FreeWord expand(const FreeWord& w) const {
    check_rank(w);
    return w.substitute(marking_);
  }

  // Component of a native word in factor i: native letters of other factors
  // act as the identity there, so they are simply dropped.
  FreeWord project(const FreeWord& native, std::size_t i) const {
    int lo = offsets_[i];
    int r = factors_[i]->rank();
    std::vector<int> raw;
    for (int l : native.letters()) {
      int idx = std::abs(l);
      if (idx > lo && idx <= lo + r) {
        raw.push_back(l > 0 ? idx - lo : -(idx - lo));
      }
    }
    return FreeWord::reduce(r, raw);
  }

  std::vector<OraclePtr> factors_;
  std::vector<FreeWord> marking_;
  std::vector<int> offsets_;
  int native_rank_;
};

class FreeOracle final : public GroupOracle {
 public:
  explicit FreeOracle(int rank) : rank_(rank) {
    if (rank_ < 1) throw SpecError("free rank must be positive");
  }

  int rank() const override { return rank_; }
  bool contains(const FreeWord& w) const override {
    check_rank(w);
    return w.is_identity();
  }
  bool has_normal_form() const override { return true; }
  ElementKey normal_form(const FreeWord& w) const override {
    check_rank(w);
    return w.str();
  }
  bool finite_hint() const override { return false; }
  std::optional<long long> base_order() const override { return std::nullopt; }
  std::string describe() const override { return "free(" + std::to_string(rank_) + ")"; }
  nlohmann::json spec_json() const override {
    return {{"kind", "free"}, {"rank", rank_}};
  }

 private:
  int rank_;
};

class PaddedOracle final : public GroupOracle {
 public:
  explicit PaddedOracle(OraclePtr inner) : inner_(std::move(inner)) {
    if (!inner_) throw SpecError("padded oracle needs an inner oracle");
  }

  int rank() const override { return inner_->rank() + 1; }

  bool contains(const FreeWord& w) const override { return inner_->contains(erase(w)); }

  bool has_normal_form() const override { return inner_->has_normal_form(); }

  ElementKey normal_form(const FreeWord& w) const override {
    return inner_->normal_form(erase(w));
  }

  bool finite_hint() const override { return inner_->finite_hint(); }
  std::optional<long long> base_order() const override { return inner_->base_order(); }

  std::string describe() const override { return "padded[" + inner_->describe() + "]"; }

  nlohmann::json spec_json() const override {
    return {{"kind", "padded"}, {"inner", inner_->spec_json()}};
  }

 private:
  FreeWord erase(const FreeWord& w) const {
    check_rank(w);
    std::vector<int> raw;
    for (int l : w.letters()) {
      if (std::abs(l) != rank()) raw.push_back(l);
    }
    return FreeWord::reduce(inner_->rank(), raw);
  }

  OraclePtr inner_;
};

}  // namespace

OraclePtr make_cyclic_oracle(long long modulus, std::vector<long long> marking) {
  return std::make_shared<CyclicOracle>(modulus, std::move(marking));
}

OraclePtr make_perm_oracle(int degree, std::vector<Perm> gens,
                           std::vector<FreeWord> marking) {
  return std::make_shared<PermOracle>(degree, std::move(gens), std::move(marking));
}

OraclePtr make_table_oracle(std::vector<std::vector<int>> table, std::vector<int> marking) {
  return std::make_shared<TableOracle>(std::move(table), std::move(marking));
}

OraclePtr make_product_oracle(std::vector<OraclePtr> factors, std::vector<FreeWord> marking) {
  return std::make_shared<ProductOracle>(std::move(factors), std::move(marking));
}

OraclePtr make_free_oracle(int rank) { return std::make_shared<FreeOracle>(rank); }

OraclePtr make_padded_oracle(OraclePtr inner) {
  return std::make_shared<PaddedOracle>(std::move(inner));
}

}  // namespace mgl
