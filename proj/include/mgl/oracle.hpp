#ifndef MGL_ORACLE_HPP_
#define MGL_ORACLE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgl/perm.hpp"
#include "mgl/word.hpp"

namespace mgl {

// Word-problem oracle of a marked group (G, S) with |S| = rank. Semantically
// this is the normal subgroup N of F_rank with F/N = G: contains(w) decides
// w in N, i.e. whether w evaluates to the identity of G under x_i -> s_i.
//
// Oracles are immutable after construction and safe to share across threads.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual int rank() const = 0;
  virtual bool contains(const FreeWord& w) const = 0;

  // Optional canonical-form capability. normal_form(u) == normal_form(v)
  // iff contains(u * v^-1). Throws Error when has_normal_form() is false.
  virtual bool has_normal_form() const = 0;
  virtual ElementKey normal_form(const FreeWord& w) const = 0;

  // True when the marked group is known to be finite.
  virtual bool finite_hint() const = 0;
  // Order of the base group the marking lives in, when finite. Used to
  // validate that a marking generates.
  virtual std::optional<long long> base_order() const = 0;

  virtual std::string describe() const = 0;
  // Round-trippable GroupSpec document (see group_spec.hpp).
  virtual nlohmann::json spec_json() const = 0;

 protected:
  void check_rank(const FreeWord& w) const;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

// Z/modulus (modulus = 0 means Z); marking entry k means the residue k.
OraclePtr make_cyclic_oracle(long long modulus, std::vector<long long> marking);

// Subgroup of Sym(degree) generated by `gens`; marking words are over the
// native generators x1..x|gens|.
OraclePtr make_perm_oracle(int degree, std::vector<Perm> gens,
                           std::vector<FreeWord> marking);

// Explicit Cayley table: table[i][j] = index of g_i * g_j, index 0 is the
// identity. Validates the Latin-square property and the identity row/column.
OraclePtr make_table_oracle(std::vector<std::vector<int>> table,
                            std::vector<int> marking);

// Direct product. Native generators are the factors' marked generators,
// concatenated in order; marking words are over those.
OraclePtr make_product_oracle(std::vector<OraclePtr> factors,
                              std::vector<FreeWord> marking);

// Free group of the given rank, marked by its free generators (N = {e}).
OraclePtr make_free_oracle(int rank);

// Same group with the identity appended to the marking: membership of w
// depends only on w with every x_{rank+1} letter deleted.
OraclePtr make_padded_oracle(OraclePtr inner);

}  // namespace mgl

#endif  // MGL_ORACLE_HPP_
