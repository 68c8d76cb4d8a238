#ifndef MGL_WORD_PARSE_HPP_
#define MGL_WORD_PARSE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "mgl/word.hpp"

namespace mgl {

// Parse tree for the word grammar:
//
//   word   := factor { ('*')? factor }
//   factor := atom [ '^' integer ]
//   atom   := 'x' nat | '[' word ',' word ']' | '(' word ')' | 'e'
//
// Whitespace is insignificant; negative exponents are allowed. The
// commutator bracket is [a,b] = a^-1 * b^-1 * a * b.
struct WordExpr {
  enum class Kind { Identity, Generator, Product, Power, Commutator };

  Kind kind = Kind::Identity;
  int gen_index = 0;                         // Generator
  long long exponent = 1;                    // Power
  std::vector<WordExpr> children;            // Product (n-ary), Power (1), Commutator (2)
};

// Throws ParseError with the offending position.
WordExpr parse_word(const std::string& text);

// Largest generator index mentioned anywhere in the tree (0 for identity-only).
int max_gen_index(const WordExpr& expr);

// Expand and freely reduce into F_rank. Throws Error if an index exceeds
// rank, CapExceeded if intermediate expansion exceeds caps.max_word_letters.
FreeWord flatten(const WordExpr& expr, int rank, const Caps& caps = {});

// parse + flatten in one step. rank <= 0 means "use max_gen_index", with a
// minimum of 1.
FreeWord parse_free_word(const std::string& text, int rank = 0, const Caps& caps = {});

}  // namespace mgl

#endif  // MGL_WORD_PARSE_HPP_
