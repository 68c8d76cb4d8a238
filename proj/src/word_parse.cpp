#include "mgl/word_parse.hpp"

#include <cctype>
#include <cstdlib>

namespace mgl {

namespace {

constexpr long long kMaxExponent = 1'000'000;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  WordExpr parse() {
    WordExpr w = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  WordExpr parse_product() {
    WordExpr product;
    product.kind = WordExpr::Kind::Product;
    product.children.push_back(parse_factor());
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        product.children.push_back(parse_factor());
        continue;
      }
      // Juxtaposition: a factor may start right away.
      if (pos_ < text_.size() && starts_factor(text_[pos_])) {
        product.children.push_back(parse_factor());
        continue;
      }
      break;
    }
    if (product.children.size() == 1) return product.children[0];
    return product;
  }

  WordExpr parse_factor() {
    WordExpr atom = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      long long exp = parse_integer();
      WordExpr p;
      p.kind = WordExpr::Kind::Power;
      p.exponent = exp;
      p.children.push_back(std::move(atom));
      return p;
    }
    return atom;
  }

  WordExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a generator, 'e', '[' or '('");
    char c = text_[pos_];
    if (c == 'e') {
      ++pos_;
      WordExpr id;
      id.kind = WordExpr::Kind::Identity;
      return id;
    }
    if (c == 'x') {
      std::size_t start = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("generator needs an index, e.g. x1", start);
      }
      long long idx = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        idx = idx * 10 + (text_[pos_] - '0');
        if (idx > 1'000'000) fail("generator index too large", start);
        ++pos_;
      }
      if (idx == 0) fail("generators are 1-indexed", start);
      WordExpr g;
      g.kind = WordExpr::Kind::Generator;
      g.gen_index = static_cast<int>(idx);
      return g;
    }
    if (c == '[') {
      ++pos_;
      WordExpr comm;
      comm.kind = WordExpr::Kind::Commutator;
      comm.children.push_back(parse_product());
      expect(',');
      comm.children.push_back(parse_product());
      expect(']');
      return comm;
    }
    if (c == '(') {
      ++pos_;
      WordExpr inner = parse_product();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  long long parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected an integer exponent", start);
    }
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > kMaxExponent) fail("exponent too large", start);
      ++pos_;
    }
    return negative ? -value : value;
  }

  static bool starts_factor(char c) {
    return c == 'x' || c == 'e' || c == '[' || c == '(';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, at);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void flatten_into(const WordExpr& expr, int rank, const Caps& caps,
                  std::vector<int>& raw, bool invert) {
  auto guard = [&raw, &caps]() {
    if (static_cast<long long>(raw.size()) > caps.max_word_letters) {
      throw CapExceeded("word expansion exceeds " +
                        std::to_string(caps.max_word_letters) + " letters");
    }
  };
  switch (expr.kind) {
    case WordExpr::Kind::Identity:
      return;
    case WordExpr::Kind::Generator: {
      if (expr.gen_index > rank) {
        throw Error("generator x" + std::to_string(expr.gen_index) +
                    " exceeds rank " + std::to_string(rank));
      }
      raw.push_back(invert ? -expr.gen_index : expr.gen_index);
      guard();
      return;
    }
    case WordExpr::Kind::Product: {
      if (!invert) {
        for (const auto& child : expr.children) flatten_into(child, rank, caps, raw, false);
      } else {
        for (auto it = expr.children.rbegin(); it != expr.children.rend(); ++it) {
          flatten_into(*it, rank, caps, raw, true);
        }
      }
      return;
    }
    case WordExpr::Kind::Power: {
      long long n = expr.exponent;
      bool inv = invert ? (n > 0) : (n < 0);
      long long reps = std::llabs(n);
      if (reps > kMaxExponent) throw CapExceeded("exponent too large");
      for (long long i = 0; i < reps; ++i) {
        flatten_into(expr.children[0], rank, caps, raw, inv);
        guard();
      }
      return;
    }
    case WordExpr::Kind::Commutator: {
      // [a,b] = a^-1 b^-1 a b; inverted: [a,b]^-1 = b^-1 a^-1 b a = [b,a]
      const WordExpr& a = expr.children[invert ? 1 : 0];
      const WordExpr& b = expr.children[invert ? 0 : 1];
      flatten_into(a, rank, caps, raw, true);
      flatten_into(b, rank, caps, raw, true);
      flatten_into(a, rank, caps, raw, false);
      flatten_into(b, rank, caps, raw, false);
      return;
    }
  }
}

}  // namespace

WordExpr parse_word(const std::string& text) { return Parser(text).parse(); }

int max_gen_index(const WordExpr& expr) {
  int m = expr.kind == WordExpr::Kind::Generator ? expr.gen_index : 0;
  for (const auto& child : expr.children) m = std::max(m, max_gen_index(child));
  return m;
}

FreeWord flatten(const WordExpr& expr, int rank, const Caps& caps) {
  std::vector<int> raw;
  flatten_into(expr, rank, caps, raw, false);
  return FreeWord::reduce(rank, raw);
}

FreeWord parse_free_word(const std::string& text, int rank, const Caps& caps) {
  WordExpr expr = parse_word(text);
  if (rank <= 0) rank = std::max(1, max_gen_index(expr));
  return flatten(expr, rank, caps);
}

}  // namespace mgl
