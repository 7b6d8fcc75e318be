#include "dickson/parser.hpp"

#include <cctype>
#include <vector>

#include "dickson/errors.hpp"

namespace dickson {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int p, int n) : s_(text), p_(p), n_(n) {}

  GenExpr parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", 0);
    GenExpr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool digit_next() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  long long integer() {
    skip();
    if (!digit_next()) fail("expected an integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000LL) fail("integer too large");
    }
    return v;
  }

  int small_int() {
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    }
    long long v = integer();
    if (v > 100000) fail("index too large");
    return static_cast<int>(neg ? -v : v);
  }

  GenExpr expr() {
    GenExpr out = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        out += term();
      } else if (peek('-')) {
        ++pos_;
        out += term().scale(static_cast<Coeff>(p_ - 1));
      } else {
        return out;
      }
    }
  }

  GenExpr term() {
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    }
    GenExpr out = factor();
    while (peek('*')) {
      ++pos_;
      out = out * factor();
    }
    return neg ? out.scale(static_cast<Coeff>(p_ - 1)) : out;
  }

  GenExpr factor() {
    GenExpr base = atom();
    if (peek('^')) {
      ++pos_;
      std::size_t at = pos_;
      long long e = integer();
      if (e > 65535) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::vector<int> index_list(char sep_end) {
    std::vector<int> out{small_int()};
    while (peek(',')) {
      ++pos_;
      out.push_back(small_int());
    }
    if (!peek(sep_end)) fail(std::string("expected '") + sep_end + "'");
    return out;
  }

  bool hat_suffix() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      std::size_t q = pos_ + 1;
      while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
      if (q >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[q]))) {
        ++pos_;
        return true;
      }
    }
    return false;
  }

  void range(bool ok, std::size_t at, const std::string& what) const {
    if (!ok) throw ArgumentError(what + " index out of range at offset " + std::to_string(at));
  }

  GenExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    std::size_t at = pos_;
    if (peek('(')) {
      ++pos_;
      GenExpr e = expr();
      expect(')');
      return e;
    }
    if (digit_next()) return GenExpr::constant(p_, n_, integer() % p_);
    std::string w = word();
    if (w.empty()) fail("expected a symbol");
    if (w == "x" || w == "y") {
      int i = small_int();
      range(i >= 1 && i <= n_, at, w);
      if (w == "x" && p_ == 2) throw ArgumentError("exterior variables need an odd prime");
      return GenExpr::symbol(p_, n_, w == "x" ? GenSymbol::x(i) : GenSymbol::y(i));
    }
    static const std::vector<std::string> known{"M", "Mhat", "d", "h", "L", "homit", "hswap", "Lomit", "Momit"};
    bool is_known = false;
    for (const auto& k : known) is_known = is_known || k == w;
    if (!is_known) throw ParseError("unknown symbol '" + w + "'", at);
    GenSymbol sym;
    expect('[');
    if (w == "M" || w == "Mhat") {
      int m = small_int();
      expect(';');
      auto S = index_list(']');
      ++pos_;
      range(m >= 1 && m <= n_, at, w);
      for (std::size_t k = 0; k < S.size(); ++k)
        range(S[k] >= 0 && S[k] < m && (k == 0 || S[k - 1] < S[k]), at, w);
      if (p_ == 2) throw ArgumentError("Mui classes need an odd prime");
      sym = GenSymbol::M(m, S, w == "Mhat");
      return GenExpr::symbol(p_, n_, sym);
    }
    if (w == "d") {
      int m = small_int();
      expect(',');
      int i = small_int();
      bool parab = false;
      if (peek(';')) {
        ++pos_;
        if (word() != "I") fail("expected 'I='");
        expect('=');
        auto I = index_list(']');
        if (I.size() != 2 || I[0] != 1 || I[1] != m - 1) fail("only I=1," + std::to_string(m - 1) + " is supported");
        parab = true;
      }
      expect(']');
      bool hat = hat_suffix();
      if (parab) {
        range(m >= 2 && m <= n_ && i >= 1 && i < m, at, "d(I)");
        sym = GenSymbol::d_parab(m, i, hat);
      } else {
        range(m >= 1 && m <= n_ && i >= 0 && i <= m, at, "d");
        if (i == m) return GenExpr::constant(p_, n_, 1);
        sym = GenSymbol::d(m, i, hat);
      }
      return GenExpr::symbol(p_, n_, sym);
    }
    auto idx = index_list(']');
    ++pos_;
    bool hat = hat_suffix();
    auto arity = [&](std::size_t k) {
      if (idx.size() != k) throw ParseError(w + " takes " + std::to_string(k) + " indices", at);
    };
    if (w == "h") {
      arity(1);
      range(idx[0] >= 1 && idx[0] <= n_, at, w);
      sym = GenSymbol::h(idx[0], hat);
    } else if (w == "L") {
      arity(2);
      range(idx[0] >= 1 && idx[0] <= n_ && idx[1] >= 0 && idx[1] <= idx[0], at, w);
      sym = GenSymbol::L(idx[0], idx[1], hat);
    } else if (w == "homit" || w == "hswap") {
      arity(2);
      bool ok = idx[0] <= n_ && idx[1] >= 1 && (w == "homit" ? idx[1] < idx[0] : idx[1] <= idx[0]);
      range(ok, at, w);
      sym = w == "homit" ? GenSymbol::h_omit(idx[0], idx[1]) : GenSymbol::h_swap(idx[0], idx[1]);
    } else if (w == "Lomit") {
      arity(3);
      range(idx[0] <= n_ && idx[1] >= 0 && idx[1] <= idx[0] - 1 && idx[2] >= 1 && idx[2] <= idx[0], at, w);
      sym = GenSymbol::L_omit(idx[0], idx[1], idx[2]);
    } else if (w == "Momit") {
      arity(3);
      range(idx[0] >= 2 && idx[0] <= n_ && idx[1] >= 0 && idx[1] <= idx[0] - 2 && idx[2] >= 1 && idx[2] <= idx[0], at,
            w);
      if (p_ == 2) throw ArgumentError("Mui classes need an odd prime");
      sym = GenSymbol::M_omit(idx[0], idx[1], idx[2]);
    } else {
      throw ParseError("unknown symbol '" + w + "'", at);
    }
    if (hat && sym.kind != GenSymbol::Kind::H && sym.kind != GenSymbol::Kind::L)
      throw ParseError("hat is not defined for " + w, at);
    return GenExpr::symbol(p_, n_, sym);
  }

  const std::string& s_;
  int p_, n_;
  std::size_t pos_ = 0;
};

}  // namespace

GenExpr parse_expr(const std::string& text, int p, int n) {
  (void)PrimeField(p);
  if (n < 1 || n > 8) throw ArgumentError("n must be between 1 and 8");
  return Parser(text, p, n).parse();
}

}  // namespace dickson
