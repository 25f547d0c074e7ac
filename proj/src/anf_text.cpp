#include "flatdeg/anf_text.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "flatdeg/errors.hpp"

namespace flatdeg {

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  // True if the next token is a term separator; consumes it.
  bool take_separator() {
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '^')) {
      ++pos;
      return true;
    }
    // UTF-8 for '⊕'
    if (pos + 3 <= text.size() && static_cast<unsigned char>(text[pos]) == 0xe2 &&
        static_cast<unsigned char>(text[pos + 1]) == 0x8a &&
        static_cast<unsigned char>(text[pos + 2]) == 0x95) {
      pos += 3;
      return true;
    }
    return false;
  }
};

// term := '0' | '1' | ('x' index)+
uint32_t parse_term(Lexer& lx, std::optional<int> declared_n, int& max_index,
                    bool& is_zero) {
  lx.skip_ws();
  if (lx.pos >= lx.text.size())
    throw ParseError("expected a term", lx.pos);
  char c = lx.text[lx.pos];
  if (c == '0' || c == '1') {
    ++lx.pos;
    is_zero = (c == '0');
    return 0;
  }
  if (c != 'x')
    throw ParseError("expected '0', '1' or a variable", lx.pos);
  uint32_t mask = 0;
  while (true) {
    lx.skip_ws();
    if (lx.pos >= lx.text.size() || lx.text[lx.pos] != 'x') break;
    std::size_t xat = lx.pos;
    ++lx.pos;
    lx.skip_ws();
    if (lx.pos >= lx.text.size() ||
        !std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])))
      throw ParseError("variable needs a decimal index", xat);
    long index = 0;
    while (lx.pos < lx.text.size() &&
           std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
      index = index * 10 + (lx.text[lx.pos] - '0');
      if (index > 1000) throw ParseError("variable index too large", xat);
      ++lx.pos;
    }
    if (index < 1) throw ParseError("variable index must be >= 1", xat);
    if (index > kMaxVars)
      throw ParseError("variable index exceeds the cap of " +
                           std::to_string(kMaxVars),
                       xat);
    if (declared_n && index > *declared_n)
      throw ParseError("variable index exceeds declared n=" +
                           std::to_string(*declared_n),
                       xat);
    max_index = std::max(max_index, int(index));
    mask |= uint32_t(1) << (index - 1);  // idempotent on repeats
  }
  is_zero = false;
  return mask;
}

}  // namespace

Anf parse_anf(std::string_view text, std::optional<int> declared_n) {
  if (declared_n && (*declared_n < 0 || *declared_n > kMaxVars))
    throw std::invalid_argument("declared_n out of range");
  Lexer lx{text};
  std::vector<uint32_t> terms;
  int max_index = 0;
  bool first = true;
  while (true) {
    if (first && lx.eof()) throw ParseError("empty expression", lx.pos);
    bool zero = false;
    uint32_t mask = parse_term(lx, declared_n, max_index, zero);
    if (!zero) terms.push_back(mask);
    first = false;
    if (lx.eof()) break;
    if (!lx.take_separator())
      throw ParseError("expected '⊕', '+', '^' or end of input", lx.pos);
  }
  int vars = declared_n ? *declared_n : max_index;
  return make_anf(vars, std::move(terms));
}

std::string print_anf(const Anf& anf) {
  if (anf.monomials.empty()) return "0";
  std::vector<uint32_t> order = anf.monomials;
  std::sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
    int wa = std::popcount(a), wb = std::popcount(b);
    return wa != wb ? wa < wb : a < b;
  });
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += " \xe2\x8a\x95 ";  // " ⊕ "
    uint32_t m = order[i];
    if (m == 0) {
      out += '1';
      continue;
    }
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      out += 'x';
      out += std::to_string(b + 1);
    }
  }
  return out;
}

}  // namespace flatdeg
