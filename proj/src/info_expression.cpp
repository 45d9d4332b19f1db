#include "netdual/info_expression.hpp"

#include <algorithm>
#include <cctype>

#include "netdual/errors.hpp"

namespace netdual {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// One parsed term before variables are numbered: coefficient times H(set).
struct RawTerm {
  Rational coef;
  std::vector<std::string> set;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> statement() {
    auto lhs = side();
    skip();
    int sense = 0;
    if (accept("<=")) {
      sense = -1;
    } else if (accept(">=")) {
      sense = 1;
    } else {
      fail("expected '<=' or '>='");
    }
    auto rhs = side();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    // lhs - rhs >= 0, or rhs - lhs >= 0
    std::vector<RawTerm> out;
    for (auto& t : lhs) out.push_back({t.coef * sense, t.set});
    for (auto& t : rhs) out.push_back({-t.coef * sense, t.set});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw StructuralError("expression column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::vector<RawTerm> side() {
    std::vector<RawTerm> out;
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (accept("-")) {
        sign = -1;
      } else if (!accept("+") && !first) {
        break;
      }
      first = false;
      term(sign, out);
      const char c = peek();
      if (c != '+' && c != '-') break;
    }
    return out;
  }

  Rational number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    try {
      return parse_rational(std::string(text_.substr(start, pos_ - start)));
    } catch (const StructuralError&) {
      pos_ = start;
      fail("malformed coefficient");
    }
  }

  void term(const Rational& sign, std::vector<RawTerm>& out) {
    Rational coef = sign;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef *= number();
      accept("*");
      // a bare 0 is the empty expression
      if (sgn(coef) == 0 && peek() != 'H' && peek() != 'I') return;
    }
    if (accept("H(")) {
      auto a = list();
      std::vector<std::string> b;
      if (accept("|")) b = list();
      if (!accept(")")) fail("expected ')'");
      // H(A|B) = H(AB) - H(B)
      out.push_back({coef, merge(a, b)});
      if (!b.empty()) out.push_back({-coef, b});
      return;
    }
    if (accept("I(")) {
      auto a = list();
      if (!accept(";")) fail("expected ';'");
      auto b = list();
      std::vector<std::string> c;
      if (accept("|")) c = list();
      if (!accept(")")) fail("expected ')'");
      // I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C)
      out.push_back({coef, merge(a, c)});
      out.push_back({coef, merge(b, c)});
      out.push_back({-coef, merge(merge(a, b), c)});
      if (!c.empty()) out.push_back({-coef, c});
      return;
    }
    fail("expected H(...), I(...) or a coefficient");
  }

  static std::vector<std::string> merge(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::string name() {
    skip();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '[' || c == '{') ++depth;
      if (c == ']' || c == '}') {
        if (depth == 0) fail("unbalanced bracket in variable name");
        --depth;
      }
      if (depth == 0 && (c == ',' || c == ';' || c == '|' || c == ')' || c == '(' ||
                         std::isspace(static_cast<unsigned char>(c)))) {
        break;
      }
      ++pos_;
    }
    if (depth != 0) fail("unbalanced bracket in variable name");
    if (pos_ == start) fail("expected a variable name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> list() {
    std::vector<std::string> out{name()};
    while (accept(",")) out.push_back(name());
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string term_text(const std::vector<std::string>& vars, Subset s) {
  std::string out = "H(";
  bool first = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!contains(s, static_cast<int>(i))) continue;
    if (!first) out += ',';
    out += vars[i];
    first = false;
  }
  return out + ")";
}

}  // namespace

bool label_less(const std::string& a, const std::string& b) {
  const bool da = all_digits(a), db = all_digits(b);
  if (da != db) return da;
  if (da && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

InfoExpression InfoExpression::from_terms(std::vector<std::string> names, const std::map<Subset, Rational>& terms) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end(), label_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ArgumentError("duplicate variable name in expression");
  }
  std::vector<int> where(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    where[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), names[i], label_less) - sorted.begin());
  }
  InfoExpression e;
  e.variables = sorted;
  for (const auto& [s, c] : terms) {
    Subset t = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (contains(s, static_cast<int>(i))) t |= singleton(where[i]);
    }
    if (t == 0) continue;
    Rational v = c;
    v.canonicalize();
    e.terms[t] += v;
  }
  std::erase_if(e.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
  Subset used = 0;
  for (const auto& [t, c] : e.terms) used |= t;
  if (used == full_set(static_cast<int>(sorted.size()))) return e;
  // drop names no term mentions
  std::vector<int> positions;
  InfoExpression compact;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!contains(used, static_cast<int>(i))) continue;
    positions.push_back(static_cast<int>(i));
    compact.variables.push_back(sorted[i]);
  }
  for (const auto& [t, c] : e.terms) {
    Subset r = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if (contains(t, positions[k])) r |= singleton(static_cast<int>(k));
    }
    compact.terms[r] = c;
  }
  return compact;
}

InfoExpression InfoExpression::parse(std::string_view text) {
  const auto raw = Parser(text).statement();
  std::vector<std::string> names;
  for (const auto& t : raw) {
    for (const auto& v : t.set) {
      if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
    }
  }
  if (names.size() > static_cast<std::size_t>(GroundSet::kMaxSize)) {
    throw ResourceError("expression uses more variables than a ground set can hold");
  }
  std::map<Subset, Rational> terms;
  for (const auto& t : raw) {
    Subset s = 0;
    for (const auto& v : t.set) s |= singleton(static_cast<int>(std::find(names.begin(), names.end(), v) - names.begin()));
    terms[s] += t.coef;
  }
  return from_terms(names, terms);
}

std::string InfoExpression::str() const {
  if (terms.empty()) return "0 >= 0";
  std::string out;
  bool first = true;
  for (const auto& [s, c] : terms) {
    const Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += (mag.get_den() == 1 ? mag.get_num().get_str() : format_rational(mag)) + " ";
    out += term_text(variables, s);
  }
  return out + " >= 0";
}

LogScalar InfoExpression::evaluate(const SetFunction& f, std::span<const int> at) const {
  if (at.size() != variables.size()) throw ArgumentError("expression needs one ground element per variable");
  LogScalar out;
  for (const auto& [s, c] : terms) {
    Subset t = 0;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (contains(s, static_cast<int>(i))) t |= singleton(at[i]);
    }
    out.add_scaled(f.at(t), c);
  }
  return out;
}

LogScalar InfoExpression::evaluate(const SetFunction& f) const {
  std::vector<int> at;
  for (const auto& v : variables) at.push_back(f.ground().require_index(v));
  return evaluate(f, at);
}

InfoExpression ingleton_expression() {
  return InfoExpression::parse("I(1;2|3) + I(1;2|4) + I(3;4) - I(1;2) >= 0");
}

InfoExpression zhang_yeung_expression() {
  return InfoExpression::parse("2 I(3;4) - I(1;2) - I(1;3,4) - 3 I(3;4|1) - I(3;4|2) <= 0");
}

}  // namespace netdual
