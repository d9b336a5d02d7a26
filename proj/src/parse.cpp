#include "rswan/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "rswan/error.hpp"
#include "rswan/logdiff.hpp"

namespace rswan {

namespace {

enum class Tok { Plus, Star, Caret, Int, Ident, LParen, RParen, Comma, Pipe, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    cur_ = Token{};
    cur_.pos = pos_;
    if (pos_ >= text_.size()) return;
    const char ch = text_[pos_];
    auto single = [&](Tok k) {
      cur_.kind = k;
      cur_.text = std::string(1, ch);
      ++pos_;
    };
    switch (ch) {
      case '+': return single(Tok::Plus);
      case '*': return single(Tok::Star);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '|': return single(Tok::Pipe);
      default: break;
    }
    if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t end = pos_ + (ch == '-' ? 1 : 0);
      const std::size_t digits_start = end;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == digits_start) throw ParseError("expected digits after '-'", pos_);
      if (end - digits_start > 15) throw ParseError("integer literal too long", pos_);
      cur_.kind = Tok::Int;
      cur_.text = text_.substr(pos_, end - pos_);
      cur_.value = std::stoll(cur_.text);
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      cur_.kind = Tok::Ident;
      cur_.text = text_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token cur_;
};

struct ParsedTerm {
  Scalar coeff;
  std::vector<std::int64_t> exps;
  std::vector<int> dlogs;
  bool has_dlog = false;
};

class Parser {
 public:
  Parser(const std::string& text, const RingPtr& ring, int level, bool forms)
      : lex_(text), ring_(ring), level_(level), forms_(forms) {}

  std::vector<ParsedTerm> expression() {
    std::vector<ParsedTerm> out;
    out.push_back(term());
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      out.push_back(term());
    }
    return out;
  }

  std::pair<std::int64_t, std::int64_t> window() {
    expect(Tok::Pipe, "'|'");
    Token w = expect(Tok::Ident, "'window'");
    if (w.text != "window") throw ParseError("expected 'window'", w.pos);
    expect(Tok::LParen, "'('");
    const std::int64_t n = expect(Tok::Int, "integer").value;
    expect(Tok::Comma, "','");
    const std::int64_t m = expect(Tok::Int, "integer").value;
    expect(Tok::RParen, "')'");
    return {n, m};
  }

  void finish() {
    if (lex_.peek().kind != Tok::End) throw ParseError("unexpected '" + lex_.peek().text + "'", lex_.peek().pos);
  }

  const Token& peek() const { return lex_.peek(); }

 private:
  Token expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) throw ParseError(std::string("expected ") + what, lex_.peek().pos);
    return lex_.take();
  }

  bool at_dlog() const { return forms_ && lex_.peek().kind == Tok::Ident && lex_.peek().text == "dlog"; }

  ParsedTerm term() {
    const ScalarRing& R = ring_->scalars();
    ParsedTerm t{R.one(), std::vector<std::int64_t>(level_, 0), {}, false};
    if (!at_dlog()) {
      factor(t);
      while (lex_.peek().kind == Tok::Star) {
        lex_.take();
        if (at_dlog()) break;
        factor(t);
      }
    }
    if (at_dlog()) {
      t.has_dlog = true;
      t.dlogs.push_back(dlog_factor());
      while (lex_.peek().kind == Tok::Caret) {
        lex_.take();
        if (!at_dlog()) throw ParseError("expected dlog(...) after '^'", lex_.peek().pos);
        t.dlogs.push_back(dlog_factor());
      }
    }
    return t;
  }

  int dlog_factor() {
    lex_.take();
    expect(Tok::LParen, "'('");
    Token v = expect(Tok::Ident, "variable");
    const int idx = variable(v);
    expect(Tok::RParen, "')'");
    return idx;
  }

  int variable(const Token& v) {
    const int idx = ring_->tower().variable_index(v.text);
    if (idx >= level_) throw UnknownVariable("variable '" + v.text + "' is not available at this level");
    return idx;
  }

  void factor(ParsedTerm& t) {
    const ScalarRing& R = ring_->scalars();
    const Token tok = lex_.take();
    if (tok.kind == Tok::Int) {
      t.coeff = R.mul(t.coeff, R.from_int(tok.value));
      return;
    }
    if (tok.kind != Tok::Ident) throw ParseError("expected a coefficient or variable", tok.pos);
    std::int64_t e = 1;
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      e = expect(Tok::Int, "integer exponent").value;
    }
    if (tok.text == "g") {
      Scalar g = R.generator();
      if (e < 0) {
        g = R.inv(g);
        e = -e;
      }
      t.coeff = R.mul(t.coeff, R.pow(g, static_cast<std::uint64_t>(e)));
      return;
    }
    if (tok.text == "dlog") throw ParseError("dlog is not allowed in a series literal", tok.pos);
    t.exps[variable(tok)] += e;
  }

  Lexer lex_;
  RingPtr ring_;
  int level_;
  bool forms_;
};

std::string render_scalar_term(const ScalarRing& R, const Scalar& c, const std::string& mono) {
  std::vector<std::string> pieces;
  for (int i = 0; i < R.degree(); ++i) {
    const std::int64_t v = c.c[i];
    if (v == 0) continue;
    std::vector<std::string> parts;
    if (v != 1 || (i == 0 && mono.empty())) parts.push_back(std::to_string(v));
    if (i == 1) parts.push_back("g");
    if (i > 1) parts.push_back("g^" + std::to_string(i));
    if (!mono.empty()) parts.push_back(mono);
    std::string s;
    for (std::size_t j = 0; j < parts.size(); ++j) s += (j ? "*" : "") + parts[j];
    pieces.push_back(s);
  }
  std::string out;
  for (std::size_t j = 0; j < pieces.size(); ++j) out += (j ? " + " : "") + pieces[j];
  return out;
}

std::string render_monomial(const FieldTower& tower, const std::vector<std::int64_t>& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += tower.variables[i];
    if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
  }
  return out;
}

bool outer_first_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::vector<std::string> rendered_terms(const Series& x, const std::string& suffix) {
  std::vector<Term> ts = x.terms();
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return outer_first_less(a.exps, b.exps); });
  std::vector<std::string> out;
  for (const auto& t : ts) {
    std::string mono = render_monomial(x.ring()->tower(), t.exps);
    std::string s = render_scalar_term(x.ring()->scalars(), t.coeff, mono.empty() && !suffix.empty() ? "" : mono);
    if (!suffix.empty()) {
      // Each scalar piece gets its own basis suffix so the text stays a
      // sum of monomial terms.
      std::string joined;
      std::size_t start = 0;
      while (true) {
        const std::size_t cut = s.find(" + ", start);
        std::string piece = s.substr(start, cut == std::string::npos ? std::string::npos : cut - start);
        if (piece == "1") piece.clear();
        if (!joined.empty()) joined += " + ";
        joined += piece.empty() ? suffix : piece + " " + suffix;
        if (cut == std::string::npos) break;
        start = cut + 3;
      }
      s = joined;
    }
    out.push_back(s);
  }
  return out;
}

std::int64_t sign_of_sort(std::vector<int>& idx) {
  std::int64_t sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] > idx[j]) sign = -sign;
  std::sort(idx.begin(), idx.end());
  return sign;
}

}  // namespace

Series parse_series(const std::string& text, const RingPtr& ring, int level) {
  if (level < 0) level = ring->dimension();
  Parser ps(text, ring, level, false);
  auto parsed = ps.expression();
  ps.finish();
  std::vector<Term> terms;
  terms.reserve(parsed.size());
  for (auto& t : parsed) terms.push_back(Term{std::move(t.exps), t.coeff});
  return Series::from_terms(ring, level, terms);
}

std::string render_series(const Series& x) {
  if (!x.valid()) return "<invalid>";
  std::vector<std::string> parts = rendered_terms(x, "");
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

std::string render_logform(const LogForm& w) {
  std::vector<std::string> parts;
  const auto& vars = w.ring()->tower().variables;
  for (auto key : w.canonical_keys()) {
    std::string suffix;
    for (int idx : LogForm::indices_of(key)) suffix += (suffix.empty() ? "" : "^") + ("dlog(" + vars[idx] + ")");
    const Series c = w.coefficient(key);
    for (auto& s : rendered_terms(c, suffix)) parts.push_back(s);
  }
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

std::string render_form(const WindowedForm& w) {
  return render_logform(w.canonical().form) + " | window(" + std::to_string(w.n) + "," + std::to_string(w.m) + ")";
}

WindowedForm parse_form(const std::string& text, const RingPtr& ring) {
  const int level = ring->dimension();
  Parser ps(text, ring, level, true);
  auto parsed = ps.expression();
  int degree = -1;
  for (const auto& t : parsed) {
    const int deg = static_cast<int>(t.dlogs.size());
    if (degree >= 0 && deg != degree) {
      const bool zero_term = ring->scalars().is_zero(t.coeff);
      if (zero_term) continue;
      throw ParseError("mixed form degrees", 0);
    }
    if (degree < 0 || (degree == 0 && deg > 0)) degree = deg;
  }
  LogForm form(ring, level, std::max(degree, 0));
  for (auto& t : parsed) {
    if (static_cast<int>(t.dlogs.size()) != form.degree()) continue;
    std::vector<int> idx = t.dlogs;
    const std::int64_t sign = sign_of_sort(idx);
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
    Series c = Series::monomial(ring, ring->scalars().mul_int(t.coeff, sign), t.exps);
    form.accumulate(LogForm::key_of(idx), c);
  }
  auto [n, m] = ps.window();
  ps.finish();
  return WindowedForm{form, n, m};
}

}  // namespace rswan
