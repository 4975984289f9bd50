#include "nov/novikov.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace nov {

bool val_less(const Valuation& a, const Valuation& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

namespace {

std::optional<Exponent> min_prec(const std::optional<Exponent>& a,
                                 const std::optional<Exponent>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

Scalar::Scalar(long c) {
  if (c != 0) terms_.emplace_back(Exponent(0), Rational(c));
}

Scalar::Scalar(const Rational& c) {
  if (c != 0) terms_.emplace_back(Exponent(0), c);
}

Scalar Scalar::monomial(const Rational& c, const Exponent& e) {
  Scalar s;
  if (c != 0) s.terms_.emplace_back(e, c);
  return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms,
                          std::optional<Exponent> precision) {
  Scalar s;
  s.terms_ = std::move(terms);
  s.prec_ = std::move(precision);
  s.normalize();
  return s;
}

void Scalar::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (prec_ && t.first >= *prec_) continue;
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.second == 0; }),
            out.end());
  terms_ = std::move(out);
}

bool Scalar::is_zero_mod(const Exponent& r) const {
  return terms_.empty() || terms_.front().first >= r;
}

Valuation Scalar::val() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().first;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& t : s.terms_) t.second = -t.second;
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar s;
  s.prec_ = min_prec(a.prec_, b.prec_);
  s.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() ||
        (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
      s.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
      s.terms_.push_back(b.terms_[j++]);
    } else {
      s.terms_.emplace_back(a.terms_[i].first,
                            a.terms_[i].second + b.terms_[j].second);
      ++i;
      ++j;
    }
  }
  s.normalize();
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar s;
  // each operand's uncertainty is scaled by the other's leading term
  std::optional<Exponent> pa, pb;
  if (a.prec_) {
    if (b.terms_.empty()) {
      if (b.prec_) pa = *a.prec_ + *b.prec_;
    } else {
      pa = *a.prec_ + b.terms_.front().first;
    }
  }
  if (b.prec_) {
    if (a.terms_.empty()) {
      if (a.prec_) pb = *a.prec_ + *b.prec_;
    } else {
      pb = *b.prec_ + a.terms_.front().first;
    }
  }
  s.prec_ = min_prec(pa, pb);
  if (a.terms_.empty() || b.terms_.empty()) return s;
  std::map<Exponent, Rational> acc;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Exponent e = x.first + y.first;
      if (s.prec_ && e >= *s.prec_) continue;
      acc[e] += x.second * y.second;
    }
  }
  for (auto& [e, c] : acc) {
    if (c != 0) s.terms_.emplace_back(e, c);
  }
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.terms_ == b.terms_ && a.prec_ == b.prec_;
}

Scalar Scalar::truncate(const Exponent& r) const {
  Scalar s = *this;
  s.prec_ = min_prec(prec_, r);
  s.normalize();
  return s;
}

Scalar Scalar::without_precision() const {
  Scalar s = *this;
  s.prec_.reset();
  return s;
}

Rational Scalar::reduce_t0() const {
  if (!terms_.empty() && terms_.front().first < 0) {
    throw NovikovError("NegativeValuation",
                       "reduce_t0 of scalar with negative valuation " + str());
  }
  if (prec_ && *prec_ <= 0) {
    throw NovikovError("PrecisionExhausted",
                       "constant term unknown at precision " +
                           exponent_str(*prec_));
  }
  return coeff(0);
}

Scalar Scalar::invert(const Exponent& work) const {
  if (terms_.empty()) {
    throw NovikovError("ZeroDivisor", "invert of " + str());
  }
  const Exponent v = terms_.front().first;
  const Rational c = terms_.front().second;
  // x = c T^v (1 + n)
  Scalar n;
  for (std::size_t k = 1; k < terms_.size(); ++k) {
    n.terms_.emplace_back(terms_[k].first - v, terms_[k].second / c);
  }
  if (prec_) n.prec_ = *prec_ - v;
  Scalar lead = monomial(1 / c, -v);
  if (n.terms_.empty() && !n.prec_) return lead;
  Exponent w = work;
  if (n.prec_) w = std::min(w, *n.prec_);
  if (w <= 0) {
    throw NovikovError("ZeroDivisor",
                       "unit part of " + str() + " unknown at working precision");
  }
  Scalar u = Scalar(1).truncate(w);
  Scalar term = u;
  Scalar mn = (-n).truncate(w);
  while (true) {
    term = (term * mn).truncate(w);
    if (term.is_zero()) break;
    u += term;
  }
  return u.shifted(-v) * Scalar(1 / c);
}

Scalar Scalar::shifted(const Exponent& e) const {
  Scalar s = *this;
  for (auto& t : s.terms_) t.first += e;
  if (s.prec_) *s.prec_ += e;
  return s;
}

Rational Scalar::coeff(const Exponent& e) const {
  for (const auto& t : terms_) {
    if (t.first == e) return t.second;
  }
  return 0;
}

std::string exponent_str(const Exponent& e) {
  if (e.get_den() == 1) {
    if (e >= 0) return e.get_num().get_str();
    return "{" + e.get_num().get_str() + "}";
  }
  return "{" + e.get_str() + "}";
}

std::string Scalar::str() const {
  std::string out;
  if (terms_.empty()) out = "0";
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k) out += " + ";
    out += terms_[k].second.get_str() + "*T^" + exponent_str(terms_[k].first);
  }
  if (prec_) out += " mod T^" + exponent_str(*prec_);
  return out;
}

Exponent parse_exponent(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}')
      s += ch;
  }
  if (s.empty()) throw NovikovError("ParseError", "empty exponent");
  Exponent e;
  try {
    e = Exponent(s);
  } catch (const std::invalid_argument&) {
    throw NovikovError("ParseError", "bad rational '" + raw + "'");
  }
  if (e.get_den() == 0) throw NovikovError("ParseError", "zero denominator");
  e.canonicalize();
  return e;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

Scalar::Term parse_term(const std::string& raw) {
  std::string t = trim(raw);
  if (t.empty()) throw NovikovError("ParseError", "empty term");
  Rational coeff = 1;
  Exponent e = 0;
  std::size_t tpos = t.find('T');
  std::string cpart = tpos == std::string::npos ? t : t.substr(0, tpos);
  cpart = trim(cpart);
  if (!cpart.empty() && cpart.back() == '*') cpart = trim(cpart.substr(0, cpart.size() - 1));
  if (cpart == "-") {
    coeff = -1;
  } else if (!cpart.empty()) {
    coeff = parse_exponent(cpart);
  }
  if (tpos != std::string::npos) {
    std::string rest = trim(t.substr(tpos + 1));
    if (rest.empty()) {
      e = 1;
    } else if (rest[0] == '^') {
      e = parse_exponent(rest.substr(1));
    } else {
      throw NovikovError("ParseError", "expected '^' after T in '" + raw + "'");
    }
  }
  return {e, coeff};
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  std::string body = text;
  std::optional<Exponent> prec;
  std::size_t m = body.find("mod");
  if (m != std::string::npos) {
    std::string tail = trim(body.substr(m + 3));
    if (tail.rfind("T^", 0) != 0) {
      throw NovikovError("ParseError", "expected 'mod T^r' in '" + text + "'");
    }
    prec = parse_exponent(tail.substr(2));
    body = body.substr(0, m);
  }
  std::vector<Term> terms;
  int depth = 0;
  std::string cur;
  for (std::size_t k = 0; k < body.size(); ++k) {
    char ch = body[k];
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (ch == '+' && depth == 0) {
      terms.push_back(parse_term(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || terms.empty()) terms.push_back(parse_term(cur));
  return from_terms(std::move(terms), prec);
}

}  // namespace nov
