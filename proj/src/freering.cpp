#include "nov/freering.hpp"

namespace nov {

FreePoly::FreePoly(long c) {
  if (c != 0) t_[Word{}] = c;
}

FreePoly FreePoly::symbol(const std::string& s, long coeff) {
  FreePoly p;
  if (coeff != 0) p.t_[Word{s}] = coeff;
  return p;
}

FreePoly FreePoly::operator-() const {
  FreePoly p = *this;
  for (auto& [w, c] : p.t_) c = -c;
  return p;
}

FreePoly operator+(const FreePoly& a, const FreePoly& b) {
  FreePoly p = a;
  for (const auto& [w, c] : b.t_) {
    long& x = p.t_[w];
    x += c;
    if (x == 0) p.t_.erase(w);
  }
  return p;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) {
  FreePoly p;
  for (const auto& [wa, ca] : a.t_) {
    for (const auto& [wb, cb] : b.t_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      long& x = p.t_[w];
      x += ca * cb;
      if (x == 0) p.t_.erase(w);
    }
  }
  return p;
}

FreePoly FreePoly::renamed(const std::map<std::string, std::string>& names) const {
  FreePoly p;
  for (const auto& [w, c] : t_) {
    Word r;
    for (const auto& s : w) {
      auto it = names.find(s);
      r.push_back(it == names.end() ? s : it->second);
    }
    long& x = p.t_[r];
    x += c;
    if (x == 0) p.t_.erase(r);
  }
  return p;
}

std::string FreePoly::str(const std::string& sep) const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : t_) {
    if (!out.empty()) out += " ";
    out += c < 0 ? "-" : "+";
    long a = c < 0 ? -c : c;
    if (a != 1 || w.empty()) out += std::to_string(a);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) out += sep;
      out += w[k];
    }
  }
  return out;
}

}  // namespace nov
