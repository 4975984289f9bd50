// Free noncommutative Z-algebra on formal map symbols, used for symbolic
// cube identities. A word lists symbols in composition order: "a b" is a∘b.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nov/matrix.hpp"

namespace nov {

using Word = std::vector<std::string>;

class FreePoly {
 public:
  FreePoly() = default;
  FreePoly(long c);  // NOLINT
  static FreePoly symbol(const std::string& s, long coeff = 1);

  const std::map<Word, long>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  FreePoly operator-() const;
  friend FreePoly operator+(const FreePoly& a, const FreePoly& b);
  friend FreePoly operator-(const FreePoly& a, const FreePoly& b) { return a + (-b); }
  friend FreePoly operator*(const FreePoly& a, const FreePoly& b);
  FreePoly& operator+=(const FreePoly& b) { return *this = *this + b; }
  friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const FreePoly& a, const FreePoly& b) { return !(a == b); }

  // applies a symbol renaming; words that become equal are merged
  FreePoly renamed(const std::map<std::string, std::string>& names) const;
  // "+c'f0 -f1c" style, terms sorted
  std::string str(const std::string& sep = "") const;

 private:
  std::map<Word, long> t_;
};

template <>
struct Ring<FreePoly> {
  static FreePoly zero() { return FreePoly(); }
  static FreePoly one() { return FreePoly(1); }
  static bool is_zero(const FreePoly& x) { return x.is_zero(); }
  static bool is_zero_mod(const FreePoly& x, const std::optional<Exponent>&) {
    return x.is_zero();
  }
  static std::string str(const FreePoly& x) { return x.str(" "); }
};

using FMat = Mat<FreePoly>;

}  // namespace nov
