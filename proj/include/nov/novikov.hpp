// Novikov scalars: finite sums of c*T^a with rational c and rational a.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nov {

using Rational = mpq_class;
using Exponent = mpq_class;

class NovikovError : public std::runtime_error {
 public:
  NovikovError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// val(x); nullopt stands for +infinity.
using Valuation = std::optional<Exponent>;

bool val_less(const Valuation& a, const Valuation& b);

class Scalar {
 public:
  using Term = std::pair<Exponent, Rational>;  // (exponent, coefficient)

  Scalar() = default;
  Scalar(long c);  // NOLINT: integers embed as constants
  explicit Scalar(const Rational& c);
  static Scalar monomial(const Rational& c, const Exponent& e);
  static Scalar T(const Exponent& e) { return monomial(1, e); }
  // Builds from unsorted terms; merges and drops zeros.
  static Scalar from_terms(std::vector<Term> terms,
                           std::optional<Exponent> precision = std::nullopt);

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Exponent>& precision() const { return prec_; }

  bool is_zero() const { return terms_.empty(); }
  // zero after dropping everything at or above r
  bool is_zero_mod(const Exponent& r) const;
  Valuation val() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  // terms and precision both equal
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar truncate(const Exponent& r) const;
  Scalar without_precision() const;
  Rational reduce_t0() const;
  Scalar invert(const Exponent& work) const;

  // multiply by T^e (exact shift of exponents and precision)
  Scalar shifted(const Exponent& e) const;
  Rational coeff(const Exponent& e) const;

  std::string str() const;
  static Scalar parse(const std::string& text);

 private:
  void normalize();
  std::vector<Term> terms_;
  std::optional<Exponent> prec_;
};

std::string exponent_str(const Exponent& e);
Exponent parse_exponent(const std::string& s);

}  // namespace nov
