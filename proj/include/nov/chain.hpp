// Z/2-graded free chain complexes over the Novikov ring.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nov/matrix.hpp"
#include "nov/qlinalg.hpp"

namespace nov {

struct Generator {
  std::string label;
  int parity = 0;  // 0 even, 1 odd
  friend bool operator==(const Generator& a, const Generator& b) {
    return a.label == b.label && a.parity == b.parity;
  }
};

template <class R>
struct Complex {
  std::vector<Generator> gens;
  Mat<R> d;

  Complex() = default;
  Complex(std::vector<Generator> g, Mat<R> m) : gens(std::move(g)), d(std::move(m)) {}
  explicit Complex(std::vector<Generator> g)
      : gens(std::move(g)), d(static_cast<int>(gens.size()), static_cast<int>(gens.size())) {}

  int size() const { return static_cast<int>(gens.size()); }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.gens == b.gens && a.d == b.d;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using ChainComplex = Complex<Scalar>;

std::vector<Generator> flip_parity(std::vector<Generator> g);

template <class R>
Complex<R> shift(const Complex<R>& c) {
  return Complex<R>(flip_parity(c.gens), -c.d);
}

struct Violation {
  std::string kind;  // NegativeValuation | Parity | DSquared | Shape
  int target = -1;
  int source = -1;
  std::string detail;
};

struct VerifyReport {
  bool ok = true;
  std::vector<Violation> violations;
};

VerifyReport verify(const ChainComplex& c, const std::optional<Exponent>& work);

// maps of a given parity between graded modules
bool map_has_parity(const SMat& f, const std::vector<Generator>& src,
                    const std::vector<Generator>& dst, int parity);

// C[1] + C' with [[-d, 0], [f, d']]
ChainComplex cone_of_map(const ChainComplex& c, const ChainComplex& c2, const SMat& f,
                         const std::optional<Exponent>& work = std::nullopt);

struct QComplex {
  std::vector<Generator> gens;
  std::vector<QCol> cols;  // cols[p] = d(p) as target -> coefficient
  int size() const { return static_cast<int>(gens.size()); }
};

QComplex reduce_t0(const ChainComplex& c);
QDense to_dense(const QComplex& c);

struct Betti {
  int even = 0;
  int odd = 0;
  int operator[](int p) const { return p ? odd : even; }
  friend bool operator==(const Betti& a, const Betti& b) {
    return a.even == b.even && a.odd == b.odd;
  }
};

Betti homology_t0(const QComplex& c);

struct AcyclicityResult {
  bool acyclic = false;
  Betti betti;
  int rank_from_even = 0;
  int rank_from_odd = 0;
};

AcyclicityResult is_acyclic(const ChainComplex& c);

struct Bar {
  int parity = 0;
  std::optional<Exponent> length;  // nullopt: free bar
  bool open_at_zero = false;       // Lambda_{>0} rather than Lambda_{>=0}
  bool beyond_precision = false;   // torsion of length >= work, not distinguishable
  std::string label;
};

struct Barcode {
  std::optional<Exponent> precision;
  std::vector<Bar> bars;

  int free_count(int parity) const;
  int torsion_count(int parity) const;
  std::vector<Exponent> torsion_lengths(int parity) const;
  bool is_zero() const { return bars.empty(); }
  void sort_bars();
  std::string table() const;
};

Barcode barcode(const ChainComplex& c, const Exponent& work);

std::string complex_str(const ChainComplex& c);

}  // namespace nov
