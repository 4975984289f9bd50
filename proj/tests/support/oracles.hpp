// Independent oracles: homology over the Novikov field by evaluation at
// generic rational points, and dense T=0 ranks.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "nov/chain.hpp"
#include "nov/qlinalg.hpp"

namespace nov::testing {

// T^(p/q) -> t^(p L / q) with L the common denominator of all exponents
inline mpz_class exponent_lcm(const ChainComplex& c) {
  mpz_class l = 1;
  for (const auto& [k, v] : c.d.entries())
    for (const auto& [e, coeff] : v.terms()) l = lcm(l, mpz_class(e.get_den()));
  return l;
}

inline mpq_class evaluate(const Scalar& x, const mpz_class& l, const mpq_class& t) {
  mpq_class acc = 0;
  for (const auto& [e, coeff] : x.terms()) {
    const mpq_class k = e * l;
    mpz_class num = k.get_num();
    mpq_class p = 1;
    for (mpz_class j = 0; j < num; ++j) p *= t;
    acc += coeff * p;
  }
  return acc;
}

// rank of the part of d leaving generators of the given parity
inline int generic_rank(const ChainComplex& c, int parity) {
  const mpz_class l = exponent_lcm(c);
  int best = 0;
  for (const mpq_class t : {mpq_class(3, 7), mpq_class(5, 11), mpq_class(2, 13)}) {
    std::vector<int> cols;
    for (int p = 0; p < c.size(); ++p)
      if (c.gens[p].parity == parity) cols.push_back(p);
    QDense m(c.size(), static_cast<int>(cols.size()));
    for (const auto& [k, v] : c.d.entries()) {
      auto it = std::find(cols.begin(), cols.end(), k.second);
      if (it != cols.end()) m.at(k.first, static_cast<int>(it - cols.begin())) = evaluate(v, l, t);
    }
    best = std::max(best, m.rank());
  }
  return best;
}

// Betti numbers of C tensored with the Novikov field
inline Betti field_betti(const ChainComplex& c) {
  int ne = 0, no = 0;
  for (const auto& g : c.gens) (g.parity ? no : ne)++;
  const int re = generic_rank(c, 0), ro = generic_rank(c, 1);
  return Betti{ne - re - ro, no - re - ro};
}

inline Betti dense_betti_t0(const ChainComplex& c) {
  const QDense m = to_dense(reduce_t0(c));
  std::vector<int> ev, od;
  for (int p = 0; p < c.size(); ++p) (c.gens[p].parity ? od : ev).push_back(p);
  const int re = m.columns(ev).rank(), ro = m.columns(od).rank();
  return Betti{static_cast<int>(ev.size()) - re - ro, static_cast<int>(od.size()) - re - ro};
}

}  // namespace nov::testing
