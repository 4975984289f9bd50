#include "nov/chain.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace nov {

std::vector<Generator> flip_parity(std::vector<Generator> g) {
  for (auto& x : g) x.parity ^= 1;
  return g;
}

VerifyReport verify(const ChainComplex& c, const std::optional<Exponent>& work) {
  VerifyReport rep;
  const int n = c.size();
  if (c.d.rows() != n || c.d.cols() != n) {
    rep.ok = false;
    rep.violations.push_back({"Shape", -1, -1, "differential is not square of size " +
                                                   std::to_string(n)});
    return rep;
  }
  for (const auto& [k, v] : c.d.entries()) {
    if (val_less(v.val(), Exponent(0))) {
      rep.violations.push_back({"NegativeValuation", k.first, k.second, v.str()});
    }
    if (c.gens[k.first].parity == c.gens[k.second].parity) {
      rep.violations.push_back({"Parity", k.first, k.second,
                                "entry between generators of equal parity"});
    }
  }
  SMat dd = c.d * c.d;
  for (const auto& [k, v] : dd.entries()) {
    if (!Ring<Scalar>::is_zero_mod(v, work)) {
      rep.violations.push_back({"DSquared", k.first, k.second, v.str()});
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

bool map_has_parity(const SMat& f, const std::vector<Generator>& src,
                    const std::vector<Generator>& dst, int parity) {
  for (const auto& [k, v] : f.entries()) {
    if (((dst[k.first].parity + src[k.second].parity) & 1) != (parity & 1)) return false;
  }
  return true;
}

ChainComplex cone_of_map(const ChainComplex& c, const ChainComplex& c2, const SMat& f,
                         const std::optional<Exponent>& work) {
  if (f.rows() != c2.size() || f.cols() != c.size()) {
    throw NovikovError("NotChainMap", "map has wrong shape");
  }
  if (!map_has_parity(f, c.gens, c2.gens, 0)) {
    throw NovikovError("NotChainMap", "map is not even");
  }
  SMat comm = f * c.d - c2.d * f;
  if (!comm.is_zero_mod(work)) {
    throw NovikovError("NotChainMap", "f d != d' f");
  }
  std::vector<Generator> g = flip_parity(c.gens);
  g.insert(g.end(), c2.gens.begin(), c2.gens.end());
  const int n = c.size();
  SMat d(static_cast<int>(g.size()), static_cast<int>(g.size()));
  d.put_block(0, 0, -c.d);
  d.put_block(n, 0, f);
  d.put_block(n, n, c2.d);
  return ChainComplex(std::move(g), std::move(d));
}

QComplex reduce_t0(const ChainComplex& c) {
  QComplex q;
  q.gens = c.gens;
  q.cols.resize(c.gens.size());
  for (const auto& [k, v] : c.d.entries()) {
    mpq_class r = v.reduce_t0();
    if (r != 0) q.cols[k.second][k.first] = r;
  }
  return q;
}

QDense to_dense(const QComplex& c) {
  QDense m(c.size(), c.size());
  for (int p = 0; p < c.size(); ++p)
    for (const auto& [r, v] : c.cols[p]) m.at(r, p) = v;
  return m;
}

namespace {

int rank_from_parity(const QComplex& c, int parity) {
  std::vector<QCol> cols;
  for (int p = 0; p < c.size(); ++p) {
    if (c.gens[p].parity == parity) cols.push_back(c.cols[p]);
  }
  return sparse_rank(std::move(cols));
}

}  // namespace

Betti homology_t0(const QComplex& c) {
  int n_even = 0, n_odd = 0;
  for (const auto& g : c.gens) (g.parity ? n_odd : n_even)++;
  const int re = rank_from_parity(c, 0);  // even -> odd
  const int ro = rank_from_parity(c, 1);  // odd -> even
  return Betti{n_even - re - ro, n_odd - ro - re};
}

AcyclicityResult is_acyclic(const ChainComplex& c) {
  QComplex q = reduce_t0(c);
  AcyclicityResult r;
  r.rank_from_even = rank_from_parity(q, 0);
  r.rank_from_odd = rank_from_parity(q, 1);
  int n_even = 0, n_odd = 0;
  for (const auto& g : q.gens) (g.parity ? n_odd : n_even)++;
  r.betti = Betti{n_even - r.rank_from_even - r.rank_from_odd,
                  n_odd - r.rank_from_odd - r.rank_from_even};
  r.acyclic = r.betti.even == 0 && r.betti.odd == 0;
  return r;
}

int Barcode::free_count(int parity) const {
  int n = 0;
  for (const auto& b : bars)
    if (b.parity == parity && !b.length) ++n;
  return n;
}

int Barcode::torsion_count(int parity) const {
  int n = 0;
  for (const auto& b : bars)
    if (b.parity == parity && b.length) ++n;
  return n;
}

std::vector<Exponent> Barcode::torsion_lengths(int parity) const {
  std::vector<Exponent> out;
  for (const auto& b : bars)
    if (b.parity == parity && b.length) out.push_back(*b.length);
  std::sort(out.begin(), out.end());
  return out;
}

void Barcode::sort_bars() {
  std::stable_sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
    if (a.parity != b.parity) return a.parity < b.parity;
    if (a.length.has_value() != b.length.has_value()) return a.length.has_value();
    if (a.length && *a.length != *b.length) return *a.length < *b.length;
    return a.label < b.label;
  });
}

std::string Barcode::table() const {
  std::ostringstream os;
  os << std::left << std::setw(8) << "parity" << std::setw(10) << "kind" << std::setw(12)
     << "length" << "generator\n";
  for (const auto& b : bars) {
    std::string kind = b.length ? "torsion" : (b.open_at_zero ? "open" : "free");
    std::string len = b.length ? b.length->get_str() : "inf";
    if (b.beyond_precision) len += "?";
    os << std::left << std::setw(8) << (b.parity ? "odd" : "even") << std::setw(10) << kind
       << std::setw(12) << len << b.label << "\n";
  }
  if (precision) os << "modulo T^" << precision->get_str() << "\n";
  return os.str();
}

Barcode barcode(const ChainComplex& c, const Exponent& work) {
  if (work <= 0) throw NovikovError("InvalidPrecision", "working precision must be > 0");
  const int n = c.size();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar().truncate(work)));
  bool dropped = false;
  for (const auto& [k, v] : c.d.entries()) {
    if (val_less(v.val(), Exponent(0))) {
      throw NovikovError("NegativeValuation", "barcode needs entries over Lambda_{>=0}");
    }
    m[k.first][k.second] = v.truncate(work);
    if (m[k.first][k.second].is_zero() && !v.is_zero()) dropped = true;
  }
  std::vector<bool> alive(n, true);
  Barcode out;
  out.precision = work;
  while (true) {
    int pq = -1, pp = -1;
    Valuation best;
    for (int p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      for (int q = 0; q < n; ++q) {
        if (!alive[q]) continue;
        Valuation v = m[q][p].val();
        if (val_less(v, best)) {
          best = v;
          pq = q;
          pp = p;
        }
      }
    }
    if (pq < 0) break;
    const Exponent alpha = *best;
    for (int p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      for (int q = 0; q < n; ++q) {
        if (!alive[q]) continue;
        const auto& pr = m[q][p].precision();
        if (pr && *pr < alpha) {
          throw NovikovError("PrecisionExhausted",
                             "pivot of valuation " + alpha.get_str() +
                                 " is ambiguous: an entry is only known modulo T^" +
                                 pr->get_str());
        }
      }
    }
    const Scalar y = m[pq][pp].invert(work);
    // e_q <- e_q + sum a_j e_j clears column pp below the pivot
    std::vector<std::pair<int, Scalar>> a;
    for (int j = 0; j < n; ++j) {
      if (!alive[j] || j == pq || m[j][pp].is_zero()) continue;
      a.emplace_back(j, m[j][pp] * y);
    }
    for (const auto& [j, aj] : a) {
      for (int i = 0; i < n; ++i) {
        if (alive[i] && !m[i][j].is_zero()) m[i][pq] += aj * m[i][j];
      }
    }
    for (const auto& [j, aj] : a) {
      for (int k = 0; k < n; ++k) {
        if (alive[k] && !m[pq][k].is_zero()) m[j][k] -= aj * m[pq][k];
      }
    }
    // e_k <- e_k - b_k e_p clears row pq
    std::vector<std::pair<int, Scalar>> b;
    for (int k = 0; k < n; ++k) {
      if (!alive[k] || k == pp || m[pq][k].is_zero()) continue;
      b.emplace_back(k, m[pq][k] * y);
    }
    for (const auto& [k, bk] : b) {
      for (int i = 0; i < n; ++i) {
        if (alive[i] && !m[i][pp].is_zero()) m[i][k] -= bk * m[i][pp];
      }
    }
    for (const auto& [k, bk] : b) {
      for (int j = 0; j < n; ++j) {
        if (alive[j] && !m[k][j].is_zero()) m[pp][j] += bk * m[k][j];
      }
    }
    alive[pp] = false;
    alive[pq] = false;
    if (alpha == 0) continue;
    Bar bar;
    bar.parity = c.gens[pq].parity;
    bar.length = alpha;
    bar.label = c.gens[pq].label;
    out.bars.push_back(bar);
  }
  for (int p = 0; p < n; ++p) {
    if (!alive[p]) continue;
    Bar bar;
    bar.parity = c.gens[p].parity;
    bar.beyond_precision = dropped;
    bar.label = c.gens[p].label;
    out.bars.push_back(bar);
  }
  out.sort_bars();
  return out;
}

std::string complex_str(const ChainComplex& c) {
  std::ostringstream os;
  for (int i = 0; i < c.size(); ++i) {
    os << c.gens[i].label << (c.gens[i].parity ? " (odd)" : " (even)") << "\n";
  }
  for (const auto& [k, v] : c.d.entries()) {
    os << "  d(" << c.gens[k.second].label << ") ∋ " << v.str() << " * "
       << c.gens[k.first].label << "\n";
  }
  return os.str();
}

}  // namespace nov
