#include "nov/morse.hpp"

#include <algorithm>

namespace nov {

namespace {

NovikovError model_error(const std::string& code, const std::string& what) {
  return NovikovError(code, what);
}

Barcode open_bars(const Betti& b, const Exponent& r0) {
  Barcode out;
  out.precision = r0;
  for (int p = 0; p < 2; ++p) {
    for (int k = 0; k < b[p]; ++k) {
      Bar bar;
      bar.parity = p;
      bar.open_at_zero = true;
      bar.label = std::string(p ? "odd" : "even") + "#" + std::to_string(k + 1);
      out.bars.push_back(bar);
    }
  }
  out.sort_bars();
  return out;
}

QComplex sub_complex(const MorseModel& m, const std::vector<bool>& keep) {
  std::vector<int> pos(m.size(), -1);
  QComplex q;
  for (int k = 0; k < m.size(); ++k) {
    if (!keep[k]) continue;
    pos[k] = q.size();
    q.gens.push_back(m.cells[k]);
  }
  q.cols.resize(q.gens.size());
  for (const auto& [key, c] : m.boundary) {
    if (pos[key.first] >= 0 && pos[key.second] >= 0) q.cols[pos[key.second]][pos[key.first]] = c;
  }
  return q;
}

ChainComplex restrict_complex(const ChainComplex& c, const std::vector<bool>& keep) {
  std::vector<int> pos(c.size(), -1);
  std::vector<Generator> g;
  for (int k = 0; k < c.size(); ++k) {
    if (!keep[k]) continue;
    pos[k] = static_cast<int>(g.size());
    g.push_back(c.gens[k]);
  }
  SMat d(static_cast<int>(g.size()), static_cast<int>(g.size()));
  for (const auto& [k, v] : c.d.entries()) {
    if (pos[k.first] >= 0 && pos[k.second] >= 0) d.set(pos[k.first], pos[k.second], v);
  }
  return ChainComplex(std::move(g), std::move(d));
}

Hamiltonian scaled(const MorseModel& m, const Rational& s) {
  Hamiltonian h = m.values;
  for (auto& x : h) x *= s;
  return h;
}

Exponent exponent_spread(const Hamiltonian& h) {
  if (h.empty()) return 0;
  auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  return *hi - *lo;
}

}  // namespace

int MorseModel::index_of(const std::string& label) const {
  for (int k = 0; k < size(); ++k)
    if (cells[k].label == label) return k;
  return -1;
}

void validate_model(const MorseModel& m) {
  if (m.values.size() != m.cells.size()) {
    throw model_error("InvalidModel", "values and cells differ in number");
  }
  if (m.has_base() && m.base.size() != m.cells.size()) {
    throw model_error("InvalidModel", "base map and cells differ in number");
  }
  std::set<std::string> labels;
  for (const auto& c : m.cells) {
    if (!labels.insert(c.label).second) throw model_error("InvalidModel", "duplicate label " + c.label);
  }
  for (const auto& [k, c] : m.boundary) {
    if (k.first < 0 || k.first >= m.size() || k.second < 0 || k.second >= m.size()) {
      throw model_error("InvalidModel", "coboundary entry out of range");
    }
    if (c != 0 && m.cells[k.first].parity == m.cells[k.second].parity) {
      throw model_error("InvalidModel", "coboundary entry " + m.cells[k.second].label + " -> " +
                                            m.cells[k.first].label + " is not odd");
    }
  }
  std::map<std::pair<int, int>, long> sq;
  for (const auto& [k2, c2] : m.boundary)
    for (const auto& [k1, c1] : m.boundary)
      if (k1.first == k2.second) sq[{k2.first, k1.second}] += c2 * c1;
  for (const auto& [k, v] : sq) {
    if (v != 0) throw model_error("InvalidModel", "coboundary does not square to zero");
  }
}

QComplex model_complex(const MorseModel& m) {
  return sub_complex(m, std::vector<bool>(m.size(), true));
}

Betti model_betti(const MorseModel& m) { return homology_t0(model_complex(m)); }

bool admissible(const MorseModel& m, const Hamiltonian& h) {
  for (const auto& [k, c] : m.boundary) {
    if (c != 0 && h[k.first] < h[k.second]) return false;
  }
  return true;
}

ChainComplex cf(const MorseModel& m, const Hamiltonian& h) {
  if (h.size() != m.cells.size()) throw model_error("InvalidModel", "Hamiltonian size mismatch");
  ChainComplex c(m.cells);
  std::string bad;
  for (const auto& [k, coeff] : m.boundary) {
    if (coeff == 0) continue;
    const Exponent e = h[k.first] - h[k.second];
    if (e < 0) {
      if (!bad.empty()) bad += ", ";
      bad += m.cells[k.second].label + "->" + m.cells[k.first].label;
      continue;
    }
    c.d.set(k.first, k.second, Scalar::monomial(coeff, e));
  }
  if (!bad.empty()) throw model_error("Inadmissible", "h decreases along " + bad);
  return c;
}

SMat continuation(const MorseModel& m, const Hamiltonian& h, const Hamiltonian& h2) {
  SMat f(m.size(), m.size());
  for (int p = 0; p < m.size(); ++p) {
    const Exponent e = h2[p] - h[p];
    if (e < 0) throw model_error("NotMonotone", "h' < h at " + m.cells[p].label);
    f.set(p, p, Scalar::T(e));
  }
  return f;
}

CubeDiagram hamiltonian_cube(const MorseModel& m, int n,
                             const std::function<Hamiltonian(const FaceCode&)>& h_at) {
  std::map<FaceCode, Hamiltonian> h;
  std::map<FaceCode, std::vector<Generator>> gens;
  for (const auto& v : all_vertices(n)) {
    h[v] = h_at(v);
    gens[v] = m.cells;
  }
  CubeDiagram c = CubeDiagram::zero(n, gens);
  for (const auto& f : all_faces(n)) {
    if (face_dim(f) == 0) {
      c.maps[f] = cf(m, h[f]).d;
    } else if (face_dim(f) == 1) {
      c.maps[f] = continuation(m, h[nu_in(f)], h[nu_ter(f)]);
    }
  }
  return c;
}

Hamiltonian hmin(const Hamiltonian& a, const Hamiltonian& b) {
  Hamiltonian h(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) h[k] = std::min(a[k], b[k]);
  return h;
}

Hamiltonian hmax(const Hamiltonian& a, const Hamiltonian& b) {
  Hamiltonian h(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) h[k] = std::max(a[k], b[k]);
  return h;
}

// ---------------------------------------------------------------- regions

std::vector<bool> region_cells(const MorseModel& m, const Region& k) {
  std::set<std::string> known;
  for (int p = 0; p < m.size(); ++p) known.insert(m.has_base() ? m.base[p] : m.cells[p].label);
  for (const auto& x : k) {
    if (!known.count(x)) throw model_error("InvalidRegion", "unknown point " + x);
  }
  std::vector<bool> in(m.size());
  for (int p = 0; p < m.size(); ++p) in[p] = k.count(m.has_base() ? m.base[p] : m.cells[p].label);
  return in;
}

void check_region(const MorseModel& m, const Region& k) {
  const auto in = region_cells(m, k);
  for (const auto& [key, c] : m.boundary) {
    if (c != 0 && in[key.first] && !in[key.second]) {
      throw model_error("InadmissibleSubset", "coboundary enters the region at " +
                                                  m.cells[key.first].label + " from " +
                                                  m.cells[key.second].label);
    }
  }
}

Hamiltonian family_member(const MorseModel& m, const Region& k, int i) {
  const auto in = region_cells(m, k);
  Hamiltonian h(m.size());
  for (int p = 0; p < m.size(); ++p) h[p] = in[p] ? Rational(-1, i) : Rational(i);
  for (auto& x : h) x.canonicalize();
  return h;
}

std::vector<Hamiltonian> cofinal_family(const MorseModel& m, const Region& k, int stages) {
  check_region(m, k);
  std::vector<Hamiltonian> out;
  for (int i = 1; i <= stages; ++i) out.push_back(family_member(m, k, i));
  return out;
}

Region all_points(const MorseModel& m) {
  Region k;
  for (int p = 0; p < m.size(); ++p) k.insert(m.has_base() ? m.base[p] : m.cells[p].label);
  return k;
}

// ---------------------------------------------------------------- global sections

Ray scaling_ray(const MorseModel& m) {
  Ray r;
  r.n = 1;
  const Betti b = model_betti(m);
  r.tail = TailSpec::model(
      "scaling H/n",
      [m](int i) {
        return hamiltonian_cube(m, 1, [&](const FaceCode& v) {
          return scaled(m, Rational(1, v == "0" ? i : i + 1));
        });
      },
      [b](const Exponent& r0) { return open_bars(b, r0); });
  return r;
}

GlobalSections global_sections(const MorseModel& m, const Exponent& r0, int depth) {
  validate_model(m);
  for (int p = 0; p < m.size(); ++p) {
    if (m.values[p] >= 0) throw model_error("NotNegative", "H(" + m.cells[p].label + ") >= 0");
  }
  GlobalSections out;
  out.betti = model_betti(m);
  out.ray = scaling_ray(m);
  out.bars = completed_homology(out.ray, r0).bars;
  out.weights_exact = true;
  for (int n = 1; n <= depth; ++n) {
    const Hamiltonian h = scaled(m, Rational(1, n));
    const ChainComplex c = cf(m, h);
    const Barcode b = barcode(c, exponent_spread(h) + 1);
    out.stage_free.push_back(Betti{b.free_count(0), b.free_count(1)});
    const SMat w = continuation(m, h, scaled(m, Rational(1, n + 1)));
    if (static_cast<int>(w.nnz()) != m.size()) out.weights_exact = false;
    for (int p = 0; p < m.size(); ++p) {
      Exponent e = -m.values[p] / (n * (n + 1));
      e.canonicalize();
      if (w.get(p, p) != Scalar::T(e)) out.weights_exact = false;
    }
  }
  out.consistent = out.weights_exact && out.bars.free_count(0) == out.betti.even &&
                   out.bars.free_count(1) == out.betti.odd;
  for (const auto& s : out.stage_free) out.consistent = out.consistent && s == out.betti;
  return out;
}

// ---------------------------------------------------------------- empty set

Ray shift_ray(const MorseModel& m, const Hamiltonian& base_h) {
  CubeDiagram step = hamiltonian_cube(m, 1, [&](const FaceCode& v) {
    Hamiltonian h = base_h;
    if (v == "1")
      for (auto& x : h) x += 1;
    return h;
  });
  Ray r;
  r.n = 1;
  r.tail = TailSpec::stationary_gap(step);
  return r;
}

EmptySet empty_set(const MorseModel& m, const Hamiltonian& base_h, const Exponent& r0,
                   const std::vector<CubeDiagram>& prefix) {
  validate_model(m);
  EmptySet out;
  out.ray = shift_ray(m, base_h);
  out.ray.prefix = prefix;
  validate_ray(out.ray);
  CompletedHomology h = completed_homology(out.ray, r0);
  out.bars = h.bars;
  out.gap = out.ray.tail.gap;
  out.stage = h.stage;
  return out;
}

// ---------------------------------------------------------------- relative SH

Ray cofinal_ray(const MorseModel& m, const Region& k) {
  check_region(m, k);
  const Betti b = homology_t0(sub_complex(m, region_cells(m, k)));
  Ray r;
  r.n = 1;
  r.tail = TailSpec::model(
      "cofinal family",
      [m, k](int i) {
        return hamiltonian_cube(
            m, 1, [&](const FaceCode& v) { return family_member(m, k, v == "0" ? i : i + 1); });
      },
      [b](const Exponent& r0) { return open_bars(b, r0); });
  return r;
}

RelativeSH relative_sh(const MorseModel& m, const Region& k, const Exponent& r0, int depth) {
  validate_model(m);
  check_region(m, k);
  RelativeSH out;
  const auto in = region_cells(m, k);
  out.quotient_betti = homology_t0(sub_complex(m, in));
  out.ray = cofinal_ray(m, k);
  out.bars = completed_homology(out.ray, r0).bars;
  for (int j = 1; j <= depth; ++j) {
    const ChainComplex part = restrict_complex(cf(m, family_member(m, k, j)), in);
    const Barcode b = barcode(part, Exponent(1));
    out.stage_free.push_back(Betti{b.free_count(0), b.free_count(1)});
  }
  // s steps multiply the complement by T^s; stage j0 has 1/j0 < r0
  const mpz_class s_z = (r0.get_num() + r0.get_den() - 1) / r0.get_den();
  const int s = std::max(1, static_cast<int>(s_z.get_si()));
  const mpz_class j_z = r0.get_den() / r0.get_num() + 1;
  const int j0 = static_cast<int>(j_z.get_si());
  out.outside_vanishes = true;
  out.inside_survives = true;
  for (int j = 1; j <= std::max(depth, j0); ++j) {
    const SMat w = continuation(m, family_member(m, k, j), family_member(m, k, j + s));
    for (int p = 0; p < m.size(); ++p) {
      const bool zero = w.get(p, p).is_zero_mod(r0);
      if (!in[p] && !zero) out.outside_vanishes = false;
      if (in[p] && j >= j0 && zero) out.inside_survives = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------- min/max square

MinMaxSquare minmax_square(const MorseModel& m, const Hamiltonian& hx, const Hamiltonian& hy) {
  validate_model(m);
  const Hamiltonian lo = hmin(hx, hy), hi = hmax(hx, hy);
  for (const auto* h : {&lo, &hx, &hy, &hi}) {
    if (!admissible(m, *h)) cf(m, *h);  // throws Inadmissible with details
  }
  MinMaxSquare out;
  out.square = hamiltonian_cube(m, 2, [&](const FaceCode& v) {
    if (v == "00") return lo;
    if (v == "10") return hx;
    if (v == "01") return hy;
    return hi;
  });
  const ChainComplex total = full_cone(out.square);
  const QDense d = to_dense(reduce_t0(total));
  const int s = m.size();
  out.strict = true;
  for (const auto& [k, c] : m.boundary) {
    if (c == 0) continue;
    for (const auto* h : {&lo, &hx, &hy, &hi}) {
      if ((*h)[k.first] <= (*h)[k.second]) out.strict = false;
    }
  }
  out.decomposition = true;
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      if (d.at(r, c) != 0 && r % s != c % s) out.decomposition = false;
  out.pieces_ok = !out.strict || out.decomposition;
  for (int p = 0; p < s; ++p) {
    CellPiece piece;
    piece.label = m.cells[p].label;
    piece.equal_values = hx[p] == hy[p];
    const int x1 = p, y1 = s + p, y2 = 2 * s + p, x2 = 3 * s + p;
    const std::vector<int> idx{x1, y1, y2, x2};
    QDense b(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        b.at(i, j) = d.at(idx[i], idx[j]);
        if (b.at(i, j) != 0) ++piece.nonzero;
      }
    const bool squares_zero = (b * b).is_zero();
    piece.acyclic = squares_zero && b.rank() == 2;
    if (piece.equal_values) {
      // dx1 = a y1 + b y2, dy1 = c x2, dy2 = e x2 rescales to the paper's piece
      const mpq_class &a = b.at(1, 0), &bb = b.at(2, 0), &c = b.at(3, 1), &e = b.at(3, 2);
      piece.pattern_ok = piece.nonzero == 4 && a != 0 && bb != 0 && c != 0 && e != 0 &&
                         a * c + bb * e == 0;
    } else {
      // two disjoint arrows x -> y
      const bool low = hx[p] < hy[p];
      const int u = low ? 1 : 2, v = low ? 2 : 1;
      piece.pattern_ok = piece.nonzero == 2 && b.at(u, 0) != 0 && b.at(3, v) != 0;
    }
    out.pieces_ok = out.pieces_ok && piece.pattern_ok && piece.acyclic;
    out.pieces.push_back(piece);
  }
  out.verdict = is_acyclic(total);
  return out;
}

Ray minmax_ray(const MorseModel& m, const Region& a, const Region& b) {
  check_region(m, a);
  check_region(m, b);
  Ray r;
  r.n = 3;
  r.tail = TailSpec::model(
      "min/max squares",
      [m, a, b](int i) {
        return hamiltonian_cube(m, 3, [&](const FaceCode& v) {
          const int st = v[2] == '1' ? i + 1 : i;
          const Hamiltonian hx = family_member(m, a, st), hy = family_member(m, b, st);
          if (v[0] == '0' && v[1] == '0') return hmin(hx, hy);
          if (v[0] == '1' && v[1] == '0') return hx;
          if (v[0] == '0' && v[1] == '1') return hy;
          return hmax(hx, hy);
        });
      },
      nullptr);
  return r;
}

// ---------------------------------------------------------------- involutive descent

Region subset_region(const std::vector<Region>& regions, const FaceCode& vertex) {
  Region out;
  bool any = false;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (vertex[i] != '1') continue;
    if (!any) {
      out = regions[i];
      any = true;
    } else {
      Region tmp;
      std::set_intersection(out.begin(), out.end(), regions[i].begin(), regions[i].end(),
                            std::inserter(tmp, tmp.begin()));
      out = std::move(tmp);
    }
  }
  if (!any) {
    for (const auto& r : regions) out.insert(r.begin(), r.end());
  }
  return out;
}

Ray descent_ray(const MorseModel& m, const std::vector<Region>& regions, int depth) {
  const int n = static_cast<int>(regions.size());
  std::map<FaceCode, Region> reg;
  for (const auto& v : all_vertices(n)) {
    reg[v] = subset_region(regions, v);
    check_region(m, reg[v]);
  }
  Ray r;
  r.n = n + 1;
  for (int s = 1; s <= depth; ++s) {
    r.prefix.push_back(hamiltonian_cube(m, n + 1, [&](const FaceCode& v) {
      return family_member(m, reg[v.substr(0, n)], v[n] == '1' ? s + 1 : s);
    }));
  }
  return r;
}

namespace {

bool descent_acyclic(const MorseModel& m, const std::vector<Region>& regions, int depth) {
  return descent_complex(descent_ray(m, regions, depth), depth).verdict.acyclic;
}

std::string region_name(const std::vector<int>& parts) {
  std::string s;
  for (int p : parts) s += (s.empty() ? "X" : "uX") + std::to_string(p + 1);
  return s;
}

}  // namespace

DescentInstance involutive_descent_instance(const MorseModel& m,
                                            const std::vector<Region>& regions, int depth) {
  validate_model(m);
  if (!m.has_base()) throw model_error("InvalidModel", "involutive descent needs a base map");
  if (regions.empty()) throw model_error("InvalidRegion", "at least one region is required");
  DescentInstance out;
  out.n = static_cast<int>(regions.size());
  const Ray r = descent_ray(m, regions, depth);
  out.descent = descent_complex(r, depth);
  out.acyclic = out.descent.verdict.acyclic;
  try {
    out.slices = acyclic_slices_implies_acyclic(r, depth);
  } catch (const NovikovError& e) {
    if (e.code() != "SliceNotAcyclic") throw;
  }
  if (out.n == 3) {
    const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    for (const auto& pr : pairs) {
      const Region& a = regions[pr[0]];
      const Region& b = regions[pr[1]];
      const Region& c = regions[pr[2]];
      DescentCheck two{region_name({pr[0]}) + "," + region_name({pr[1]}),
                       descent_acyclic(m, {a, b}, depth)};
      Region ab = a;
      ab.insert(b.begin(), b.end());
      DescentCheck joined{region_name({pr[0], pr[1]}) + "," + region_name({pr[2]}),
                          descent_acyclic(m, {ab, c}, depth)};
      out.appendix_b.push_back(two);
      out.appendix_b.push_back(joined);
    }
    out.appendix_b.push_back(DescentCheck{"X1,X2,X3", out.acyclic});
    out.appendix_b_ok = true;
    for (const auto& c : out.appendix_b) out.appendix_b_ok = out.appendix_b_ok && c.acyclic;
  }
  return out;
}

}  // namespace nov
