// n-cubes of chain complexes: per-face maps f_F for every face F of Cube^n,
// vertex maps being the differentials.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "nov/chain.hpp"
#include "nov/faces.hpp"

namespace nov {

template <class R>
struct Cube {
  int n = 0;
  std::map<FaceCode, std::vector<Generator>> vertex;
  std::map<FaceCode, Mat<R>> maps;
  // coniform data: number of leading (shifted) generators at each vertex
  std::map<FaceCode, int> split;

  int size_at(const FaceCode& v) const { return static_cast<int>(vertex.at(v).size()); }
  const Mat<R>& f(const FaceCode& face) const { return maps.at(face); }
  Complex<R> vertex_complex(const FaceCode& v) const {
    return Complex<R>(vertex.at(v), maps.at(v));
  }
  // every face map present and zero
  static Cube zero(int n, const std::map<FaceCode, std::vector<Generator>>& gens) {
    Cube c;
    c.n = n;
    c.vertex = gens;
    for (const auto& face : all_faces(n)) {
      c.maps[face] = Mat<R>(static_cast<int>(gens.at(nu_ter(face)).size()),
                            static_cast<int>(gens.at(nu_in(face)).size()));
    }
    return c;
  }
  friend bool operator==(const Cube& a, const Cube& b) {
    return a.n == b.n && a.vertex == b.vertex && a.maps == b.maps;
  }
  friend bool operator!=(const Cube& a, const Cube& b) { return !(a == b); }
};

using CubeDiagram = Cube<Scalar>;

// ---------------------------------------------------------------- errors

inline NovikovError cube_error(const std::string& code, const std::string& what) {
  return NovikovError(code, what);
}

// ---------------------------------------------------------------- verification

// Sum over boundary pairs of F of (+-) f_{F''} f_{F'}.
template <class R>
Mat<R> cube_residual(const Cube<R>& c, const FaceCode& face, bool positive = false) {
  Mat<R> acc(c.size_at(nu_ter(face)), c.size_at(nu_in(face)));
  for (const auto& bp : boundary_pairs(face)) {
    Mat<R> term = c.f(bp.second) * c.f(bp.first);
    if (!positive && star_exponent(bp.v) % 2) {
      acc = acc - term;
    } else {
      acc = acc + term;
    }
  }
  return acc;
}

struct FaceCheck {
  FaceCode face;
  bool ok = true;
  std::size_t residual_nnz = 0;
  std::string detail;
};

struct CubeReport {
  bool ok = true;
  std::vector<FaceCheck> faces;  // failing faces only
  std::vector<std::string> structural;
};

template <class R>
CubeReport verify_cube(const Cube<R>& c, const std::optional<Exponent>& work = std::nullopt,
                       bool positive = false, bool check_parity = true) {
  CubeReport rep;
  for (const auto& v : all_vertices(c.n)) {
    if (!c.vertex.count(v)) rep.structural.push_back("missing vertex " + v);
  }
  for (const auto& face : all_faces(c.n)) {
    if (!c.maps.count(face)) {
      rep.structural.push_back("missing map at face " + face);
      continue;
    }
    const Mat<R>& m = c.f(face);
    if (!c.vertex.count(nu_in(face)) || !c.vertex.count(nu_ter(face))) continue;
    if (m.rows() != c.size_at(nu_ter(face)) || m.cols() != c.size_at(nu_in(face))) {
      rep.structural.push_back("map at face " + face + " has wrong shape");
      continue;
    }
    if (check_parity) {
      const auto& src = c.vertex.at(nu_in(face));
      const auto& dst = c.vertex.at(nu_ter(face));
      for (const auto& [k, val] : m.entries()) {
        if (((src[k.second].parity + dst[k.first].parity + face_dim(face) + 1) & 1) != 0) {
          rep.structural.push_back("parity violation at face " + face);
          break;
        }
      }
    }
    if constexpr (std::is_same_v<R, Scalar>) {
      for (const auto& [k, val] : m.entries()) {
        if (val_less(val.val(), Exponent(0))) {
          rep.structural.push_back("negative valuation at face " + face);
          break;
        }
      }
    }
  }
  if (!rep.structural.empty()) {
    rep.ok = false;
    return rep;
  }
  for (const auto& face : all_faces(c.n)) {
    Mat<R> res = cube_residual(c, face, positive);
    if (!res.is_zero_mod(work)) {
      FaceCheck fc;
      fc.face = face;
      fc.ok = false;
      fc.residual_nnz = res.nnz();
      const auto& first = *res.entries().begin();
      fc.detail = "entry (" + std::to_string(first.first.first) + "," +
                  std::to_string(first.first.second) + ") = " + Ring<R>::str(first.second);
      rep.faces.push_back(fc);
    }
  }
  rep.ok = rep.faces.empty();
  return rep;
}

// ---------------------------------------------------------------- signs

template <class R>
Cube<R> to_positive_signs(const Cube<R>& c) {
  Cube<R> out = c;
  for (auto& [face, m] : out.maps) {
    if (positive_sign_exponent(face) % 2) m = -m;
  }
  return out;
}

template <class R>
Cube<R> from_positive_signs(const Cube<R>& c) {
  return to_positive_signs(c);
}

// ---------------------------------------------------------------- cone / decone

inline std::vector<Generator> cone_module(const std::vector<Generator>& a,
                                          const std::vector<Generator>& b) {
  std::set<std::string> used;
  for (const auto& g : b) used.insert(g.label);
  std::vector<Generator> out;
  out.reserve(a.size() + b.size());
  for (const auto& g : a) {
    Generator s{g.label, g.parity ^ 1};
    while (used.count(s.label)) s.label += "'";
    used.insert(s.label);
    out.push_back(s);
  }
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <class R>
Cube<R> cone(const Cube<R>& c, int i) {
  if (c.n < 1 || i < 1 || i > c.n) {
    throw cube_error("InvalidDirection", "cone direction " + std::to_string(i) +
                                             " on a " + std::to_string(c.n) + "-cube");
  }
  const Cube<R> p = to_positive_signs(c);
  Cube<R> out;
  out.n = c.n - 1;
  for (const auto& w : all_vertices(out.n)) {
    const auto& a = p.vertex.at(insert_at(w, i, '0'));
    const auto& b = p.vertex.at(insert_at(w, i, '1'));
    out.vertex[w] = cone_module(a, b);
    out.split[w] = static_cast<int>(a.size());
  }
  for (const auto& face : all_faces(out.n)) {
    const FaceCode in = nu_in(face), ter = nu_ter(face);
    const int ain = out.split[in], ater = out.split[ter];
    Mat<R> m(out.size_at(ter), out.size_at(in));
    m.put_block(0, 0, p.f(insert_at(face, i, '0')));
    m.put_block(ater, 0, p.f(insert_at(face, i, '-')));
    m.put_block(ater, ain, p.f(insert_at(face, i, '1')));
    out.maps[face] = std::move(m);
  }
  Cube<R> res = from_positive_signs(out);
  res.split = out.split;
  return res;
}

template <class R>
Cube<R> decone(const Cube<R>& c, int i) {
  if (i < 1 || i > c.n + 1) {
    throw cube_error("InvalidDirection", "decone direction " + std::to_string(i));
  }
  for (const auto& w : all_vertices(c.n)) {
    if (!c.split.count(w)) throw cube_error("NotConiform", "no splitting at vertex " + w);
  }
  const Cube<R> p = to_positive_signs(c);
  Cube<R> out;
  out.n = c.n + 1;
  for (const auto& w : all_vertices(c.n)) {
    const auto& g = p.vertex.at(w);
    const int k = p.split.at(w);
    if (k < 0 || k > static_cast<int>(g.size())) {
      throw cube_error("NotConiform", "bad splitting at vertex " + w);
    }
    std::vector<Generator> a(g.begin(), g.begin() + k), b(g.begin() + k, g.end());
    out.vertex[insert_at(w, i, '0')] = flip_parity(a);
    out.vertex[insert_at(w, i, '1')] = b;
  }
  for (const auto& face : all_faces(c.n)) {
    const FaceCode in = nu_in(face), ter = nu_ter(face);
    const int kin = p.split.at(in), kter = p.split.at(ter);
    const Mat<R>& m = p.f(face);
    const int rows = m.rows(), cols = m.cols();
    if (!m.block(0, kter, kin, cols - kin).empty()) {
      throw cube_error("NotConiform", "map at face " + face + " is not lower triangular");
    }
    out.maps[insert_at(face, i, '0')] = m.block(0, kter, 0, kin);
    out.maps[insert_at(face, i, '-')] = m.block(kter, rows - kter, 0, kin);
    out.maps[insert_at(face, i, '1')] = m.block(kter, rows - kter, kin, cols - kin);
  }
  return from_positive_signs(out);
}

// Contracts all directions, always the first remaining one.
template <class R>
Complex<R> full_cone(const Cube<R>& c) {
  Cube<R> cur = c;
  while (cur.n > 0) cur = cone(cur, 1);
  return cur.vertex_complex("");
}

// Contracts directions in the given order of original coordinates.
template <class R>
Complex<R> full_cone_in_order(const Cube<R>& c, const std::vector<int>& order) {
  std::vector<int> remaining;
  for (int k = 1; k <= c.n; ++k) remaining.push_back(k);
  Cube<R> cur = c;
  for (int dir : order) {
    int pos = 0;
    while (remaining[pos] != dir) ++pos;
    cur = cone(cur, pos + 1);
    remaining.erase(remaining.begin() + pos);
  }
  return cur.vertex_complex("");
}

// ---------------------------------------------------------------- sub-cubes, id, composition

template <class R>
Cube<R> restrict_to_face(const Cube<R>& c, const FaceCode& face) {
  Cube<R> out;
  out.n = face_dim(face);
  for (const auto& v : all_vertices(out.n)) out.vertex[v] = c.vertex.at(embed_in_face(face, v));
  for (const auto& g : all_faces(out.n)) out.maps[g] = c.f(embed_in_face(face, g));
  return out;
}

template <class R>
Cube<R> id_cube(const Cube<R>& c) {
  Cube<R> out;
  out.n = c.n + 1;
  for (const auto& [v, g] : c.vertex) {
    out.vertex[v + "0"] = g;
    out.vertex[v + "1"] = g;
  }
  for (const auto& [face, m] : c.maps) {
    out.maps[face + "0"] = m;
    out.maps[face + "1"] = m;
    const int s = c.size_at(nu_in(face));
    if (is_vertex(face)) {
      out.maps[face + "-"] = Mat<R>::identity(s);
    } else {
      out.maps[face + "-"] = Mat<R>(c.size_at(nu_ter(face)), s);
    }
  }
  return out;
}

template <class R>
bool glue_check(const Cube<R>& a, const Cube<R>& b, int k) {
  if (a.n != b.n || k < 1 || k > a.n) return false;
  FaceCode fa(a.n, '-'), fb(a.n, '-');
  fa[k - 1] = '1';
  fb[k - 1] = '0';
  Cube<R> ra = restrict_to_face(a, fa), rb = restrict_to_face(b, fb);
  return ra.vertex == rb.vertex && ra.maps == rb.maps;
}

// Composition of maps of (n-1)-cubes m1: C -> C', m2: C' -> C''.
template <class R>
Cube<R> compose(const Cube<R>& m1, const Cube<R>& m2) {
  if (m1.n < 1 || !glue_check(m1, m2, m1.n)) {
    throw cube_error("NotGluable", "cubes do not glue in the last direction");
  }
  const int n = m1.n;
  Cube<R> out;
  out.n = n;
  for (const auto& w : all_vertices(n - 1)) {
    out.vertex[w + "0"] = m1.vertex.at(w + "0");
    out.vertex[w + "1"] = m2.vertex.at(w + "1");
  }
  for (const auto& g : all_faces(n - 1)) {
    out.maps[g + "0"] = m1.f(g + "0");
    out.maps[g + "1"] = m2.f(g + "1");
    Mat<R> acc(out.size_at(nu_ter(g) + "1"), out.size_at(nu_in(g) + "0"));
    for (const auto& bp : boundary_pairs(g)) {
      Mat<R> term = m2.f(bp.second + "-") * m1.f(bp.first + "-");
      if (subtuple_count("01", bp.v) % 2) {
        acc = acc - term;
      } else {
        acc = acc + term;
      }
    }
    out.maps[g + "-"] = std::move(acc);
  }
  return out;
}

// ---------------------------------------------------------------- slits and triangles

template <class R>
bool is_id_map(const Cube<R>& m) {
  if (m.n < 1) return false;
  FaceCode lo(m.n, '-'), hi(m.n, '-');
  lo[m.n - 1] = '0';
  hi[m.n - 1] = '1';
  Cube<R> base = restrict_to_face(m, lo);
  return restrict_to_face(m, hi) == base && m == id_cube(base);
}

// An (n+2)-triangle has faces x_{n+1}=0: f, x_{n+1}=1: g, x_{n+2}=0: id,
// x_{n+2}=1: f'. The slit keeps the fillers and replaces f by f'∘f.
template <class R>
Cube<R> triangle_to_slit(const Cube<R>& t) {
  if (t.n < 2) throw cube_error("NotTriangle", "triangles have dimension >= 2");
  const int n = t.n - 2;
  const std::string dash(n, '-');
  Cube<R> idface = restrict_to_face(t, dash + "-0");
  if (!is_id_map(idface)) throw cube_error("NotTriangle", "x_{n+2}=0 face is not an id map");
  Cube<R> f = restrict_to_face(t, dash + "0-");
  Cube<R> fp = restrict_to_face(t, dash + "-1");
  Cube<R> comp = compose(f, fp);
  Cube<R> cpp = restrict_to_face(t, dash + "11");
  Cube<R> idpp = id_cube(cpp);
  Cube<R> s;
  s.n = t.n;
  for (const auto& w : all_vertices(n)) {
    s.vertex[w + "00"] = t.vertex.at(w + "00");
    s.vertex[w + "10"] = t.vertex.at(w + "10");
    s.vertex[w + "01"] = t.vertex.at(w + "11");
    s.vertex[w + "11"] = t.vertex.at(w + "11");
  }
  for (const auto& g : all_faces(n)) {
    s.maps[g + "00"] = t.f(g + "00");
    s.maps[g + "10"] = t.f(g + "10");
    s.maps[g + "01"] = t.f(g + "11");
    s.maps[g + "11"] = t.f(g + "11");
    s.maps[g + "0-"] = comp.f(g + "-");
    s.maps[g + "1-"] = t.f(g + "1-");
    s.maps[g + "-0"] = t.f(g + "-0");
    s.maps[g + "-1"] = idpp.f(g + "-");
    s.maps[g + "--"] = t.f(g + "--");
  }
  return s;
}

// The outer faces in direction n+2 of an (n+2)-slit are id maps.
template <class R>
bool is_slit(const Cube<R>& s) {
  if (s.n < 2) return false;
  const std::string dash(s.n - 2, '-');
  return is_id_map(restrict_to_face(s, dash + "-0")) &&
         is_id_map(restrict_to_face(s, dash + "-1"));
}

template <class R>
bool is_triangle(const Cube<R>& t) {
  if (t.n < 2) return false;
  const std::string dash(t.n - 2, '-');
  return is_id_map(restrict_to_face(t, dash + "-0"));
}

// ---------------------------------------------------------------- identification helpers

// Reorders a complex so that generator labels follow `order`.
template <class R>
Complex<R> permute_by_labels(const Complex<R>& c, const std::vector<std::string>& order) {
  std::map<std::string, int> pos;
  for (int k = 0; k < static_cast<int>(order.size()); ++k) pos[order[k]] = k;
  if (pos.size() != c.gens.size() || order.size() != c.gens.size()) {
    throw std::invalid_argument("permute_by_labels: label sets differ");
  }
  std::vector<int> map(c.gens.size());
  std::vector<Generator> g(c.gens.size());
  for (std::size_t k = 0; k < c.gens.size(); ++k) {
    auto it = pos.find(c.gens[k].label);
    if (it == pos.end()) throw std::invalid_argument("permute_by_labels: unknown label");
    map[k] = it->second;
    g[it->second] = c.gens[k];
  }
  return Complex<R>(g, c.d.reindexed(c.size(), c.size(), map, map));
}

template <class R>
std::vector<std::string> labels_of(const Complex<R>& c) {
  std::vector<std::string> out;
  for (const auto& g : c.gens) out.push_back(g.label);
  return out;
}

}  // namespace nov
