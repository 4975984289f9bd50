#include "nov/simplicial.hpp"

#include <algorithm>
#include <numeric>

namespace nov {

std::vector<Perm> permutations(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 1);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int signature(const Perm& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::string perm_str(const Perm& p) {
  std::string s;
  for (int x : p) s += std::to_string(x);
  return s;
}

std::string simplex_symbol(const FaceCode& face, const Perm& p) {
  if (is_vertex(face)) return "d[" + face + "]";
  return "s[" + face + "|" + perm_str(p) + "]";
}

Cube<FreePoly> symbolic_cube(int n) {
  std::map<FaceCode, std::vector<Generator>> gens;
  for (const auto& v : all_vertices(n)) gens[v] = {Generator{"x" + v, 0}};
  Cube<FreePoly> c = Cube<FreePoly>::zero(n, gens);
  for (const auto& face : all_faces(n)) {
    FMat m(1, 1);
    m.set(0, 0, FreePoly::symbol(is_vertex(face) ? "d[" + face + "]" : "f[" + face + "]"));
    c.maps[face] = m;
  }
  return c;
}

Cube<FreePoly> symbolic_simplicial_cube(int n) {
  std::map<FaceCode, std::vector<Generator>> gens;
  for (const auto& v : all_vertices(n)) gens[v] = {Generator{"x" + v, 0}};
  std::map<std::pair<FaceCode, Perm>, FMat> data;
  for (const auto& face : all_faces(n)) {
    for (const auto& p : permutations(face_dim(face))) {
      FMat m(1, 1);
      m.set(0, 0, FreePoly::symbol(simplex_symbol(face, p)));
      data[{face, p}] = m;
    }
  }
  return assemble_from_simplicial<FreePoly>(n, gens, data);
}

namespace {

struct Path {
  std::vector<FaceCode> verts;  // p_1 .. p_m
  std::vector<int> dirs;        // direction (0-based coordinate) of step t
};

Path path_of(const FaceCode& face, const Perm& tau) {
  std::vector<int> dash;
  for (std::size_t k = 0; k < face.size(); ++k)
    if (face[k] == '-') dash.push_back(static_cast<int>(k));
  Path p;
  p.verts.push_back(nu_in(face));
  for (int t : tau) {
    FaceCode next = p.verts.back();
    next[dash[t - 1]] = '1';
    p.dirs.push_back(dash[t - 1]);
    p.verts.push_back(next);
  }
  return p;
}

// simplex spanned by the consecutive path vertices a..b (1-based)
std::string consecutive_symbol(const Path& p, int a, int b) {
  if (a == b) return "d[" + p.verts[a - 1] + "]";
  FaceCode sub = p.verts[a - 1];
  std::vector<int> steps(p.dirs.begin() + (a - 1), p.dirs.begin() + (b - 1));
  for (int d : steps) sub[d] = '-';
  std::vector<int> sorted = steps;
  std::sort(sorted.begin(), sorted.end());
  Perm rel;
  for (int d : steps) {
    rel.push_back(static_cast<int>(std::find(sorted.begin(), sorted.end(), d) - sorted.begin()) +
                  1);
  }
  return simplex_symbol(sub, rel);
}

std::string facet_symbol(const Path& p, int omit) {
  std::string s = "g[";
  bool first = true;
  for (int k = 1; k <= static_cast<int>(p.verts.size()); ++k) {
    if (k == omit) continue;
    if (!first) s += ">";
    s += p.verts[k - 1];
    first = false;
  }
  return s + "]";
}

}  // namespace

AssemblyCheck check_simplicial_assembly(int n) {
  if (n < 1 || n > 3) {
    throw NovikovError("UnsupportedDimension",
                       "symbolic checker supports n <= 3, got " + std::to_string(n));
  }
  AssemblyCheck out;
  out.n = n;
  const Cube<FreePoly> cube = symbolic_simplicial_cube(n);
  out.ok = true;
  for (const auto& face : all_faces(n)) {
    FaceAssembly fa;
    fa.face = face;
    fa.cube_equation = cube_residual(cube, face).get(0, 0);
    const int k = face_dim(face);
    const int m = k + 1;
    struct FacetTerm {
      Perm tau;
      int omit;
      long coeff;
    };
    std::map<std::string, std::vector<FacetTerm>> facets;
    for (const auto& tau : permutations(k)) {
      const int sg = signature(tau);
      const Path p = path_of(face, tau);
      for (int j = 1; j <= m; ++j) {
        const long c = sg * ((j + 1) % 2 ? -1 : 1);
        fa.first_group += FreePoly::symbol(consecutive_symbol(p, j, m), c) *
                          FreePoly::symbol(consecutive_symbol(p, 1, j));
      }
      for (int j = 2; j <= m - 1; ++j) {
        const long c = sg * (j % 2 ? -1 : 1);
        const std::string sym = facet_symbol(p, j);
        fa.second_group += FreePoly::symbol(sym, c);
        facets[sym].push_back({tau, j, c});
      }
    }
    fa.pairs_exact = true;
    for (const auto& [sym, terms] : facets) {
      if (terms.size() != 2 || terms[0].coeff + terms[1].coeff != 0 ||
          terms[0].omit != terms[1].omit) {
        fa.pairs_exact = false;
        continue;
      }
      // partner: swap the two steps around the omitted vertex
      Perm swapped = terms[0].tau;
      const int j = terms[0].omit;
      std::swap(swapped[j - 2], swapped[j - 1]);
      if (swapped != terms[1].tau) {
        fa.pairs_exact = false;
        continue;
      }
      ++fa.cancelled_pairs;
    }
    fa.matches = fa.second_group.is_zero() && fa.cube_equation == fa.first_group;
    out.ok = out.ok && fa.matches && fa.pairs_exact;
    out.faces.push_back(std::move(fa));
  }
  return out;
}

}  // namespace nov
