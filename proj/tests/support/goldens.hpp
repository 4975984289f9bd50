// Symbolic cubes named as in the worked examples: the 2-cube
// C0 -c-> C1, C0' -c'-> C1', f0: C0 -> C0', f1: C1 -> C1', homotopy h, and
// the 3-cube with homotopies g^v and top map H.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "nov/cubes.hpp"
#include "nov/freering.hpp"
#include "nov/simplicial.hpp"

namespace nov::testing {

inline FreePoly sym(const std::string& s) { return FreePoly::symbol(s); }
inline FreePoly word(const std::vector<std::string>& w) {
  FreePoly p(1);
  for (const auto& s : w) p = p * sym(s);
  return p;
}

// 00 = C0, 10 = C1, 01 = C0', 11 = C1'
inline std::map<std::string, std::string> square_names() {
  return {{"f[-0]", "c"}, {"f[-1]", "c'"}, {"f[0-]", "f0"}, {"f[1-]", "f1"},
          {"f[--]", "h"}, {"d[00]", "d"},  {"d[10]", "d"},  {"d[01]", "d"},
          {"d[11]", "d"}};
}

inline FreePoly square_equation() {
  const auto c = symbolic_cube(2);
  return cube_residual(c, "--").get(0, 0).renamed(square_names());
}

// c'f0 - f1c + hd + dh
inline FreePoly square_equation_expected() {
  return word({"c'", "f0"}) - word({"f1", "c"}) + word({"h", "d"}) + word({"d", "h"});
}

// g^v: the composite C^000 -> C^v -> C^111 through the vertex v
inline std::string g_symbol(const std::string& v) { return "g" + v; }

inline FreePoly cube3_equation() {
  const auto c = symbolic_cube(3);
  FreePoly eq = cube_residual(c, "---").get(0, 0);
  std::map<std::string, std::string> names{{"f[---]", "H"}};
  for (const auto& v : all_vertices(3)) names["d[" + v + "]"] = "d";
  eq = eq.renamed(names);
  // collapse each two-letter composite through a vertex into g^v
  std::map<Word, std::string> composite;
  for (const auto& v : all_vertices(3)) {
    int ones = 0;
    for (char ch : v) ones += ch == '1';
    if (ones == 0 || ones == 3) continue;
    FaceCode first(3, '0'), second(3, '1');
    for (int k = 0; k < 3; ++k) {
      if (v[k] == '1') first[k] = '-';
      if (v[k] == '0') second[k] = '-';
    }
    composite[Word{"f[" + second + "]", "f[" + first + "]"}] = g_symbol(v);
  }
  FreePoly out;
  for (const auto& [w, coeff] : eq.terms()) {
    auto it = composite.find(w);
    out += it == composite.end() ? FreePoly(coeff) * word(w) : FreePoly::symbol(it->second, coeff);
  }
  return out;
}

// -g100 + g010 - g001 + g011 - g101 + g110 - dH + Hd
inline FreePoly cube3_equation_expected() {
  return -sym("g100") + sym("g010") - sym("g001") + sym("g011") - sym("g101") + sym("g110") -
         word({"d", "H"}) + word({"H", "d"});
}

inline Cube<FreePoly> named_square() {
  Cube<FreePoly> c = symbolic_cube(2);
  const auto names = square_names();
  for (auto& [face, m] : c.maps) m = m.map_entries([&](const FreePoly& p) { return p.renamed(names); });
  return c;
}

using PolyRows = std::vector<std::vector<FreePoly>>;

inline PolyRows rows_of(const FMat& m) {
  PolyRows r(m.rows(), std::vector<FreePoly>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i][j] = m.get(i, j);
  return r;
}

struct ConeGolden {
  std::string name;
  PolyRows got;
  PolyRows expected;
  bool ok() const { return got == expected; }
};

// the two cones and the fully iterated cone of the 2-cube
inline std::vector<ConeGolden> cone_goldens() {
  const auto sq = named_square();
  const FreePoly d = sym("d"), c = sym("c"), cp = sym("c'"), f0 = sym("f0"), f1 = sym("f1"),
                 h = sym("h");
  const FreePoly z;
  std::vector<ConeGolden> out;
  const auto cf = cone(sq, 2);
  out.push_back({"cone^f vertex C0[1]+C0'", rows_of(cf.f("0")), {{-d, z}, {-f0, d}}});
  out.push_back({"cone^f vertex C1[1]+C1'", rows_of(cf.f("1")), {{-d, z}, {f1, d}}});
  out.push_back({"cone^f edge", rows_of(cf.f("-")), {{-c, z}, {h, cp}}});
  const auto cc = cone(sq, 1);
  out.push_back({"cone^c vertex C0[1]+C1", rows_of(cc.f("0")), {{-d, z}, {c, d}}});
  out.push_back({"cone^c vertex C0'[1]+C1'", rows_of(cc.f("1")), {{-d, z}, {cp, d}}});
  out.push_back({"cone^c edge", rows_of(cc.f("-")), {{f0, z}, {h, f1}}});
  // blocks C0, C1[1], C0'[1], C1'
  out.push_back({"iterated cone (c first)", rows_of(full_cone_in_order(sq, {1, 2}).d),
                 {{d, z, z, z}, {-c, -d, z, z}, {f0, z, -d, z}, {h, f1, cp, d}}});
  // blocks C0, C0'[1], C1[1], C1'
  out.push_back({"iterated cone (f first)", rows_of(full_cone_in_order(sq, {2, 1}).d),
                 {{d, z, z, z}, {f0, -d, z, z}, {-c, z, -d, z}, {h, cp, f1, d}}});
  return out;
}

}  // namespace nov::testing
