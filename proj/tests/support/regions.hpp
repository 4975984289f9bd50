// Admissible regions of Morse models: sets of base points closed under the
// sources of coboundary entries that end in them.
#pragma once

#include <string>
#include <vector>

#include "nov/morse.hpp"
#include "support/random_cubes.hpp"

namespace nov::testing {

inline std::string point_of(const MorseModel& m, int p) {
  return m.has_base() ? m.base[p] : m.cells[p].label;
}

inline Region closure(const MorseModel& m, Region k) {
  bool grown = true;
  while (grown) {
    grown = false;
    for (const auto& [key, c] : m.boundary) {
      if (c == 0) continue;
      if (k.count(point_of(m, key.first)) && !k.count(point_of(m, key.second))) {
        k.insert(point_of(m, key.second));
        grown = true;
      }
    }
  }
  return k;
}

inline Region random_region(Rng& rng, const MorseModel& m) {
  const auto pts = all_points(m);
  Region k;
  for (const auto& x : pts)
    if (rng.coin()) k.insert(x);
  return closure(m, k);
}

// random admissible Hamiltonian with values in {-2, -3/2, ..., 2}: random
// values per base point, then targets raised to their sources until stable
inline Hamiltonian random_admissible(Rng& rng, const MorseModel& m) {
  std::map<std::string, Rational> at;
  for (int p = 0; p < m.size(); ++p) {
    const auto key = point_of(m, p);
    if (!at.count(key)) {
      at[key] = Rational(rng.uniform(-4, 4), 2);
      at[key].canonicalize();
    }
  }
  bool raised = true;
  while (raised) {
    raised = false;
    for (const auto& [key, c] : m.boundary) {
      if (c == 0) continue;
      Rational& tgt = at[point_of(m, key.first)];
      const Rational& src = at[point_of(m, key.second)];
      if (tgt < src) {
        tgt = src;
        raised = true;
      }
    }
  }
  Hamiltonian h(m.size());
  for (int p = 0; p < m.size(); ++p) h[p] = at[point_of(m, p)];
  return h;
}

}  // namespace nov::testing
