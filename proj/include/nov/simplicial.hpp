// Cubes assembled from simplex data: each k-face of Cube^n is covered by k!
// simplices, one per permutation of its directions.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nov/cubes.hpp"
#include "nov/freering.hpp"

namespace nov {

using Perm = std::vector<int>;  // permutation of 1..k

std::vector<Perm> permutations(int k);
int signature(const Perm& p);
std::string perm_str(const Perm& p);

// symbol naming the simplex map of face F along permutation p; vertices
// carry their differential "d[v]"
std::string simplex_symbol(const FaceCode& face, const Perm& p);

// f_F = sum over permutations of sign(p) * simplex map
template <class R>
Cube<R> assemble_from_simplicial(
    int n, const std::map<FaceCode, std::vector<Generator>>& vertex,
    const std::map<std::pair<FaceCode, Perm>, Mat<R>>& simplex_maps) {
  Cube<R> c = Cube<R>::zero(n, vertex);
  for (const auto& face : all_faces(n)) {
    Mat<R> acc = c.f(face);
    for (const auto& p : permutations(face_dim(face))) {
      auto it = simplex_maps.find({face, p});
      if (it == simplex_maps.end()) continue;
      acc = signature(p) > 0 ? acc + it->second : acc - it->second;
    }
    c.maps[face] = std::move(acc);
  }
  return c;
}

// Symbolic n-cube with one formal generator per vertex and map symbol
// "f[F]" on each face ("d[v]" on vertices).
Cube<FreePoly> symbolic_cube(int n);

// Cube assembled from formal simplex symbols.
Cube<FreePoly> symbolic_simplicial_cube(int n);

struct FaceAssembly {
  FaceCode face;
  FreePoly cube_equation;      // assembled cube equation at the face
  FreePoly first_group;        // sum of sign * composite terms
  FreePoly second_group;       // sum of sign * facet terms
  int cancelled_pairs = 0;     // transposition pairs matched
  bool pairs_exact = false;    // every facet term paired with its transposition partner
  bool matches = false;        // cube_equation == first_group and second_group == 0
};

struct AssemblyCheck {
  int n = 0;
  bool ok = false;
  std::vector<FaceAssembly> faces;
};

// Certifies, for n <= 3, that every face's cube equation of the assembled
// cube is the signed sum of the simplicial relations of its simplices.
AssemblyCheck check_simplicial_assembly(int n);

}  // namespace nov
