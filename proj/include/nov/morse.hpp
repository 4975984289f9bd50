// Combinatorial Morse-Novikov models: cells with values and an integer
// coboundary, weighted complexes CF(h), continuation maps and the rays,
// squares and descent instances built from them.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nov/chain.hpp"
#include "nov/cubes.hpp"
#include "nov/rays.hpp"

namespace nov {

struct MorseModel {
  std::string name;
  std::vector<Generator> cells;
  std::vector<Rational> values;   // the Morse function H
  std::vector<std::string> base;  // base point of each cell; empty when absent
  // (target, source) -> coefficient; targets have larger value
  std::map<std::pair<int, int>, long> boundary;

  int size() const { return static_cast<int>(cells.size()); }
  bool has_base() const { return !base.empty(); }
  int index_of(const std::string& label) const;
};

using Hamiltonian = std::vector<Rational>;
using Region = std::set<std::string>;

// throws InvalidModel: sizes, parity of the coboundary, coboundary squared
void validate_model(const MorseModel& m);
QComplex model_complex(const MorseModel& m);
Betti model_betti(const MorseModel& m);

// CF(h): entry (q,p) = coeff * T^{h(q)-h(p)}; throws Inadmissible
ChainComplex cf(const MorseModel& m, const Hamiltonian& h);
bool admissible(const MorseModel& m, const Hamiltonian& h);
// diagonal p -> T^{h2(p)-h(p)} p; throws NotMonotone
SMat continuation(const MorseModel& m, const Hamiltonian& h, const Hamiltonian& h2);

// n-cube of weighted complexes with diagonal continuations on edges and
// zero maps on faces of dimension >= 2
CubeDiagram hamiltonian_cube(const MorseModel& m, int n,
                             const std::function<Hamiltonian(const FaceCode&)>& h_at);

Hamiltonian hmin(const Hamiltonian& a, const Hamiltonian& b);
Hamiltonian hmax(const Hamiltonian& a, const Hamiltonian& b);

// ---------------------------------------------------------------- regions

// cells lying over the region (by base point when present, else by label)
std::vector<bool> region_cells(const MorseModel& m, const Region& k);
// throws InadmissibleSubset when a coboundary entry enters k from outside
void check_region(const MorseModel& m, const Region& k);
// h_i = -1/i on k and i outside, for i = 1..stages
std::vector<Hamiltonian> cofinal_family(const MorseModel& m, const Region& k, int stages);
Hamiltonian family_member(const MorseModel& m, const Region& k, int i);
Region all_points(const MorseModel& m);

// ---------------------------------------------------------------- global sections, empty set

struct GlobalSections {
  Barcode bars;
  Betti betti;                     // of the model coboundary over Q
  std::vector<Betti> stage_free;   // free ranks of barcode(CF(H/n)), n = 1..depth
  bool weights_exact = false;      // continuation H/n -> H/(n+1) is T^{-H/(n(n+1))}
  bool consistent = false;
  Ray ray;
};

// throws NotNegative unless H < 0 everywhere
GlobalSections global_sections(const MorseModel& m, const Exponent& r0, int depth);
Ray scaling_ray(const MorseModel& m);

struct EmptySet {
  Barcode bars;
  Exponent gap = 1;
  std::optional<int> stage;
  Ray ray;
};

// the shift family base_h + s; prefix optionally prepends cubes
EmptySet empty_set(const MorseModel& m, const Hamiltonian& base_h, const Exponent& r0,
                   const std::vector<CubeDiagram>& prefix = {});
Ray shift_ray(const MorseModel& m, const Hamiltonian& base_h);

// ---------------------------------------------------------------- relative SH

struct RelativeSH {
  Barcode bars;
  Betti quotient_betti;            // coboundary restricted to the cells over k
  std::vector<Betti> stage_free;   // free ranks of the k-part of CF(h_j)
  bool outside_vanishes = false;   // continuations kill the complement mod T^{r0}
  bool inside_survives = false;    // and keep the k-part
  Ray ray;
};

Ray cofinal_ray(const MorseModel& m, const Region& k);
RelativeSH relative_sh(const MorseModel& m, const Region& k, const Exponent& r0, int depth);

// ---------------------------------------------------------------- min/max square

struct CellPiece {
  std::string label;
  bool equal_values = false;  // hX(p) == hY(p): the 4-generator piece
  int nonzero = 0;            // nonzero T=0 entries within the cell block
  bool pattern_ok = false;
  bool acyclic = false;
};

struct MinMaxSquare {
  CubeDiagram square;  // CF(min) -> CF(hX), CF(hY) -> CF(max)
  std::vector<CellPiece> pieces;
  bool strict = false;         // vertex differentials vanish at T=0
  bool decomposition = false;  // strict => T=0 complex is the direct sum of the pieces
  bool pieces_ok = false;
  AcyclicityResult verdict;
};

MinMaxSquare minmax_square(const MorseModel& m, const Hamiltonian& hx, const Hamiltonian& hy);

// 3-ray of min/max squares for the cofinal families of two regions
Ray minmax_ray(const MorseModel& m, const Region& a, const Region& b);

// ---------------------------------------------------------------- involutive descent

// region of subset-cube vertex I: the union when I is empty, else the
// intersection of the chosen regions
Region subset_region(const std::vector<Region>& regions, const FaceCode& vertex);
Ray descent_ray(const MorseModel& m, const std::vector<Region>& regions, int depth);

struct DescentCheck {
  std::string name;
  bool acyclic = false;
};

struct DescentInstance {
  int n = 0;
  DescentComplex descent;
  SliceCertificate slices;
  bool acyclic = false;
  std::vector<DescentCheck> appendix_b;  // n = 3 only
  bool appendix_b_ok = true;
};

DescentInstance involutive_descent_instance(const MorseModel& m,
                                            const std::vector<Region>& regions, int depth);

// ---------------------------------------------------------------- bundled models

MorseModel point_model();
MorseModel interval_model();
MorseModel circle_model(int vertices = 2);
MorseModel sphere_model();
MorseModel torus_model();
// product with the base map taken from the first factor, or from the product
// cell itself when own_base is set
MorseModel product_model(const MorseModel& base, const MorseModel& fiber, bool own_base);
MorseModel circle_base_model();         // 6 cells: a 3-vertex circle over itself
MorseModel circle_bundle_model();       // 24 cells: circle base (6) x circle fiber (4)
MorseModel torus_grid_model();          // 24 cells: 2x3 torus grid over itself
std::vector<std::string> bundled_model_names();
MorseModel bundled_model(const std::string& name);

}  // namespace nov
