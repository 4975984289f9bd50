// Rays of n-cubes, telescopes, completed homology at a declared precision,
// Mayer-Vietoris extraction and the multi-subset descent complex.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nov/chain.hpp"
#include "nov/cubes.hpp"

namespace nov {

struct TailSpec {
  enum class Kind { Finite, StationaryGap, ModelTail };
  Kind kind = Kind::Finite;
  // StationaryGap: an n-cube whose two faces in direction n coincide; the
  // ray repeats it forever. Its gap is the least valuation on the '-' faces.
  std::optional<CubeDiagram> step;
  Exponent gap = 0;
  // ModelTail: cube D_i for i beyond the prefix, and the closed form of
  // the completed homology at precision r0
  std::function<CubeDiagram(int)> stage;
  std::function<Barcode(const Exponent&)> closed_form;
  std::string name;

  static TailSpec finite();
  // gap computed from the step; throws InvalidTail unless gap > 0
  static TailSpec stationary_gap(const CubeDiagram& step);
  static TailSpec model(std::string name, std::function<CubeDiagram(int)> stage,
                        std::function<Barcode(const Exponent&)> closed_form);
};

std::string tail_kind_str(TailSpec::Kind k);

struct Ray {
  int n = 0;
  std::vector<CubeDiagram> prefix;  // D_1 .. D_P
  TailSpec tail;

  // D_i, 1-based; synthesized from the tail beyond the prefix
  CubeDiagram cube(int i) const;
  // slice C_i = face x_n = 0 of D_i (C_{i+1} = face x_n = 1 of D_i)
  CubeDiagram slice(int i) const;
  // the largest usable depth, or nullopt when unbounded
  std::optional<int> max_depth() const;
};

// throws InvalidRay when consecutive cubes do not glue or the tail does not
// continue the prefix
void validate_ray(const Ray& r);

// truncation of tel(r) using D_1..D_depth: an (n-1)-cube whose vertex w is
// (+)_{i<=depth} C_i^w[1] (+) (+)_{i<=depth+1} C_i^w. Generator "x" of C_i
// is labelled "x#i".
CubeDiagram telescope(const Ray& r, int depth);

// the n-cube E = (+)D_i + (+)Id whose cone in direction n is the telescope
CubeDiagram telescope_source(const Ray& r, int depth);

// ---------------------------------------------------------------- 1-rays at T=0

struct ColimitReport {
  QComplex colimit;         // C_{depth+1} at T=0
  Betti tel_betti;          // homology of the truncated telescope
  Betti colimit_betti;      // homology of the colimit
  bool comparison_chain_map = false;
  bool quasi_isomorphism = false;  // cone of the comparison map acyclic
};

// canonical map tel_depth -> C_{depth+1}: x#i -> (-1)^{depth+1-i} f_depth...f_i x,
// shifted copies -> 0
SMat telescope_comparison(const Ray& r, int depth);
ColimitReport colimit_t0(const Ray& r, int depth);

struct CompressionReport {
  Ray compressed;
  Betti original_betti;
  Betti compressed_betti;
  bool original_quasi_iso = false;    // tel(C) -> colimit
  bool compressed_quasi_iso = false;  // tel(C^i) -> colimit
  bool quasi_isomorphism = false;
};

// indices are 1-based slice numbers i(1) < i(2) < ...; the compressed ray has
// cubes C_{i(k)} -> C_{i(k+1)} composed from D_{i(k)}..D_{i(k+1)-1}
Ray compress(const Ray& r, const std::vector<int>& indices);
CompressionReport compression(const Ray& r, const std::vector<int>& indices);

// ---------------------------------------------------------------- completion

struct CompletedHomology {
  Barcode bars;
  std::string method;
  std::optional<int> stage;  // StationaryGap: stage beyond which the tail vanishes
};

CompletedHomology completed_homology(const Ray& r, const Exponent& r0,
                                     const std::optional<Exponent>& work = std::nullopt);

// ---------------------------------------------------------------- acyclicity

struct SliceCertificate {
  int slices_checked = 0;
  bool telescope_acyclic = false;  // direct cross-check
};

// throws SliceNotAcyclic naming the first failing slice
SliceCertificate acyclic_slices_implies_acyclic(const Ray& r, int depth);

// ---------------------------------------------------------------- Mayer-Vietoris

struct ExactSpot {
  std::string name;
  int parity = 0;
  int dim = 0;       // dimension of the middle homology
  int rank_in = 0;   // rank of the incoming map
  int rank_out = 0;  // rank of the outgoing map
  bool composite_zero = false;
  bool exact = false;
};

struct MayerVietoris {
  Betti h00, hmid, h11;  // H(C00), H(C10)+H(C01), H(C11)
  std::vector<ExactSpot> spots;
  bool exact = false;
  std::string table() const;
};

// throws NotAcyclic when the iterated cone of the square is not acyclic at T=0
MayerVietoris mayer_vietoris(const CubeDiagram& square);

// ---------------------------------------------------------------- descent

struct DescentComplex {
  ChainComplex total;
  std::vector<FaceCode> block_vertex;  // subset-cube vertex of each generator
  std::vector<SMat> graded;            // d_k: part raising |I| by k
  AcyclicityResult verdict;
};

// full cone of the telescope of an (n+1)-ray over the subset cube
DescentComplex descent_complex(const Ray& r, int depth);

}  // namespace nov
