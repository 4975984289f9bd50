// Face codes of Cube^n: strings over {'0','1','-'}.
#pragma once

#include <string>
#include <vector>

namespace nov {

using FaceCode = std::string;

int face_dim(const FaceCode& f);
bool is_vertex(const FaceCode& f);
bool valid_code(const FaceCode& f);

// all 3^n faces, in lexicographic order over "01-"
std::vector<FaceCode> all_faces(int n);
// all 2^n vertices, coordinate 1 varying fastest
std::vector<FaceCode> all_vertices(int n);
int vertex_index(const FaceCode& v);

FaceCode nu_in(const FaceCode& f);
FaceCode nu_ter(const FaceCode& f);

// number of subsequences of v equal to w
long subtuple_count(const std::string& w, const std::string& v);

// (w, i, a): a inserted as the i-th entry, 1-based
FaceCode insert_at(const FaceCode& w, int i, char a);
FaceCode remove_at(const FaceCode& w, int i);

FaceCode smallest_containing(const FaceCode& a, const FaceCode& b);
bool adjacent(const FaceCode& f1, const FaceCode& f2);
bool contains(const FaceCode& big, const FaceCode& small);

// sub-tuple of nu_ter(F') - nu_in(F') at the dash positions of F
std::string v_tuple(const FaceCode& f1, const FaceCode& f);

struct BoundaryPair {
  FaceCode first;   // F'
  FaceCode second;  // F''
  std::string v;    // v(F', F)
};

// pairs F' > F'' forming a boundary of F, indexed by subsets S' of the
// dash set of F (F' sets S' to 0, F'' sets the rest to 1)
std::vector<BoundaryPair> boundary_pairs(const FaceCode& f);

// *_{F',F} = #(1,v) + #(01,v)
long star_exponent(const std::string& v);
int cube_sign(const FaceCode& f1, const FaceCode& f);

// n(F) = #(0-, mu(F)) + #(0, mu(F))
long positive_sign_exponent(const FaceCode& f);

// embeds a face code g of Cube^{dim f} into the face f
FaceCode embed_in_face(const FaceCode& f, const FaceCode& g);

}  // namespace nov
