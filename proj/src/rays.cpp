#include "nov/rays.hpp"

#include <iomanip>
#include <sstream>

namespace nov {

namespace {

NovikovError ray_error(const std::string& code, const std::string& what) {
  return NovikovError(code, what);
}

FaceCode last_face(int n, char a) { return std::string(n - 1, '-') + a; }

std::vector<Generator> tagged(const std::vector<Generator>& g, int i) {
  std::vector<Generator> out = g;
  for (auto& x : out) x.label += "#" + std::to_string(i);
  return out;
}

int popcount(const FaceCode& v) {
  int k = 0;
  for (char ch : v) k += ch == '1';
  return k;
}

QDense dense_t0(const SMat& m) {
  QDense q(m.rows(), m.cols());
  for (const auto& [k, v] : m.entries()) q.at(k.first, k.second) = v.reduce_t0();
  return q;
}

}  // namespace

// ---------------------------------------------------------------- tails and rays

TailSpec TailSpec::finite() { return TailSpec{}; }

TailSpec TailSpec::stationary_gap(const CubeDiagram& step) {
  if (step.n < 1) throw ray_error("InvalidTail", "stationary step must have n >= 1");
  Cube<Scalar> lo = restrict_to_face(step, last_face(step.n, '0'));
  Cube<Scalar> hi = restrict_to_face(step, last_face(step.n, '1'));
  if (lo != hi) throw ray_error("InvalidTail", "stationary step must map a cube to itself");
  std::optional<Exponent> gap;
  for (const auto& [face, m] : step.maps) {
    if (face.back() != '-') continue;
    for (const auto& [k, v] : m.entries()) {
      Valuation w = v.val();
      if (w && (!gap || *w < *gap)) gap = *w;
    }
  }
  if (gap && *gap <= 0) {
    throw ray_error("InvalidTail", "stationary gap must be positive, got " + exponent_str(*gap));
  }
  TailSpec t;
  t.kind = Kind::StationaryGap;
  t.step = step;
  // a zero step vanishes at every stage; any positive gap is valid
  t.gap = gap ? *gap : Exponent(1);
  t.name = "stationary-gap";
  return t;
}

TailSpec TailSpec::model(std::string name, std::function<CubeDiagram(int)> stage,
                         std::function<Barcode(const Exponent&)> closed_form) {
  TailSpec t;
  t.kind = Kind::ModelTail;
  t.stage = std::move(stage);
  t.closed_form = std::move(closed_form);
  t.name = std::move(name);
  return t;
}

std::string tail_kind_str(TailSpec::Kind k) {
  switch (k) {
    case TailSpec::Kind::Finite:
      return "finite";
    case TailSpec::Kind::StationaryGap:
      return "stationary-gap";
    case TailSpec::Kind::ModelTail:
      return "model";
  }
  return "?";
}

CubeDiagram Ray::cube(int i) const {
  if (i < 1) throw ray_error("InvalidRay", "cube index must be >= 1");
  if (i <= static_cast<int>(prefix.size())) return prefix[i - 1];
  switch (tail.kind) {
    case TailSpec::Kind::Finite:
      throw ray_error("DepthExceeded", "finite ray has " + std::to_string(prefix.size()) +
                                           " cubes, asked for D_" + std::to_string(i));
    case TailSpec::Kind::StationaryGap:
      return *tail.step;
    case TailSpec::Kind::ModelTail:
      return tail.stage(i);
  }
  throw ray_error("UnsupportedTail", "unknown tail");
}

CubeDiagram Ray::slice(int i) const {
  const int p = static_cast<int>(prefix.size());
  if (tail.kind == TailSpec::Kind::Finite && i == p + 1 && p > 0) {
    return restrict_to_face(prefix.back(), last_face(n, '1'));
  }
  return restrict_to_face(cube(i), last_face(n, '0'));
}

std::optional<int> Ray::max_depth() const {
  if (tail.kind == TailSpec::Kind::Finite) return static_cast<int>(prefix.size());
  return std::nullopt;
}

void validate_ray(const Ray& r) {
  if (r.n < 1) throw ray_error("InvalidRay", "rays need n >= 1");
  for (std::size_t i = 0; i < r.prefix.size(); ++i) {
    if (r.prefix[i].n != r.n) {
      throw ray_error("InvalidRay", "cube D_" + std::to_string(i + 1) + " has wrong dimension");
    }
    if (i + 1 < r.prefix.size() && !glue_check(r.prefix[i], r.prefix[i + 1], r.n)) {
      throw ray_error("InvalidRay", "D_" + std::to_string(i + 1) + " and D_" +
                                        std::to_string(i + 2) + " do not glue");
    }
  }
  if (r.tail.kind == TailSpec::Kind::Finite && r.prefix.empty()) {
    throw ray_error("InvalidRay", "a finite ray needs at least one cube");
  }
  if (r.tail.kind != TailSpec::Kind::Finite && !r.prefix.empty()) {
    const int p = static_cast<int>(r.prefix.size());
    if (!glue_check(r.prefix.back(), r.cube(p + 1), r.n)) {
      throw ray_error("InvalidRay", "tail does not continue the prefix");
    }
  }
}

// ---------------------------------------------------------------- telescope

CubeDiagram telescope_source(const Ray& r, int depth) {
  if (depth < 1) throw ray_error("InvalidRay", "telescope depth must be >= 1");
  if (auto m = r.max_depth(); m && depth > *m) {
    throw ray_error("DepthExceeded", "depth " + std::to_string(depth) + " exceeds " +
                                         std::to_string(*m));
  }
  const int n = r.n;
  std::vector<CubeDiagram> d(depth), c(depth + 1);
  for (int i = 1; i <= depth; ++i) d[i - 1] = r.cube(i);
  for (int i = 1; i <= depth; ++i) c[i - 1] = restrict_to_face(d[i - 1], last_face(n, '0'));
  c[depth] = restrict_to_face(d[depth - 1], last_face(n, '1'));

  CubeDiagram e;
  e.n = n;
  // off[w][i]: offset of C_{i+1}^w inside the direct sums
  std::map<FaceCode, std::vector<int>> off;
  for (const auto& w : all_vertices(n - 1)) {
    std::vector<Generator> lo, hi;
    std::vector<int> o;
    for (int i = 0; i <= depth; ++i) {
      o.push_back(static_cast<int>(hi.size()));
      auto g = tagged(c[i].vertex.at(w), i + 1);
      if (i < depth) lo.insert(lo.end(), g.begin(), g.end());
      hi.insert(hi.end(), g.begin(), g.end());
    }
    off[w] = o;
    e.vertex[w + "0"] = lo;
    e.vertex[w + "1"] = hi;
  }
  for (const auto& f : all_faces(n - 1)) {
    const FaceCode in = nu_in(f), ter = nu_ter(f);
    SMat m0(e.size_at(ter + "0"), e.size_at(in + "0"));
    SMat m1(e.size_at(ter + "1"), e.size_at(in + "1"));
    SMat mm(e.size_at(ter + "1"), e.size_at(in + "0"));
    for (int i = 0; i <= depth; ++i) {
      const SMat& fi = c[i].f(f);
      if (i < depth) m0.put_block(off[ter][i], off[in][i], fi);
      m1.put_block(off[ter][i], off[in][i], fi);
    }
    for (int i = 0; i < depth; ++i) {
      mm.put_block(off[ter][i + 1], off[in][i], d[i].f(f + "-"));
      if (is_vertex(f)) {
        mm.put_block(off[f][i], off[f][i], SMat::identity(c[i].size_at(f)));
      }
    }
    e.maps[f + "0"] = std::move(m0);
    e.maps[f + "1"] = std::move(m1);
    e.maps[f + "-"] = std::move(mm);
  }
  return e;
}

CubeDiagram telescope(const Ray& r, int depth) {
  return cone(telescope_source(r, depth), r.n);
}

// ---------------------------------------------------------------- colimits

SMat telescope_comparison(const Ray& r, int depth) {
  if (r.n != 1) throw ray_error("InvalidRay", "comparison maps are defined for 1-rays");
  std::vector<ChainComplex> c(depth + 1);
  std::vector<SMat> f(depth);
  for (int i = 1; i <= depth + 1; ++i) c[i - 1] = r.slice(i).vertex_complex("");
  for (int i = 1; i <= depth; ++i) f[i - 1] = r.cube(i).f("-");
  int shifted = 0, total = 0;
  for (int i = 0; i < depth; ++i) shifted += c[i].size();
  total = shifted;
  for (int i = 0; i <= depth; ++i) total += c[i].size();
  SMat phi(c[depth].size(), total);
  // Phi_i = (-1)^{depth-i} f_depth ... f_i (0-based i), Phi_depth = id
  SMat acc = SMat::identity(c[depth].size());
  std::vector<SMat> big(depth + 1);
  big[depth] = acc;
  for (int i = depth - 1; i >= 0; --i) {
    acc = -(acc * f[i]);
    big[i] = acc;
  }
  int col = shifted;
  for (int i = 0; i <= depth; ++i) {
    phi.put_block(0, col, big[i]);
    col += c[i].size();
  }
  return phi;
}

ColimitReport colimit_t0(const Ray& r, int depth) {
  ColimitReport rep;
  const ChainComplex tel = telescope(r, depth).vertex_complex("");
  const ChainComplex last = r.slice(depth + 1).vertex_complex("");
  const SMat phi = telescope_comparison(r, depth);
  rep.colimit = reduce_t0(last);
  rep.tel_betti = homology_t0(reduce_t0(tel));
  rep.colimit_betti = homology_t0(rep.colimit);
  rep.comparison_chain_map = (phi * tel.d) == (last.d * phi);
  if (rep.comparison_chain_map) {
    rep.quasi_isomorphism = is_acyclic(cone_of_map(tel, last, phi)).acyclic;
  }
  return rep;
}

Ray compress(const Ray& r, const std::vector<int>& indices) {
  if (indices.size() < 2) throw ray_error("InvalidRay", "compression needs two indices");
  for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k + 1] <= indices[k]) {
      throw ray_error("InvalidRay", "compression indices must increase strictly from 1");
    }
  }
  Ray out;
  out.n = r.n;
  for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
    CubeDiagram acc = r.cube(indices[k]);
    for (int j = indices[k] + 1; j < indices[k + 1]; ++j) acc = compose(acc, r.cube(j));
    out.prefix.push_back(std::move(acc));
  }
  return out;
}

CompressionReport compression(const Ray& r, const std::vector<int>& indices) {
  CompressionReport rep;
  rep.compressed = compress(r, indices);
  const int last = indices.back();
  ColimitReport a = colimit_t0(r, last - 1);
  ColimitReport b = colimit_t0(rep.compressed, static_cast<int>(indices.size()) - 1);
  rep.original_betti = a.tel_betti;
  rep.compressed_betti = b.tel_betti;
  rep.original_quasi_iso = a.quasi_isomorphism;
  rep.compressed_quasi_iso = b.quasi_isomorphism;
  rep.quasi_isomorphism = a.quasi_isomorphism && b.quasi_isomorphism &&
                          a.tel_betti == b.tel_betti && a.colimit.gens.size() ==
                                                            b.colimit.gens.size();
  return rep;
}

// ---------------------------------------------------------------- completion

CompletedHomology completed_homology(const Ray& r, const Exponent& r0,
                                     const std::optional<Exponent>& work) {
  if (r0 <= 0) throw ray_error("InvalidPrecision", "precision must be positive");
  if (work && *work < r0) throw ray_error("InvalidPrecision", "work must be >= precision");
  CompletedHomology out;
  switch (r.tail.kind) {
    case TailSpec::Kind::Finite: {
      const int depth = static_cast<int>(r.prefix.size());
      const ChainComplex tel = full_cone(telescope(r, depth));
      out.bars = barcode(tel, r0);
      out.method = "finite telescope at depth " + std::to_string(depth);
      out.stage = depth;
      return out;
    }
    case TailSpec::Kind::StationaryGap: {
      mpz_class k = (r0.get_num() * r.tail.gap.get_den() + r.tail.gap.get_num() * r0.get_den() -
                     1) /
                    (r.tail.gap.get_num() * r0.get_den());
      const int stages = static_cast<int>(k.get_si());
      CubeDiagram power = *r.tail.step;
      for (int j = 1; j < stages; ++j) power = compose(power, *r.tail.step);
      for (const auto& [face, m] : power.maps) {
        if (face.back() == '-' && !m.is_zero_mod(r0)) {
          throw ray_error("UnsupportedTail", "tail power F^" + std::to_string(stages) +
                                                 " does not vanish modulo T^" +
                                                 exponent_str(r0));
        }
      }
      out.bars.precision = r0;
      out.method = "stationary gap " + exponent_str(r.tail.gap) + ": F^" +
                   std::to_string(stages) + " = 0 mod T^" + exponent_str(r0);
      out.stage = static_cast<int>(r.prefix.size()) + stages;
      return out;
    }
    case TailSpec::Kind::ModelTail:
      if (!r.tail.closed_form) throw ray_error("UnsupportedTail", "model tail without closed form");
      out.bars = r.tail.closed_form(r0);
      out.method = "closed form (" + r.tail.name + ")";
      return out;
  }
  throw ray_error("UnsupportedTail", "unknown tail");
}

// ---------------------------------------------------------------- acyclicity

SliceCertificate acyclic_slices_implies_acyclic(const Ray& r, int depth) {
  SliceCertificate cert;
  for (int i = 1; i <= depth + 1; ++i) {
    if (!is_acyclic(full_cone(r.slice(i))).acyclic) {
      throw ray_error("SliceNotAcyclic", "slice C_" + std::to_string(i) + " is not acyclic");
    }
    ++cert.slices_checked;
  }
  cert.telescope_acyclic = is_acyclic(full_cone(telescope(r, depth))).acyclic;
  return cert;
}

// ---------------------------------------------------------------- Mayer-Vietoris

namespace {

// homology of a complex at T=0, split by parity
struct Homology {
  std::vector<int> idx[2];  // generators of each parity
  QDense bnd[2];            // independent boundaries, in idx coordinates
  QDense reps[2];           // homology representatives, in idx coordinates
  int dim(int p) const { return reps[p].cols(); }
};

QDense select(const QDense& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  QDense out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.at(i, j) = a.at(rows[i], cols[j]);
  return out;
}

QDense independent_columns(const QDense& a, const QDense& start, QDense* added) {
  QDense acc = start;
  QDense extra(a.rows(), 0);
  int r = acc.cols() ? acc.rank() : 0;
  for (int j = 0; j < a.cols(); ++j) {
    QDense col = a.columns({j});
    QDense next = acc.cols() ? QDense::hcat(acc, col) : col;
    int rn = next.rank();
    if (rn > r) {
      acc = next;
      r = rn;
      extra = extra.cols() ? QDense::hcat(extra, col) : col;
    }
  }
  if (added) *added = extra;
  return acc;
}

Homology homology_of(const QDense& d, const std::vector<Generator>& gens) {
  Homology h;
  for (int k = 0; k < static_cast<int>(gens.size()); ++k) h.idx[gens[k].parity].push_back(k);
  for (int p = 0; p < 2; ++p) {
    const int q = 1 - p;
    QDense dp = select(d, h.idx[q], h.idx[p]);  // parity p -> q
    QDense dq = select(d, h.idx[p], h.idx[q]);  // parity q -> p, boundaries in p
    const int np = static_cast<int>(h.idx[p].size());
    QDense z = dp.rows() ? dp.nullspace() : QDense::identity(np);
    QDense empty(np, 0);
    QDense b = independent_columns(dq, empty, nullptr);
    h.bnd[p] = b;
    QDense reps(np, 0);
    independent_columns(z, b, &reps);
    h.reps[p] = reps;
  }
  return h;
}

// homology coordinates of a parity-p cycle y (in idx coordinates)
std::vector<mpq_class> class_coords(const Homology& h, int p, const QDense& y) {
  const int nb = h.bnd[p].cols();
  const int nh = h.reps[p].cols();
  std::vector<mpq_class> out(nh);
  if (nh == 0) return out;
  QDense basis = nb ? QDense::hcat(h.bnd[p], h.reps[p]) : h.reps[p];
  QDense x;
  if (!basis.solve(y, x)) throw ray_error("InternalError", "vector is not a cycle");
  for (int j = 0; j < nh; ++j) out[j] = x.at(nb + j, 0);
  return out;
}

QDense restrict_vec(const QDense& full, const std::vector<int>& idx) {
  QDense out(static_cast<int>(idx.size()), 1);
  for (std::size_t i = 0; i < idx.size(); ++i) out.at(i, 0) = full.at(idx[i], 0);
  return out;
}

QDense expand_vec(const QDense& part, const std::vector<int>& idx, int n) {
  QDense out(n, 1);
  for (std::size_t i = 0; i < idx.size(); ++i) out.at(idx[i], 0) = part.at(i, 0);
  return out;
}

// matrix of an even map on homology in parity p
QDense induced(const Homology& src, const Homology& dst, const QDense& f, int p) {
  QDense out(dst.dim(p), src.dim(p));
  const int n = static_cast<int>(src.idx[0].size() + src.idx[1].size());
  for (int j = 0; j < src.dim(p); ++j) {
    QDense rep = expand_vec(src.reps[p].columns({j}), src.idx[p], n);
    QDense img = f * rep;
    auto c = class_coords(dst, p, restrict_vec(img, dst.idx[p]));
    for (int i = 0; i < dst.dim(p); ++i) out.at(i, j) = c[i];
  }
  return out;
}

QDense vstack(const QDense& a, const QDense& b) {
  return QDense::hcat(a.transpose(), b.transpose()).transpose();
}

int rank_of(const QDense& a) { return (a.rows() == 0 || a.cols() == 0) ? 0 : a.rank(); }
bool zero_of(const QDense& a) { return a.rows() == 0 || a.cols() == 0 || a.is_zero(); }

}  // namespace

MayerVietoris mayer_vietoris(const CubeDiagram& square) {
  if (square.n != 2) throw ray_error("InvalidShape", "Mayer-Vietoris needs a 2-cube");
  const ChainComplex tot = full_cone(square);
  if (!is_acyclic(tot).acyclic) {
    throw ray_error("NotAcyclic", "the iterated cone of the square is not acyclic at T=0");
  }
  const int s00 = square.size_at("00"), s10 = square.size_at("10"), s01 = square.size_at("01"),
            s11 = square.size_at("11");
  const QDense d00 = dense_t0(square.f("00")), d10 = dense_t0(square.f("10")),
               d01 = dense_t0(square.f("01")), d11 = dense_t0(square.f("11"));
  Homology h00 = homology_of(d00, square.vertex.at("00"));
  Homology h10 = homology_of(d10, square.vertex.at("10"));
  Homology h01 = homology_of(d01, square.vertex.at("01"));
  Homology h11 = homology_of(d11, square.vertex.at("11"));

  const QDense c = dense_t0(square.f("-0")), f0 = dense_t0(square.f("0-")),
               f1 = dense_t0(square.f("1-")), c2 = dense_t0(square.f("-1"));

  MayerVietoris mv;
  mv.h00 = {h00.dim(0), h00.dim(1)};
  mv.hmid = {h10.dim(0) + h01.dim(0), h10.dim(1) + h01.dim(1)};
  mv.h11 = {h11.dim(0), h11.dim(1)};

  QDense alpha[2], beta[2], conn[2];  // conn[p]: H_p(C11) -> H_{p+1}(C00)
  for (int p = 0; p < 2; ++p) {
    alpha[p] = vstack(induced(h00, h10, c, p), induced(h00, h01, f0, p));
    QDense b1 = induced(h10, h11, f1, p), b2 = induced(h01, h11, c2, p);
    QDense neg(b1.rows(), b1.cols());
    for (int i = 0; i < b1.rows(); ++i)
      for (int j = 0; j < b1.cols(); ++j) neg.at(i, j) = -b1.at(i, j);
    beta[p] = b1.cols() + b2.cols() ? QDense::hcat(neg, b2) : QDense(b1.rows(), 0);
  }

  // connecting map: solve X a + D_K b = z with a a cycle of C00
  const QDense dt = to_dense(reduce_t0(tot));
  const int nk = s10 + s01 + s11;
  std::vector<int> arows, krows;
  for (int k = 0; k < s00; ++k) arows.push_back(k);
  for (int k = 0; k < nk; ++k) krows.push_back(s00 + k);
  const QDense daa = select(dt, arows, arows);
  const QDense x = select(dt, krows, arows);
  const QDense dkk = select(dt, krows, krows);
  const QDense za = daa.rows() ? daa.nullspace() : QDense(0, 0);
  const QDense xz = za.cols() ? x * za : QDense(nk, 0);
  const QDense sys = xz.cols() ? (dkk.cols() ? QDense::hcat(xz, dkk) : xz) : dkk;
  for (int p = 0; p < 2; ++p) {
    const int q = 1 - p;
    conn[p] = QDense(h00.dim(q), h11.dim(p));
    for (int j = 0; j < h11.dim(p); ++j) {
      QDense z = expand_vec(h11.reps[p].columns({j}), h11.idx[p], s11);
      QDense rhs(nk, 1);
      for (int k = 0; k < s11; ++k) rhs.at(s10 + s01 + k, 0) = z.at(k, 0);
      QDense sol;
      if (!sys.solve(rhs, sol)) throw ray_error("InternalError", "connecting map unsolvable");
      QDense u(za.cols(), 1);
      for (int k = 0; k < za.cols(); ++k) u.at(k, 0) = sol.at(k, 0);
      QDense a = za.cols() ? za * u : QDense(s00, 1);
      auto cc = class_coords(h00, q, restrict_vec(a, h00.idx[q]));
      for (int i = 0; i < h00.dim(q); ++i) conn[p].at(i, j) = cc[i];
    }
  }

  auto product = [](const QDense& a, const QDense& b) {
    if (a.cols() == 0 || b.rows() == 0) return QDense(a.rows(), b.cols());
    return a * b;
  };
  mv.exact = true;
  for (int p = 0; p < 2; ++p) {
    ExactSpot mid{"H(C10)+H(C01)", p, mv.hmid[p], rank_of(alpha[p]), rank_of(beta[p]),
                  zero_of(product(beta[p], alpha[p])), false};
    ExactSpot top{"H(C11)", p, mv.h11[p], rank_of(beta[p]), rank_of(conn[p]),
                  zero_of(product(conn[p], beta[p])), false};
    ExactSpot bot{"H(C00)", p, mv.h00[p], rank_of(conn[1 - p]), rank_of(alpha[p]),
                  zero_of(product(alpha[p], conn[1 - p])), false};
    for (ExactSpot* s : {&mid, &top, &bot}) {
      s->exact = s->composite_zero && s->rank_in + s->rank_out == s->dim;
      mv.exact = mv.exact && s->exact;
      mv.spots.push_back(*s);
    }
  }
  return mv;
}

std::string MayerVietoris::table() const {
  std::ostringstream os;
  os << std::left << std::setw(16) << "spot" << std::setw(8) << "parity" << std::setw(6)
     << "dim" << std::setw(9) << "rank_in" << std::setw(10) << "rank_out" << "exact\n";
  for (const auto& s : spots) {
    os << std::left << std::setw(16) << s.name << std::setw(8) << (s.parity ? "odd" : "even")
       << std::setw(6) << s.dim << std::setw(9) << s.rank_in << std::setw(10) << s.rank_out
       << (s.exact ? "yes" : "no") << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- descent

DescentComplex descent_complex(const Ray& r, int depth) {
  DescentComplex out;
  const CubeDiagram tel = telescope(r, depth);
  out.total = full_cone(tel);
  for (const auto& v : all_vertices(tel.n)) {
    for (int k = 0; k < tel.size_at(v); ++k) out.block_vertex.push_back(v);
  }
  out.graded.assign(tel.n + 1, SMat(out.total.size(), out.total.size()));
  for (const auto& [k, v] : out.total.d.entries()) {
    const int deg = popcount(out.block_vertex[k.first]) - popcount(out.block_vertex[k.second]);
    if (deg < 0 || deg > tel.n) throw ray_error("InternalError", "descent differential not filtered");
    out.graded[deg].set(k.first, k.second, v);
  }
  out.verdict = is_acyclic(out.total);
  return out;
}

}  // namespace nov
