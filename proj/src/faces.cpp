#include "nov/faces.hpp"

#include <stdexcept>

namespace nov {

int face_dim(const FaceCode& f) {
  int k = 0;
  for (char c : f) k += c == '-';
  return k;
}

bool is_vertex(const FaceCode& f) { return face_dim(f) == 0; }

bool valid_code(const FaceCode& f) {
  for (char c : f)
    if (c != '0' && c != '1' && c != '-') return false;
  return true;
}

std::vector<FaceCode> all_faces(int n) {
  std::vector<FaceCode> out{""};
  for (int k = 0; k < n; ++k) {
    std::vector<FaceCode> next;
    next.reserve(out.size() * 3);
    for (const auto& p : out)
      for (char c : {'0', '1', '-'}) next.push_back(p + c);
    out = std::move(next);
  }
  return out;
}

std::vector<FaceCode> all_vertices(int n) {
  std::vector<FaceCode> out;
  for (int idx = 0; idx < (1 << n); ++idx) {
    FaceCode v(n, '0');
    for (int k = 0; k < n; ++k)
      if (idx >> k & 1) v[k] = '1';
    out.push_back(v);
  }
  return out;
}

int vertex_index(const FaceCode& v) {
  int idx = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] == '1') idx |= 1 << k;
  return idx;
}

FaceCode nu_in(const FaceCode& f) {
  FaceCode v = f;
  for (char& c : v)
    if (c == '-') c = '0';
  return v;
}

FaceCode nu_ter(const FaceCode& f) {
  FaceCode v = f;
  for (char& c : v)
    if (c == '-') c = '1';
  return v;
}

long subtuple_count(const std::string& w, const std::string& v) {
  // dp[j] = number of ways to match the first j symbols of w
  std::vector<long> dp(w.size() + 1, 0);
  dp[0] = 1;
  for (char c : v) {
    for (std::size_t j = w.size(); j > 0; --j)
      if (w[j - 1] == c) dp[j] += dp[j - 1];
  }
  return dp[w.size()];
}

FaceCode insert_at(const FaceCode& w, int i, char a) {
  if (i < 1 || i > static_cast<int>(w.size()) + 1) {
    throw std::out_of_range("insert_at: position out of range");
  }
  FaceCode r = w;
  r.insert(r.begin() + (i - 1), a);
  return r;
}

FaceCode remove_at(const FaceCode& w, int i) {
  FaceCode r = w;
  r.erase(r.begin() + (i - 1));
  return r;
}

FaceCode smallest_containing(const FaceCode& a, const FaceCode& b) {
  FaceCode r(a.size(), '-');
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != '-' && a[k] == b[k]) r[k] = a[k];
  return r;
}

bool adjacent(const FaceCode& f1, const FaceCode& f2) { return nu_ter(f1) == nu_in(f2); }

bool contains(const FaceCode& big, const FaceCode& small) {
  for (std::size_t k = 0; k < big.size(); ++k)
    if (big[k] != '-' && big[k] != small[k]) return false;
  return true;
}

std::string v_tuple(const FaceCode& f1, const FaceCode& f) {
  FaceCode a = nu_in(f1), b = nu_ter(f1);
  std::string v;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == '-') v += (b[k] != a[k]) ? '1' : '0';
  return v;
}

std::vector<BoundaryPair> boundary_pairs(const FaceCode& f) {
  std::vector<int> dash;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == '-') dash.push_back(static_cast<int>(k));
  const int k = static_cast<int>(dash.size());
  std::vector<BoundaryPair> out;
  out.reserve(std::size_t(1) << k);
  for (int mask = 0; mask < (1 << k); ++mask) {
    FaceCode a = f, b = f;
    for (int t = 0; t < k; ++t) {
      if (mask >> t & 1) {
        a[dash[t]] = '0';
      } else {
        b[dash[t]] = '1';
      }
    }
    out.push_back({a, b, v_tuple(a, f)});
  }
  return out;
}

long star_exponent(const std::string& v) {
  return subtuple_count("1", v) + subtuple_count("01", v);
}

int cube_sign(const FaceCode& f1, const FaceCode& f) {
  return star_exponent(v_tuple(f1, f)) % 2 ? -1 : 1;
}

long positive_sign_exponent(const FaceCode& f) {
  return subtuple_count("0-", f) + subtuple_count("0", f);
}

FaceCode embed_in_face(const FaceCode& f, const FaceCode& g) {
  FaceCode r = f;
  std::size_t t = 0;
  for (char& c : r) {
    if (c == '-') c = g.at(t++);
  }
  return r;
}

}  // namespace nov
