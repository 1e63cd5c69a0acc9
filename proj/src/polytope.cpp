#include "dp5/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dp5 {

namespace {

using Matrix = std::vector<RationalVector>;

// Solves M x = r for square M; empty when singular.
RationalVector solve(Matrix M, RationalVector r) {
  const std::size_t n = M.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) return {};
    std::swap(M[piv], M[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      mpq_class f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
      r[i] -= f * r[c];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / M[i][i];
  return x;
}

std::size_t rank(Matrix M) {
  if (M.empty()) return 0;
  const std::size_t cols = M[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
    std::size_t piv = r;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[r]);
    for (std::size_t i = r + 1; i < M.size(); ++i) {
      if (M[i][c] == 0) continue;
      mpq_class f = M[i][c] / M[r][c];
      for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  return r;
}

mpq_class dot(const RationalVector& a, const RationalVector& x) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

mpq_class determinant(Matrix M) {
  const std::size_t n = M.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (M[i][c] == 0) continue;
      mpq_class f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

bool feasible(const Polytope& P, const RationalVector& x) {
  return std::all_of(P.constraints.begin(), P.constraints.end(),
                     [&](const HalfSpace& h) { return dot(h.a, x) <= h.b; });
}

// Visits every k-subset of {0..n-1}.
template <class Visit>
void subsets(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Fix x_last = t and drop the coordinate.
Polytope slice(const Polytope& P, const mpq_class& t) {
  Polytope S;
  S.dim = P.dim - 1;
  for (const auto& h : P.constraints) {
    HalfSpace g;
    g.a.assign(h.a.begin(), h.a.end() - 1);
    g.b = h.b - h.a.back() * t;
    if (std::all_of(g.a.begin(), g.a.end(), [](const mpq_class& v) { return v == 0; })) {
      if (g.b < 0) return Polytope{S.dim, {HalfSpace{RationalVector(static_cast<std::size_t>(S.dim), 0), -1}}};
      continue;
    }
    S.constraints.push_back(std::move(g));
  }
  return S;
}

mpq_class interval_length(const Polytope& P) {
  bool has_lo = false, has_hi = false;
  mpq_class lo, hi;
  for (const auto& h : P.constraints) {
    const mpq_class& a = h.a[0];
    if (a == 0) {
      if (h.b < 0) return 0;
      continue;
    }
    mpq_class v = h.b / a;
    if (a > 0) {
      if (!has_hi || v < hi) hi = v;
      has_hi = true;
    } else {
      if (!has_lo || v > lo) lo = v;
      has_lo = true;
    }
  }
  if (!has_lo || !has_hi) throw std::domain_error("unbounded polytope");
  return hi > lo ? mpq_class(hi - lo) : mpq_class(0);
}

// Integral over [0, 1] of the Lagrange basis polynomials on n equally spaced
// nodes 0, 1/(n-1), ..., 1 (closed Newton-Cotes weights).
RationalVector newton_cotes(std::size_t n) {
  RationalVector w(n);
  if (n == 1) {
    w[0] = 1;
    return w;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Expand prod_{j != i} (x - x_j) / (x_i - x_j) into monomial coefficients.
    RationalVector poly{1};
    mpq_class denom = 1;
    const mpq_class xi(static_cast<long>(i), static_cast<long>(n - 1));
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const mpq_class xj(static_cast<long>(j), static_cast<long>(n - 1));
      RationalVector next(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= poly[k] * xj;
      }
      poly = next;
      denom *= xi - xj;
    }
    mpq_class integral = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) integral += poly[k] / static_cast<long>(k + 1);
    w[i] = integral / denom;
  }
  return w;
}

mpq_class slicing_volume(const Polytope& P) {
  if (P.dim == 1) return interval_length(P);
  auto verts = vertices(P);
  if (verts.empty()) return 0;
  std::set<mpq_class> cuts;
  for (const auto& v : verts) cuts.insert(v.back());
  const std::vector<mpq_class> t(cuts.begin(), cuts.end());
  const auto n = static_cast<std::size_t>(P.dim);
  const auto w = newton_cotes(n);
  mpq_class total = 0;
  for (std::size_t s = 0; s + 1 < t.size(); ++s) {
    const mpq_class len = t[s + 1] - t[s];
    mpq_class piece = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const mpq_class at = t[s] + len * mpq_class(static_cast<long>(k), static_cast<long>(n - 1));
      piece += w[k] * slicing_volume(slice(P, at));
    }
    total += piece * len;
  }
  return total;
}

std::size_t affine_dimension(const std::vector<RationalVector>& pts) {
  if (pts.size() <= 1) return 0;
  Matrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(d);
  }
  return rank(diffs);
}

using Face = std::vector<std::size_t>;  // sorted vertex indices

// Appends the simplices (as vertex index lists) of a pulling triangulation of `face`.
void triangulate(const Polytope& P, const std::vector<RationalVector>& verts,
                 const std::vector<std::vector<bool>>& tight, const Face& face, std::size_t k,
                 std::vector<Face>& out) {
  if (k == 0) {
    out.push_back({face[0]});
    return;
  }
  const std::size_t apex = face[0];
  std::set<Face> facets;
  for (std::size_t c = 0; c < P.constraints.size(); ++c) {
    Face sub;
    for (std::size_t v : face) {
      if (tight[v][c]) sub.push_back(v);
    }
    if (sub.size() == face.size() || sub.size() < k) continue;
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    std::vector<RationalVector> pts;
    for (std::size_t v : sub) pts.push_back(verts[v]);
    if (affine_dimension(pts) == k - 1) facets.insert(sub);
  }
  for (const auto& f : facets) {
    std::vector<Face> sub;
    triangulate(P, verts, tight, f, k - 1, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<RationalVector> vertices(const Polytope& P) {
  const auto n = static_cast<std::size_t>(P.dim);
  std::set<RationalVector> found;
  subsets(P.constraints.size(), n, [&](const std::vector<std::size_t>& idx) {
    Matrix M;
    RationalVector r;
    for (std::size_t i : idx) {
      M.push_back(P.constraints[i].a);
      r.push_back(P.constraints[i].b);
    }
    auto x = solve(M, r);
    if (!x.empty() && feasible(P, x)) found.insert(x);
  });
  return {found.begin(), found.end()};
}

mpq_class volume_by_slicing(const Polytope& P) {
  if (P.dim < 1) throw std::invalid_argument("volume_by_slicing: dimension must be >= 1");
  return slicing_volume(P);
}

mpq_class volume_by_triangulation(const Polytope& P) {
  if (P.dim < 1) throw std::invalid_argument("volume_by_triangulation: dimension must be >= 1");
  const auto verts = vertices(P);
  const auto n = static_cast<std::size_t>(P.dim);
  if (affine_dimension(verts) < n) return 0;
  std::vector<std::vector<bool>> tight(verts.size(), std::vector<bool>(P.constraints.size()));
  for (std::size_t v = 0; v < verts.size(); ++v) {
    for (std::size_t c = 0; c < P.constraints.size(); ++c) {
      tight[v][c] = dot(P.constraints[c].a, verts[v]) == P.constraints[c].b;
    }
  }
  Face all(verts.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Face> simplices;
  triangulate(P, verts, tight, all, n, simplices);
  mpq_class total = 0;
  for (const auto& s : simplices) {
    Matrix M;
    for (std::size_t i = 1; i < s.size(); ++i) {
      RationalVector d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = verts[s[i]][j] - verts[s[0]][j];
      M.push_back(d);
    }
    mpq_class det = determinant(M);
    total += det < 0 ? mpq_class(-det) : det;
  }
  mpq_class fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<long>(i);
  return total / fact;
}

Polytope v1_polytope() {
  Polytope P;
  P.dim = 4;
  for (int l = 0; l < 4; ++l) {
    HalfSpace h{RationalVector(4, 2), 1};
    h.a[static_cast<std::size_t>(l)] = -1;
    P.constraints.push_back(h);
  }
  for (int i = 0; i < 4; ++i) {
    HalfSpace h{RationalVector(4, 0), 0};
    h.a[static_cast<std::size_t>(i)] = -1;
    P.constraints.push_back(h);
  }
  return P;
}

}  // namespace dp5
