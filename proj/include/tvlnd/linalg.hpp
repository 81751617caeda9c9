// Exact linear algebra over Q and lattice computations over Z (HNF-based
// kernels, saturated sublattice bases, reduction to normal form modulo a
// sublattice).
#pragma once

#include "tvlnd/rational.hpp"

namespace tvl {

using QMat = std::vector<QVec>;
using ZMat = std::vector<ZVec>;

inline QMat to_q(const ZMat& m) {
  QMat r;
  r.reserve(m.size());
  for (auto& row : m) r.push_back(to_q(row));
  return r;
}

// Row echelon form in place; returns pivot column per row.
inline std::vector<size_t> row_echelon(QMat& a) {
  std::vector<size_t> pivots;
  size_t rows = a.size();
  if (rows == 0) return pivots;
  size_t cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

inline size_t rank(QMat a) { return row_echelon(a).size(); }
inline size_t rank(const ZMat& a) { return rank(to_q(a)); }

// Basis of {x : a x = 0} as rational vectors.
inline QMat nullspace(QMat a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  auto pivots = row_echelon(a);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  QMat basis;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v = qvec_zero(cols);
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][c];
    basis.push_back(v);
  }
  return basis;
}

// Solves a x = b; nullopt when inconsistent. Free coordinates are set to 0.
inline std::optional<QVec> solve(QMat a, QVec b) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto pivots = row_echelon(a);
  QVec x = qvec_zero(cols);
  for (size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // pivot in the rhs column
    x[pivots[i]] = a[i][cols];
  }
  return x;
}

// ---- Hermite normal form (columns operate on the right) ----
//
// Returns H in column HNF together with unimodular U such that A * U = H.
inline void hnf_columns(const ZMat& a_in, ZMat& h, ZMat& u) {
  size_t rows = a_in.size();
  size_t cols = rows ? a_in[0].size() : 0;
  h = a_in;
  u.assign(cols, zvec_zero(cols));
  for (size_t i = 0; i < cols; ++i) u[i][i] = 1;
  // u is kept as cols x cols with u[j] = j-th column of U (as a vector).
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(h[r][i], h[r][j]);
    std::swap(u[i], u[j]);
  };
  auto col_neg = [&](size_t i) {
    for (size_t r = 0; r < rows; ++r) h[r][i] = -h[r][i];
    u[i] = vneg(u[i]);
  };
  auto col_addmul = [&](size_t dst, size_t src, const Int& f) {
    for (size_t r = 0; r < rows; ++r) h[r][dst] += f * h[r][src];
    u[dst] = vadd(u[dst], vscale(f, u[src]));
  };
  size_t pivot_col = 0;
  for (size_t r = 0; r < rows && pivot_col < cols; ++r) {
    // reduce row r across columns pivot_col..cols-1 to a single nonzero entry
    while (true) {
      size_t best = cols;
      for (size_t c = pivot_col; c < cols; ++c)
        if (h[r][c] != 0 && (best == cols || abs(h[r][c]) < abs(h[r][best]))) best = c;
      if (best == cols) break;  // row is zero from pivot_col on
      col_swap(pivot_col, best);
      if (h[r][pivot_col] < 0) col_neg(pivot_col);
      bool clean = true;
      for (size_t c = pivot_col + 1; c < cols; ++c) {
        if (h[r][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h[r][c].get_mpz_t(), h[r][pivot_col].get_mpz_t());
        col_addmul(c, pivot_col, -q);
        if (h[r][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[r][pivot_col] != 0) {
      // reduce earlier columns modulo the pivot
      for (size_t c = 0; c < pivot_col; ++c) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h[r][c].get_mpz_t(), h[r][pivot_col].get_mpz_t());
        col_addmul(c, pivot_col, -q);
      }
      ++pivot_col;
    }
  }
}

// Basis of the integer kernel {x in Z^n : a x = 0}; saturated by construction.
inline ZMat z_kernel(const ZMat& a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  ZMat h, u;
  hnf_columns(a, h, u);
  ZMat basis;
  for (size_t c = 0; c < cols; ++c) {
    bool zero = true;
    for (size_t r = 0; r < a.size(); ++r)
      if (h[r][c] != 0) {
        zero = false;
        break;
      }
    if (zero) basis.push_back(u[c]);
  }
  return basis;
}

// Row-style HNF basis of the lattice spanned by the given integer vectors
// (each row a generator). Canonical: echelon, positive pivots, entries above
// a pivot reduced into [0, pivot).
inline ZMat lattice_hnf(ZMat gens) {
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const ZVec& v) { return is_zero(v); }),
             gens.end());
  if (gens.empty()) return {};
  size_t cols = gens[0].size();
  ZMat b;  // rows in echelon order
  for (auto v : gens) {
    for (auto& row : b) {
      size_t p = 0;
      while (p < cols && row[p] == 0) ++p;
      if (p == cols) continue;
      if (v[p] == 0) continue;
      // euclid on entry p
      while (v[p] != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), row[p].get_mpz_t());
        v = vsub(v, vscale(q, row));
        if (v[p] != 0) std::swap(v, row);
      }
    }
    if (!is_zero(v)) b.push_back(v);
    std::sort(b.begin(), b.end(), [cols](const ZVec& x, const ZVec& y) {
      size_t px = 0, py = 0;
      while (px < cols && x[px] == 0) ++px;
      while (py < cols && y[py] == 0) ++py;
      return px < py;
    });
  }
  // normalize signs and reduce above-pivot entries
  for (auto& row : b) {
    size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p < row.size() && row[p] < 0) row = vneg(row);
  }
  for (size_t i = b.size(); i-- > 0;) {
    size_t p = 0;
    while (p < cols && b[i][p] == 0) ++p;
    for (size_t j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), b[j][p].get_mpz_t(), b[i][p].get_mpz_t());
      if (q != 0) b[j] = vsub(b[j], vscale(q, b[i]));
    }
  }
  return b;
}

// Saturated lattice basis of span_Q(gens) intersected with Z^n: the integer
// kernel of the kernel.
inline ZMat saturated_span_basis(const ZMat& gens) {
  if (gens.empty()) return {};
  ZMat orth = z_kernel(gens);
  if (orth.empty()) {
    // full span
    size_t n = gens[0].size();
    ZMat id(n, zvec_zero(n));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  return lattice_hnf(z_kernel(orth));
}

// Reduces v to its canonical representative modulo the lattice spanned by
// basis (basis in row HNF).
inline ZVec reduce_mod_lattice(ZVec v, const ZMat& basis) {
  size_t cols = v.size();
  for (const auto& row : basis) {
    size_t p = 0;
    while (p < cols && row[p] == 0) ++p;
    if (p == cols) continue;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), row[p].get_mpz_t());
    if (q != 0) v = vsub(v, vscale(q, row));
  }
  return v;
}

// Is v in the lattice spanned by basis?
inline bool in_lattice(const ZVec& v, const ZMat& basis) {
  return is_zero(reduce_mod_lattice(v, basis));
}

// Expresses x in the rational basis given by the rows of b (solves b^T c = x).
inline std::optional<QVec> coords_in_basis(const QVec& x, const QMat& b) {
  if (b.empty()) return is_zero(x) ? std::optional<QVec>(QVec{}) : std::nullopt;
  size_t n = x.size();
  QMat bt(n, QVec(b.size()));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < n; ++j) bt[j][i] = b[i][j];
  auto c = solve(bt, x);
  if (!c) return std::nullopt;
  // verify (solve() ignores inconsistent rows only when rank-deficient)
  QVec back = qvec_zero(n);
  for (size_t i = 0; i < b.size(); ++i) back = vadd(back, vscale((*c)[i], b[i]));
  if (back != x) return std::nullopt;
  return c;
}

// Orthogonal projection of v onto span(rows of s), exact over Q.
inline QVec project_onto_span(const QVec& v, const QMat& s) {
  if (s.empty()) return qvec_zero(v.size());
  // Gram system G c = s v
  size_t k = s.size();
  QMat g(k, QVec(k));
  QVec rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) g[i][j] = dot(s[i], s[j]);
    rhs[i] = dot(s[i], v);
  }
  auto c = solve(g, rhs);
  if (!c) fail(ErrorCode::Internal, "projection solve failed");
  QVec r = qvec_zero(v.size());
  for (size_t i = 0; i < k; ++i) r = vadd(r, vscale((*c)[i], s[i]));
  return r;
}

}  // namespace tvl
