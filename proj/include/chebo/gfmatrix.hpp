#pragma once

// Small dense matrices over a finite field, entries stored as field reprs.
// Vectors are rows and act on the left: w = v * M. Everything here is
// exact field arithmetic; dimensions stay tiny (<= a few dozen).

#include <cstdint>
#include <optional>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/ffield.hpp"
#include "chebo/rng.hpp"

namespace chebo {

struct GfMat {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> a;  // row-major

  GfMat() = default;
  explicit GfMat(std::uint32_t dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}

  static GfMat identity(std::uint32_t dim) {
    GfMat m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint32_t& at(std::uint32_t i, std::uint32_t j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  friend bool operator==(const GfMat& x, const GfMat& y) { return x.n == y.n && x.a == y.a; }
  friend auto operator<=>(const GfMat& x, const GfMat& y) {
    if (auto c = x.n <=> y.n; c != 0) return c;
    return x.a <=> y.a;
  }
};

inline GfMat mat_mul(const FField& f, const GfMat& x, const GfMat& y) {
  GfMat r(x.n);
  for (std::uint32_t i = 0; i < x.n; ++i)
    for (std::uint32_t k = 0; k < x.n; ++k) {
      std::uint64_t v = x.at(i, k);
      if (!v) continue;
      for (std::uint32_t j = 0; j < x.n; ++j)
        if (y.at(k, j)) r.at(i, j) = static_cast<std::uint32_t>(f.add(r.at(i, j), f.mul(v, y.at(k, j))));
    }
  return r;
}

inline std::vector<std::uint32_t> vec_mat(const FField& f, const std::vector<std::uint32_t>& v,
                                          const GfMat& m) {
  std::vector<std::uint32_t> r(m.n, 0);
  for (std::uint32_t i = 0; i < m.n; ++i) {
    if (!v[i]) continue;
    for (std::uint32_t j = 0; j < m.n; ++j)
      if (m.at(i, j)) r[j] = static_cast<std::uint32_t>(f.add(r[j], f.mul(v[i], m.at(i, j))));
  }
  return r;
}

// In-place row echelon over rows of width `w`; returns rank.
inline std::size_t row_echelon(const FField& f, std::vector<std::vector<std::uint32_t>>& rows,
                               std::size_t w, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < w && rank < rows.size(); ++col) {
    std::size_t pr = rank;
    while (pr < rows.size() && rows[pr][col] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    std::uint64_t ic = f.inv(rows[rank][col]);
    for (std::size_t j = col; j < w; ++j)
      rows[rank][j] = static_cast<std::uint32_t>(f.mul(rows[rank][j], ic));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      std::uint64_t c = rows[r][col];
      for (std::size_t j = col; j < w; ++j)
        rows[r][j] = static_cast<std::uint32_t>(f.sub(rows[r][j], f.mul(c, rows[rank][j])));
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

inline std::uint32_t rank_of(const FField& f, const GfMat& m) {
  std::vector<std::vector<std::uint32_t>> rows(m.n, std::vector<std::uint32_t>(m.n));
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  return static_cast<std::uint32_t>(row_echelon(f, rows, m.n));
}

inline std::uint32_t kernel_dim(const FField& f, const GfMat& m) { return m.n - rank_of(f, m); }

inline bool is_invertible(const FField& f, const GfMat& m) { return kernel_dim(f, m) == 0; }

inline GfMat mat_sub_identity(const FField& f, const GfMat& m) {
  GfMat r = m;
  for (std::uint32_t i = 0; i < m.n; ++i)
    r.at(i, i) = static_cast<std::uint32_t>(f.sub(m.at(i, i), 1));
  return r;
}

// dim ker(m - 1): the fixed space of the linear map.
inline std::uint32_t fixed_space_dim(const FField& f, const GfMat& m) {
  return kernel_dim(f, mat_sub_identity(f, m));
}

// Nullspace basis of the homogeneous system rows * x = 0 (unknown width w).
inline std::vector<std::vector<std::uint32_t>> nullspace(
    const FField& f, std::vector<std::vector<std::uint32_t>> rows, std::size_t w) {
  std::vector<std::size_t> pivots;
  std::size_t rank = row_echelon(f, rows, w, &pivots);
  std::vector<bool> is_pivot(w, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free_col = 0; free_col < w; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<std::uint32_t> v(w, 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < rank; ++r)
      v[pivots[r]] = static_cast<std::uint32_t>(f.neg(rows[r][free_col]));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Irreducibility by spinning: reducible iff some nonzero vector generates a
// proper invariant subspace under the given matrices.
inline bool spin_irreducible(const FField& f, const std::vector<GfMat>& mats,
                             std::uint32_t dim) {
  if (dim == 0) return false;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < dim; ++i) total *= f.q;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<std::uint32_t> v(dim);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < dim; ++i) {
      v[i] = static_cast<std::uint32_t>(c % f.q);
      c /= f.q;
    }
    std::vector<std::vector<std::uint32_t>> span{v};
    std::size_t sdim = row_echelon(f, span, dim);
    span.resize(sdim);
    for (std::size_t head = 0; head < span.size() && span.size() < dim; ++head) {
      for (const auto& m : mats) {
        auto img = vec_mat(f, span[head], m);
        auto trial = span;
        trial.push_back(img);
        if (row_echelon(f, trial, dim) > span.size()) {
          span.push_back(img);
          // re-echelonize lazily; correctness only needs the rank growth test
        }
        if (span.size() == dim) break;
      }
    }
    std::vector<std::vector<std::uint32_t>> chk = span;
    if (row_echelon(f, chk, dim) < dim) return false;
  }
  return true;
}

}  // namespace chebo
