#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gf2sym/matrix.hpp"

namespace testutil {

using Dense = std::vector<std::vector<int>>;

inline gf2sym::Gf2Matrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c) {
  gf2sym::Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, g() & 1U);
  return m;
}

inline gf2sym::Gf2Vector random_vector(std::mt19937_64& g, std::size_t n) {
  gf2sym::Gf2Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, g() & 1U);
  return v;
}

inline Dense to_dense(const gf2sym::Gf2Matrix& m) {
  Dense d(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.get(i, j);
  return d;
}

inline gf2sym::Gf2Matrix from_dense(const Dense& d, std::size_t cols) {
  gf2sym::Gf2Matrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, d[i][j] != 0);
  return m;
}

// Triple loop over ints.
inline Dense naive_mul(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols) {
  Dense c(a.size(), std::vector<int>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < inner; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s & 1;
    }
  return c;
}

// Plain row reduction over ints.
inline std::size_t naive_rank(Dense a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !a[p][c]) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && a[r][c])
        for (std::size_t k = 0; k < cols; ++k) a[r][k] ^= a[rank][k];
    ++rank;
  }
  return rank;
}

// Symplectic form with the reverse-diagonal convention: <x, y> = sum x_i y_{n2-1-i}.
inline int symp_form(const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t n2 = x.size();
  int s = 0;
  for (std::size_t i = 0; i < n2; ++i) s ^= x[i] & y[n2 - 1 - i];
  return s;
}

inline gf2sym::Gf2Matrix matrix_from_index(std::uint64_t bits, std::size_t r, std::size_t c) {
  gf2sym::Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, (bits >> (i * c + j)) & 1U);
  return m;
}

// Pearson goodness of fit; returns the upper-tail p-value.
inline double chi2_pvalue(const std::vector<double>& observed, const std::vector<double>& probs) {
  double total = 0;
  for (double o : observed) total += o;
  double stat = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double e = total * probs[k];
    stat += (observed[k] - e) * (observed[k] - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace testutil
