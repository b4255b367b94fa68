#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gf2sym/errors.hpp"
#include "gf2sym/moves.hpp"
#include "test_util.hpp"

using namespace gf2sym;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

std::vector<std::size_t> random_qubit_injective(std::mt19937_64& g, std::size_t n, std::size_t len) {
  std::vector<std::size_t> qubits(n);
  std::iota(qubits.begin(), qubits.end(), 0);
  std::shuffle(qubits.begin(), qubits.end(), g);
  std::vector<std::size_t> beta;
  for (std::size_t k = 0; k < len; ++k) beta.push_back(g() & 1U ? qubits[k] : 2 * n - 1 - qubits[k]);
  return beta;
}

bool closure_oracle(const TransitiveSet& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t.contains(i, j) && t.contains(j, k) && !t.contains(i, k)) return false;
  return true;
}

bool reversal_oracle(const TransitiveSet& t) {
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t.contains(i, j) != t.contains(n - 1 - j, n - 1 - i)) return false;
  return true;
}

// Gauss-Jordan inverse over ints; the input must be invertible.
Gf2Matrix oracle_inverse(const Gf2Matrix& a) {
  const std::size_t n = a.rows();
  auto d = testutil::to_dense(a);
  testutil::Dense inv(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (!d[p][c]) ++p;
    std::swap(d[p], d[c]);
    std::swap(inv[p], inv[c]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != c && d[r][c])
        for (std::size_t k = 0; k < n; ++k) {
          d[r][k] ^= d[c][k];
          inv[r][k] ^= inv[c][k];
        }
  }
  return testutil::from_dense(inv, n);
}

TransitiveSet random_transitive(std::mt19937_64& g, std::size_t n) {
  // noninversions of a random permutation are transitive
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  return g() & 1U ? tset_noninversions(perm) : tset_inversions(perm);
}

Gf2Matrix random_in_L(std::mt19937_64& g, const TransitiveSet& t) {
  auto m = Gf2Matrix::identity(t.size());
  for (auto [i, j] : t.pairs()) m.set(i, j, g() & 1U);
  return m;
}

Gf2Matrix dense_form(const Gf2Matrix& a) {
  // Aᵀ Λ A evaluated with the int oracle form
  const std::size_t n2 = a.cols();
  Gf2Matrix out(n2, n2);
  auto d = testutil::to_dense(transpose(a));
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) out.set(i, j, testutil::symp_form(d[i], d[j]));
  return out;
}

}  // namespace

TEST_CASE("index maps") {
  CHECK(mirror_index(0, 6) == 5);
  CHECK(qubit_of(4, 6) == 1);
  CHECK(qubit_of(1, 6) == 1);
}

TEST_CASE("gaussian_move") {
  auto g = gaussian_move(3, 1, 0);
  auto expected = Gf2Matrix::identity(3);
  expected.set(1, 0, true);
  CHECK(g == expected);
  CHECK(mul(g, g) == Gf2Matrix::identity(3));
  CHECK(mul(gaussian_move(2, 1, 0), Gf2Matrix::identity(2)) == Gf2Matrix::from_rows({"10", "11"}));
  CHECK_THROWS_AS(gaussian_move(3, 1, 1), DimensionError);
  CHECK_THROWS_AS(gaussian_move(3, 3, 0), DimensionError);
}

TEST_CASE("symplectic_move") {
  CHECK(symplectic_move(1, 1, 0) == Gf2Matrix::from_rows({"10", "11"}));
  auto expected = Gf2Matrix::identity(4);
  expected.set(1, 0, true);
  expected.set(3, 2, true);
  CHECK(symplectic_move(2, 1, 0) == expected);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto lam = revdiag(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (i == j) continue;
        auto s = symplectic_move(n, i, j);
        CHECK(mul(transpose(s), mul(lam, s)) == lam);
        CHECK(dense_form(s) == lam);
      }
  }
  CHECK_THROWS_AS(symplectic_move(2, 4, 0), DimensionError);
}

TEST_CASE("symplectic_column_move") {
  CHECK(symplectic_column_move(2, Gf2Vector(4), 1) == Gf2Matrix::identity(4));
  CHECK(symplectic_column_move(1, Gf2Vector::unit(2, 0), 1) == Gf2Matrix::from_rows({"11", "01"}));
  CHECK_THROWS_AS(symplectic_column_move(2, Gf2Vector::unit(4, 1), 1), DomainError);

  std::mt19937_64 g(7);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + g() % 6;
    const std::size_t n2 = 2 * n;
    const std::size_t i = g() % n2;
    auto v = random_vector(g, n2);
    v.set(i, false);
    auto s = symplectic_column_move(n, v, i);
    CHECK(s == symplectic_column_move_as_product(n, v, i));
    CHECK(mul(s, s) == Gf2Matrix::identity(n2));
    CHECK(is_symplectic(s));
    // s e_i = e_i + v
    CHECK(mul(s, Gf2Vector::unit(n2, i)) == (Gf2Vector::unit(n2, i) ^ v));
    // fixes u with u_i = 0 and vᵀ Λ u = 0
    auto u = random_vector(g, n2);
    u.set(i, false);
    int form = 0;
    for (std::size_t k = 0; k < n2; ++k) form ^= v.get(k) & u.get(n2 - 1 - k);
    if (form == 0) CHECK(mul(s, u) == u);
  }
}

TEST_CASE("is_symplectic") {
  for (std::size_t n2 : {2u, 4u, 10u}) {
    CHECK(is_symplectic(Gf2Matrix::identity(n2)));
    CHECK(is_symplectic(revdiag(n2)));
  }
  CHECK_FALSE(is_symplectic(Gf2Matrix::from_rows({"11", "00"})));
  CHECK_THROWS_AS(is_symplectic(Gf2Matrix::identity(3)), DimensionError);
  // all invertible 2x2 matrices are symplectic, the singular ones are not
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    auto a = testutil::matrix_from_index(bits, 2, 2);
    CHECK(is_symplectic(a) == (rank(a) == 2));
  }
}

TEST_CASE("is_stabilizer_pcm") {
  CHECK(is_stabilizer_pcm(Gf2Matrix(3, 4)));
  for (std::uint64_t bits = 0; bits < 4; ++bits) CHECK(is_stabilizer_pcm(testutil::matrix_from_index(bits, 1, 2)));
  CHECK_FALSE(is_stabilizer_pcm(Gf2Matrix::from_rows({"1000", "0001"})));
  CHECK_THROWS_AS(is_stabilizer_pcm(Gf2Matrix(2, 3)), DimensionError);
  std::mt19937_64 g(8);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = 1 + g() % 4, n2 = 2 * (1 + g() % 3);
    auto a = random_matrix(g, m, n2);
    auto d = testutil::to_dense(a);
    bool oracle = true;
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) oracle = oracle && testutil::symp_form(d[x], d[y]) == 0;
    CHECK(is_stabilizer_pcm(a) == oracle);
  }
}

TEST_CASE("pair sets from pivot functions") {
  auto t = tset_ttcr({1}, 2);
  CHECK(t.pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});
  CHECK(tset_ttcr({0}, 2).count() == 0);
  CHECK(tset_tl({0}, 1).count() == 0);
  CHECK(tset_tl({0, 2}, 4).count() == 3 + 1);
  CHECK_THROWS_AS(tset_tr({1, 1}, 3), DomainError);
  CHECK_THROWS_AS(tset_ttcr({0, 3}, 4), DomainError);

  // definition oracles
  std::mt19937_64 g(9);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + g() % 6;
    const std::size_t n2 = 2 * n;
    auto beta = random_qubit_injective(g, n, g() % (n + 1));
    auto tm = tset_tm(beta, n2);
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        bool expect = false;
        for (std::size_t k = 0; k < beta.size(); ++k) {
          if (beta[k] != i) continue;
          expect = true;
          for (std::size_t l = 0; l < k; ++l) expect = expect && qubit_of(beta[l], n2) != qubit_of(j, n2);
        }
        CHECK(tm.contains(i, j) == expect);
      }
    auto ttcr = tset_ttcr(beta, n2);
    CHECK(ttcr == tm.united(tm.reversed()));
  }
}

TEST_CASE("T_tcr is transitive and reversal closed") {
  std::mt19937_64 g(10);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + g() % 16;
    auto beta = random_qubit_injective(g, n, g() % (n + 1));
    auto t = tset_ttcr(beta, 2 * n);
    auto v = tset_validate(t);
    CHECK(v.transitive);
    CHECK(v.reversal_closed);
    if (n <= 6) {
      CHECK(closure_oracle(t));
      CHECK(reversal_oracle(t));
    }
  }
}

TEST_CASE("T_tcr grows under extension of beta") {
  std::mt19937_64 g(12);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + g() % 10;
    auto full = random_qubit_injective(g, n, n);
    const std::size_t cut = g() % (n + 1);
    std::vector<std::size_t> prefix(full.begin(), full.begin() + static_cast<long>(cut));
    CHECK(tset_ttcr(prefix, 2 * n).is_subset_of(tset_ttcr(full, 2 * n)));
  }
}

TEST_CASE("inversion sets") {
  auto inv = tset_inversions({1, 0, 2});
  CHECK(inv.pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});
  auto non = tset_noninversions({1, 0, 2});
  CHECK(non.count() == 2);
  std::mt19937_64 g(13);
  for (int rep = 0; rep < 50; ++rep) {
    auto t = random_transitive(g, 1 + g() % 7);
    CHECK(closure_oracle(t));
  }
}

TEST_CASE("membership in L(n,T) and B(2n,T)") {
  std::mt19937_64 g(14);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + g() % 6;
    auto t = random_transitive(g, n);
    CHECK(in_L(Gf2Matrix::identity(n), t));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(in_L(gaussian_move(n, i, j), t) == t.contains(i, j));
    // closure under products and inverses
    auto a = random_in_L(g, t);
    auto b = random_in_L(g, t);
    CHECK(in_L(mul(a, b), t));
    CHECK(in_L(oracle_inverse(a), t));
  }
  CHECK_THROWS_AS(in_L(Gf2Matrix::identity(3), TransitiveSet(4)), DimensionError);

  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + g() % 5;
    auto t = tset_ttcr(random_qubit_injective(g, n, g() % (n + 1)), 2 * n);
    CHECK(in_B(Gf2Matrix::identity(2 * n), t));
    for (auto [i, j] : t.pairs()) CHECK(in_B(symplectic_move(n, i, j), t));
  }
  CHECK_FALSE(in_B(gaussian_move(4, 1, 0), TransitiveSet::all_pairs(4)));
}

TEST_CASE("sparse appliers equal dense multiplication") {
  std::mt19937_64 g(15);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + g() % 40;
    const std::size_t n2 = 2 * n;
    const std::size_t rows = 1 + g() % 20;
    auto m = random_matrix(g, n2, n2);
    auto wide = random_matrix(g, rows, n2);
    const std::size_t i = g() % n2;
    auto v = random_vector(g, n2);
    v.set(i, false);

    auto gcol = Gf2Matrix::identity(n2);  // I + v e_iᵀ
    auto grow = Gf2Matrix::identity(n2);  // I + e_i vᵀ
    for (std::size_t k = 0; k < n2; ++k) {
      if (v.get(k)) gcol.flip(k, i), grow.flip(i, k);
    }
    auto x = m;
    apply_gauss_column_left(x, v, i);
    CHECK(x == mul(gcol, m));
    x = m;
    apply_gauss_row_left(x, i, v);
    CHECK(x == mul(grow, m));
    x = wide;
    apply_gauss_row_right(x, i, v);
    CHECK(x == mul(wide, grow));

    auto s = symplectic_column_move(n, v, i);
    x = m;
    apply_symp_column_left(x, v, i);
    CHECK(x == mul(s, m));
    x = m;
    apply_symp_row_left(x, i, v);
    CHECK(x == mul(transpose(s), m));
    x = wide;
    apply_symp_row_right(x, i, v);
    CHECK(x == mul(wide, transpose(s)));
  }
}
