#include "gf2sym/sample.hpp"

#include <vector>

#include "gf2sym/errors.hpp"

namespace gf2sym {

namespace {

mpz_class pow2(std::size_t e) {
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, e);
  return x;
}

// Sum over increasing r-subsets alpha of [m] of 2^{|T_L(alpha)|}, tabulated
// for suffixes: w[s][t] covers subsets of size t drawn from [s, m).
std::vector<std::vector<mpz_class>> alpha_weights(std::size_t m, std::size_t r) {
  std::vector<std::vector<mpz_class>> w(m + 1, std::vector<mpz_class>(r + 1, 0));
  for (std::size_t s = 0; s <= m; ++s) w[s][0] = 1;
  for (std::size_t s = m; s-- > 0;) {
    for (std::size_t t = 1; t <= r; ++t) {
      w[s][t] = w[s + 1][t] + pow2(m - 1 - s) * w[s + 1][t - 1];
    }
  }
  return w;
}

// One pivot column for the next row: among the 2f coordinates whose qubit is
// still free, the rho-th smallest is picked with probability 2^rho / (4^f - 1).
std::size_t draw_beta_step(std::vector<bool>& qubit_used, std::size_t n2, Philox& rng) {
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n2; ++j) {
    if (!qubit_used[qubit_of(j, n2)]) free.push_back(j);
  }
  mpz_class x = random_below(pow2(free.size()) - 1, rng) + 1;
  std::size_t rho = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
  std::size_t col = free[rho];
  qubit_used[qubit_of(col, n2)] = true;
  return col;
}

}  // namespace

std::size_t borel_dim(const TransitiveSet& t) {
  const std::size_t n2 = t.size();
  if (n2 % 2 != 0) throw DimensionError("borel_dim: size must be even");
  auto v = tset_validate(t);
  if (!v.transitive || !v.reversal_closed) {
    throw DomainError("transitive-reversal-closed", "borel_dim: T must be transitive and closed under reversal");
  }
  std::size_t d = 0;
  for (std::size_t j = 0; j < n2 / 2; ++j) {
    for (std::size_t i = j + 1; i <= n2 - 1 - j; ++i) d += t.contains(i, j);
  }
  return d;
}

mpz_class random_below(const mpz_class& bound, Philox& rng) {
  if (bound <= 0) throw DomainError("positive-bound", "random_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class x;
  for (;;) {
    for (auto& w : buf) w = rng();
    if (bits % 64 != 0) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (x < bound) return x;
  }
}

Gf2Matrix random_lower(const TransitiveSet& t, Philox& rng) {
  auto l = Gf2Matrix::identity(t.size());
  for (auto [i, j] : t.pairs()) l.set(i, j, rng.next_bit());
  return l;
}

Gf2Matrix random_borel(const TransitiveSet& t, Philox& rng) {
  const std::size_t n2 = t.size();
  const std::size_t n = n2 / 2;
  std::vector<Gf2Vector> vs;
  vs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Gf2Vector v(n2);
    for (std::size_t i = k + 1; i <= n2 - 1 - k; ++i) {
      if (t.contains(i, k)) v.set(i, rng.next_bit());
    }
    vs.push_back(std::move(v));
  }
  return borel_compose(vs);
}

Quintuple sample_symplectic_params(std::size_t n, Philox& rng) {
  if (n == 0) throw DimensionError("sample_symplectic: n must be positive");
  const std::size_t n2 = 2 * n;
  PivotProfile profile{Mode::Symplectic, n2, n2, {}, {}};
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) profile.beta.push_back(draw_beta_step(used, n2, rng));
  Gf2Matrix l = random_borel(TransitiveSet::all_pairs(n2), rng);
  Gf2Matrix r = random_borel(tset_ttcr(profile.beta, n2), rng);
  return {std::move(profile), std::move(l), std::move(r)};
}

Gf2Matrix sample_symplectic(std::size_t n, Philox& rng) {
  auto q = sample_symplectic_params(n, rng);
  return mul(q.L, mul(pivot_matrix(q.profile), q.R));
}

Quintuple sample_stabilizer_pcm_params(std::size_t m, std::size_t n, std::size_t r, Philox& rng) {
  if (r > m || r > n) throw DomainError("rank-at-most-min(m,n)", "sample_stabilizer_pcm: rank exceeds min(m, n)");
  const std::size_t n2 = 2 * n;
  PivotProfile profile{Mode::Stabilizer, m, n2, {}, {}};

  auto w = alpha_weights(m, r);
  std::size_t start = 0;
  for (std::size_t t = r; t > 0; --t) {
    mpz_class x = random_below(w[start][t], rng);
    for (std::size_t a = start;; ++a) {
      mpz_class here = pow2(m - 1 - a) * w[a + 1][t - 1];
      if (x < here) {
        profile.alpha.push_back(a);
        start = a + 1;
        break;
      }
      x -= here;
    }
  }

  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < r; ++k) profile.beta.push_back(draw_beta_step(used, n2, rng));
  Gf2Matrix l = random_lower(tset_tl(profile.alpha, m), rng);
  Gf2Matrix rr = random_borel(tset_ttcr(profile.beta, n2), rng);
  return {std::move(profile), std::move(l), std::move(rr)};
}

Gf2Matrix sample_stabilizer_pcm(std::size_t m, std::size_t n, std::size_t r, Philox& rng) {
  auto q = sample_stabilizer_pcm_params(m, n, r, rng);
  return mul(q.L, mul(pivot_matrix(q.profile), q.R));
}

BigCount count_symplectic(std::size_t n) {
  BigCount c = pow2(n * n);
  for (std::size_t i = 1; i <= n; ++i) c *= pow2(2 * i) - 1;
  return c;
}

BigCount count_stabilizer_pcm(std::size_t m, std::size_t n, std::size_t r) {
  if (r > m || r > n) return 0;
  BigCount c = alpha_weights(m, r)[0][r];
  for (std::size_t f = n - r + 1; f <= n; ++f) c *= pow2(2 * f) - 1;
  return c;
}

}  // namespace gf2sym
