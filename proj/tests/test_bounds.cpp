#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gf2sym/bounds.hpp"
#include "gf2sym/errors.hpp"

using namespace gf2sym;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Rational pow_q(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

Rational direct_binom_cdf(std::size_t n, const Rational& p, long i) {
  Rational s = 0;
  for (long k = 0; k <= std::min<long>(i, static_cast<long>(n)); ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, static_cast<unsigned long>(k));
    s += Rational(c) * pow_q(p, static_cast<std::size_t>(k)) * pow_q(1 - p, n - static_cast<std::size_t>(k));
  }
  return s;
}

// Joint law of (error, side information) built qubit by qubit from the channel
// model: label -> probability of every one of the 4^n errors.
using Joint = std::map<std::string, std::vector<Rational>>;

// Per qubit: list of (label char, probabilities of the 4 single-qubit Paulis).
using QubitModel = std::vector<std::pair<char, std::array<Rational, 4>>>;

Joint build_joint(std::size_t n, const QubitModel& model) {
  Joint out;
  std::function<void(std::size_t, std::string, std::vector<Rational>)> rec = [&](std::size_t q, std::string label,
                                                                                 std::vector<Rational> probs) {
    if (q == n) {
      auto& slot = out[label];
      if (slot.empty()) slot.assign(probs.size(), 0);
      for (std::size_t k = 0; k < probs.size(); ++k) slot[k] += probs[k];
      return;
    }
    for (const auto& [c, pauli] : model) {
      std::vector<Rational> next(probs.size() * 4);
      for (std::size_t k = 0; k < probs.size(); ++k)
        for (std::size_t a = 0; a < 4; ++a) next[k * 4 + a] = probs[k] * pauli[a];
      rec(q + 1, label + c, next);
    }
  };
  rec(0, "", {Rational(1)});
  return out;
}

Joint erasure_joint(std::size_t n, const Rational& d) {
  const Rational e = d / 4;
  return build_joint(n, {{'k', {1 - d, 0, 0, 0}}, {'e', {e, e, e, e}}});
}

Joint depolarizing_joint(std::size_t n, const Rational& d) {
  return build_joint(n, {{'-', {1 - d, d / 3, d / 3, d / 3}}});
}

struct Pair {
  Rational conv, ach;
};

// P(J > 2^m) and P(J > 2^m) + E[1{J <= 2^m} (J - 1)] / 2^m with J the rank
// of the error inside its label's list sorted by decreasing probability.
Pair guess_bounds(const Joint& joint, std::size_t m) {
  const mpz_class big = mpz_class(1) << static_cast<mp_bitcnt_t>(m);
  Pair r{0, 0};
  Rational extra = 0;
  for (const auto& [label, probs] : joint) {
    auto sorted = probs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (std::size_t j = 1; j <= sorted.size(); ++j) {
      if (mpz_class(static_cast<unsigned long>(j)) > big)
        r.conv += sorted[j - 1];
      else
        extra += sorted[j - 1] * static_cast<unsigned long>(j - 1);
    }
  }
  r.ach = r.conv + extra / Rational(big);
  return r;
}

bool close_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b) + 1e-300; }

}  // namespace

TEST_CASE("binomial CDF examples") {
  CHECK(binom_cdf(2, q(1, 2), 1) == q(3, 4));
  CHECK(binom_cdf(5, q(1, 4), 2) == q(918, 1024));
  CHECK(binom_cdf(7, q(2, 7), 7) == 1);
  CHECK(binom_cdf(7, q(2, 7), 9) == 1);
  CHECK(binom_cdf(7, q(2, 7), -1) == 0);
  for (std::size_t n : {1u, 4u, 9u})
    for (auto p : {q(1, 10), q(1, 2), q(3, 4), q(0), q(1)})
      for (long i = -1; i <= static_cast<long>(n); ++i) CHECK(binom_cdf(n, p, i) == direct_binom_cdf(n, p, i));
  auto t = binom_cdf_table(6, q(1, 3));
  for (long i = 0; i <= 6; ++i) CHECK(t[i] == direct_binom_cdf(6, q(1, 3), i));
}

TEST_CASE("piecewise-linear inverse binomial CDF") {
  CHECK(binom_cdf_inv_pl(1, q(3, 4), q(1, 2)) == q(1, 3));
  for (std::size_t n : {1u, 3u, 6u}) {
    const auto p = q(3, 4);
    CHECK(binom_cdf_inv_pl(n, p, 0) == -1);
    for (long i = 0; i <= static_cast<long>(n); ++i) CHECK(binom_cdf_inv_pl(n, p, binom_cdf(n, p, i)) == i);
    for (auto y : {q(1, 7), q(1, 2), q(5, 6)}) CHECK(binom_cdf_ext(n, p, binom_cdf_inv_pl(n, p, y)) == y);
  }
  CHECK_THROWS_AS(binom_cdf_inv_pl(3, q(1, 2), q(3, 2)), DomainError);
  CHECK_THROWS_AS(binom_cdf_inv_pl(3, q(1, 2), q(-1, 2)), DomainError);
}

TEST_CASE("to_double rounds to nearest") {
  CHECK(to_double(q(1, 5)) == 0.2);
  CHECK(to_double(q(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(q(-7, 10)) == -0.7);
  CHECK(floor_q(q(-1, 3)) == -1);
  CHECK(floor_q(q(7, 2)) == 3);
}

TEST_CASE("library tables agree with the channel models") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto d : {q(1, 10), q(1, 2)}) {
      for (auto* make : {&erasure_table, &depolarizing_table}) {
        auto t = make(n, d);
        t.validate();
        const Joint joint = make == &erasure_table ? erasure_joint(n, d) : depolarizing_joint(n, d);
        std::map<std::string, std::vector<Rational>> lib;
        for (const auto& e : t.entries) lib[e.v].push_back(e.p);
        std::vector<std::vector<Rational>> a, b;
        for (auto& [k, v] : lib) {
          std::sort(v.begin(), v.end());
          a.push_back(v);
        }
        for (auto [k, v] : joint) {
          std::vector<Rational> nz;
          for (auto& p : v)
            if (p != 0) nz.push_back(p);
          std::sort(nz.begin(), nz.end());
          if (!nz.empty()) b.push_back(nz);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("general bounds on special distributions") {
  DistTable point{2, {{Gf2Vector(4), "", 1}}};
  for (std::size_t m = 0; m <= 4; ++m) {
    auto r = general_bounds(point, m);
    CHECK(r.p_conv_exact == 0);
    CHECK(r.p_ach_exact == 0);
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    auto u = uniform_table(n);
    for (std::size_t m = 0; m <= 2 * n; ++m) {
      const Rational s = Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(m)) /
                         Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(2 * n));
      const Rational inv = Rational(1) / Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(m));
      auto r = general_bounds(u, m);
      CHECK(r.p_conv_exact == 1 - s);
      CHECK(r.p_ach_exact == 1 - s + s / 2 * (1 - inv));
    }
  }
  DistTable bad{1, {{Gf2Vector(2), "", q(1, 2)}}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(general_bounds(bad, 0), DomainError);
}

TEST_CASE("general bounds match the enumeration oracle") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto d : {q(1, 10), q(1, 4), q(1, 2), q(9, 10)})
      for (std::size_t m = 0; m <= 2 * n; ++m) {
        auto e = guess_bounds(erasure_joint(n, d), m);
        auto r = general_bounds(erasure_table(n, d), m);
        CHECK(r.p_conv_exact == e.conv);
        CHECK(r.p_ach_exact == e.ach);
        auto f = guess_bounds(depolarizing_joint(n, d), m);
        auto s = general_bounds(depolarizing_table(n, d), m);
        CHECK(s.p_conv_exact == f.conv);
        CHECK(s.p_ach_exact == f.ach);
      }
}

TEST_CASE("hand-derived values at n = 1") {
  for (auto d : {q(0), q(1, 10), q(3, 10), q(1, 2), q(1)}) {
    auto e = erasure_bounds(1, d, 0);
    CHECK(e.p_conv_exact == d * 3 / 4);
    CHECK(e.p_ach_exact == d * 3 / 4);
  }
  for (auto d : {q(0), q(1, 10), q(3, 10), q(1, 2), q(3, 4)}) {
    auto r = depolarizing_bounds(1, d, 1);
    CHECK(r.p_conv_exact == d * 2 / 3);
    CHECK(r.p_ach_exact == d * 5 / 6);
  }
  auto z = depolarizing_bounds(1, q(3, 10), 1);
  CHECK(z.p_conv == 0.2);
  CHECK(z.p_ach == 0.25);
}

TEST_CASE("closed forms equal enumeration exactly for n <= 4") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto d : {q(0), q(1, 10), q(1, 4), q(1, 2), q(3, 4), q(4, 5), q(1)}) {
      auto et = erasure_joint(n, d);
      auto dt = depolarizing_joint(n, d);
      for (std::size_t m = 0; m <= 2 * n; ++m) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(d.get_str());
        auto e = guess_bounds(et, m);
        auto r = erasure_bounds(n, d, m);
        CHECK(r.exact);
        CHECK(r.p_conv_exact == e.conv);
        CHECK(r.p_ach_exact == e.ach);
        auto f = guess_bounds(dt, m);
        auto s = depolarizing_bounds(n, d, m);
        CHECK(s.p_conv_exact == f.conv);
        CHECK(s.p_ach_exact == f.ach);
        auto b = depolarizing_bounds_blocks(n, d, m);
        CHECK(b.p_conv_exact == f.conv);
        CHECK(b.p_ach_exact == f.ach);
      }
    }
}

TEST_CASE("theorem form and block form agree beyond enumeration sizes") {
  for (std::size_t n : {7u, 12u, 20u})
    for (auto d : {q(1, 10), q(1, 3), q(3, 4)})
      for (std::size_t m = 0; m <= 2 * n; m += 3) {
        auto a = depolarizing_bounds(n, d, m);
        auto b = depolarizing_bounds_blocks(n, d, m);
        CHECK(a.p_conv_exact == b.p_conv_exact);
        CHECK(a.p_ach_exact == b.p_ach_exact);
      }
}

TEST_CASE("bounds are ordered and monotone in m") {
  for (std::size_t n : {1u, 5u, 16u})
    for (auto d : {q(1, 10), q(1, 2), q(9, 10)}) {
      Rational prev_c = 2, prev_a = 2;
      for (std::size_t m = 0; m <= 2 * n; ++m) {
        for (const auto& r : {erasure_bounds(n, d, m), depolarizing_bounds(n, d, m)}) {
          CHECK(r.p_conv_exact <= r.p_ach_exact);
          CHECK(r.p_conv_exact >= 0);
          CHECK(r.p_ach_exact <= 1);
        }
        auto r = depolarizing_bounds(n, d, m);
        CHECK(r.p_conv_exact <= prev_c);
        CHECK(r.p_ach_exact <= prev_a);
        prev_c = r.p_conv_exact;
        prev_a = r.p_ach_exact;
      }
    }
}

TEST_CASE("bounds do not depend on how ties are broken") {
  std::mt19937_64 g(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto prof = sorted_profile(depolarizing_table(n, q(1, 5)));
    for (std::size_t m = 0; m <= 2 * n; ++m) {
      auto base = general_bounds(prof, n, m);
      auto shuffled = prof;
      for (auto& grp : shuffled.groups) {
        std::size_t a = 0;
        while (a < grp.size()) {
          std::size_t b = a;
          while (b < grp.size() && grp[b].p == grp[a].p) ++b;
          std::shuffle(grp.begin() + a, grp.begin() + b, g);
          a = b;
        }
      }
      auto r = general_bounds(shuffled, n, m);
      CHECK(r.p_conv_exact == base.p_conv_exact);
      CHECK(r.p_ach_exact == base.p_ach_exact);
    }
  }
}

TEST_CASE("CDF of the rank J for depolarizing channels") {
  CHECK(j_cdf_depolarizing(1, q(3, 10), 1) == q(7, 10));
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto d : {q(1, 10), q(3, 10), q(1, 2)}) {
      auto probs = depolarizing_joint(n, d).begin()->second;
      std::sort(probs.begin(), probs.end(), std::greater<>());
      Rational acc = 0;
      Rational prev = 0;
      CHECK(j_cdf_depolarizing(n, d, 0) == 0);
      for (std::size_t j = 1; j <= probs.size(); ++j) {
        acc += probs[j - 1];
        auto c = j_cdf_depolarizing(n, d, static_cast<unsigned long>(j));
        CHECK(c == acc);
        CHECK(c >= prev);
        prev = c;
      }
      CHECK(prev == 1);
    }
  CHECK_THROWS_AS(j_cdf_depolarizing(1, q(1, 2), 5), DomainError);
}

TEST_CASE("float path agrees with exact path for n <= 256") {
  for (std::size_t n : {1u, 3u, 16u, 64u, 128u, 256u})
    for (auto d : {q(1, 10), q(1, 4), q(1, 2)}) {
      const double dd = to_double(d);
      for (std::size_t m : {std::size_t{0}, n / 4, n / 2, n, 3 * n / 2, 2 * n}) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(dd);
        auto e = erasure_bounds(n, d, m);
        auto ef = erasure_bounds_float(n, dd, m);
        CHECK(!ef.exact);
        CHECK(close_rel(ef.p_conv, to_double(e.p_conv_exact), 1e-10));
        CHECK(close_rel(ef.p_ach, to_double(e.p_ach_exact), 1e-10));
        auto p = depolarizing_bounds(n, d, m);
        auto pf = depolarizing_bounds_float(n, dd, m);
        CHECK(close_rel(pf.p_conv, to_double(p.p_conv_exact), 1e-10));
        CHECK(close_rel(pf.p_ach, to_double(p.p_ach_exact), 1e-10));
      }
    }
}

TEST_CASE("normal distribution helpers") {
  CHECK(std::fabs(normal_cdf_inv(0.5)) < 1e-12);
  CHECK(std::fabs(normal_cdf_inv(0.975) - 1.959963984540054) < 1e-9);
  CHECK(std::fabs(normal_cdf_inv(0.05) + 1.6448536269514722) < 1e-9);
  for (double y : {1e-12, 0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 1 - 1e-9})
    CHECK(std::fabs(normal_cdf(normal_cdf_inv(y)) - y) < 1e-9 * std::max(1.0, y));
  CHECK_THROWS_AS(normal_cdf_inv(0.0), DomainError);
  CHECK_THROWS_AS(normal_cdf_inv(1.0), DomainError);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
}

TEST_CASE("asymptotic rates") {
  for (std::size_t n : {10u, 1000u}) CHECK(asymptotic_rate(ChannelKind::Erasure, n, 0.25, 0.5) == doctest::Approx(0.5));
  const double d = 0.1;
  const double hashing = 1 - binary_entropy(d) - d * std::log2(3.0);
  CHECK(std::fabs(asymptotic_rate(ChannelKind::Depolarizing, 1u << 30, d, 0.05) - hashing) < 1e-3);
  CHECK_THROWS_AS(asymptotic_rate(ChannelKind::Erasure, 10, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(asymptotic_rate(ChannelKind::Erasure, 10, 0.1, 1.0), DomainError);
}

TEST_CASE("rate search sentinels and brackets") {
  ChannelSpec er{ChannelKind::Erasure, q(1, 4), {}};
  auto all = rate_search(er, 8, 1, true);
  CHECK(all.ach_found);
  CHECK(all.r_ach == 1.0);
  CHECK(all.m_ach == 0);
  CHECK(!all.conv_found);
  CHECK(all.r_conv == 1.0);

  auto none = rate_search(er, 8, 0, true);
  CHECK(!none.ach_found);
  CHECK(none.r_ach == 0.0);

  ChannelSpec clean{ChannelKind::Depolarizing, q(0), {}};
  auto c = rate_search(clean, 6, q(1, 100), true);
  CHECK(c.ach_found);
  CHECK(c.r_ach == 1.0);

  // exact and float scans agree on a small case
  auto x = rate_search(er, 40, q(1, 20), true);
  auto y = rate_search(er, 40, q(1, 20), false);
  CHECK(x.m_ach == y.m_ach);
  CHECK(x.m_conv == y.m_conv);
  CHECK(x.r_ach <= x.r_conv);

  const std::size_t n = 1024;
  auto big = rate_search(er, n, q(1, 100), false);
  const double a = asymptotic_rate(ChannelKind::Erasure, n, 0.25, 0.01);
  CHECK(big.ach_found);
  CHECK(big.conv_found);
  CHECK(std::fabs(big.r_ach - a) <= 10.0 / n);
  CHECK(std::fabs(big.r_conv - big.r_ach) <= 4.0 / n);
}
