#include "gf2sym/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "gf2sym/errors.hpp"
#include "gf2sym/moves.hpp"

namespace gf2sym {

namespace {

mpz_class pow2z(std::size_t e) {
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, e);
  return x;
}

Rational pow_q(const Rational& base, std::size_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow2q(long e) {
  if (e >= 0) return Rational(pow2z(static_cast<std::size_t>(e)));
  return Rational(mpz_class(1), pow2z(static_cast<std::size_t>(-e)));
}

mpz_class choose(std::size_t n, std::size_t k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

void check_probability(const Rational& p, const char* what) {
  if (p < 0 || p > 1) throw DomainError("probability-in-[0,1]", std::string(what) + " must lie in [0, 1]");
}

// Compensated sum of non-negative terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0;
  double c_ = 0;
};

std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> lf(n + 1);
  for (std::size_t k = 0; k <= n; ++k) lf[k] = std::lgamma(static_cast<double>(k) + 1.0);
  return lf;
}

// log of C(n,i) p^i (1-p)^(n-i); -inf when the term is zero.
double log_binom_pmf(const std::vector<double>& lf, std::size_t n, std::size_t i, double p) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (p == 0.0) return i == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return i == n ? 0.0 : kNegInf;
  return lf[n] - lf[i] - lf[n - i] + static_cast<double>(i) * std::log(p) + static_cast<double>(n - i) * std::log1p(-p);
}

BoundResult make_exact(std::size_t n, std::size_t m, Rational conv, Rational ach) {
  BoundResult b;
  b.n = n;
  b.m = m;
  b.exact = true;
  b.p_conv = to_double(conv);
  b.p_ach = to_double(ach);
  b.p_conv_exact = std::move(conv);
  b.p_ach_exact = std::move(ach);
  return b;
}

}  // namespace

// ---- binomial machinery ----------------------------------------------------------

double to_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return d;
  double best = d;
  Rational best_err = abs(q - Rational(d));
  for (double c : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
    if (!std::isfinite(c)) continue;
    Rational err = abs(q - Rational(c));
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

mpz_class floor_q(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

std::vector<Rational> binom_cdf_table(std::size_t n, const Rational& p) {
  check_probability(p, "binomial parameter");
  std::vector<Rational> f(n + 1);
  const Rational q = 1 - p;
  Rational acc = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    acc += Rational(choose(n, i)) * pow_q(p, i) * pow_q(q, n - i);
    f[i] = acc;
  }
  return f;
}

Rational binom_cdf(std::size_t n, const Rational& p, long i) {
  check_probability(p, "binomial parameter");
  if (i < 0) return 0;
  if (static_cast<std::size_t>(i) >= n) return 1;
  return binom_cdf_table(n, p)[static_cast<std::size_t>(i)];
}

Rational binom_cdf_ext(std::size_t n, const Rational& p, const Rational& x) {
  if (x <= -1) return 0;
  if (x >= static_cast<long>(n)) return 1;
  auto f = binom_cdf_table(n, p);
  const long k = floor_q(x).get_si();
  const Rational lo = k < 0 ? Rational(0) : f[static_cast<std::size_t>(k)];
  const Rational hi = f[static_cast<std::size_t>(k + 1)];
  return lo + (x - k) * (hi - lo);
}

Rational binom_cdf_inv_pl(std::size_t n, const Rational& p, const Rational& y) {
  if (y < 0 || y > 1) throw DomainError("y-in-[0,1]", "binom_cdf_inv_pl: y must lie in [0, 1]");
  if (p <= 0 || p >= 1) throw DomainError("p-in-(0,1)", "binom_cdf_inv_pl: p must lie strictly inside (0, 1)");
  if (y == 0) return -1;
  auto f = binom_cdf_table(n, p);
  Rational prev = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (f[k] >= y) {
      return Rational(static_cast<long>(k) - 1) + (y - prev) / (f[k] - prev);
    }
    prev = f[k];
  }
  return static_cast<long>(n);
}

// ---- distributions ----------------------------------------------------------------

void DistTable::validate() const {
  Rational total = 0;
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& e : entries) {
    if (e.u.size() != 2 * n) throw DomainError("dist-u-length", "error vector length must be 2n");
    if (e.p < 0) throw DomainError("dist-nonnegative", "probabilities must be non-negative");
    if (!seen[e.v].insert(e.u.to_string()).second) {
      throw DomainError("dist-distinct-u", "error vectors must be distinct per side-information label");
    }
    total += e.p;
  }
  if (total != 1) throw DomainError("dist-sums-to-one", "probabilities must sum to exactly 1");
}

DistTable erasure_table(std::size_t n, const Rational& delta) {
  check_probability(delta, "delta");
  DistTable d;
  d.n = n;
  const std::size_t n2 = 2 * n;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
    std::string label(n, '0');
    std::vector<std::size_t> coords;
    for (std::size_t q = 0; q < n; ++q) {
      if ((pattern >> q) & 1U) {
        label[q] = '1';
        coords.push_back(q);
        coords.push_back(mirror_index(q, n2));
      }
    }
    const std::size_t w = coords.size() / 2;
    const Rational pv = pow_q(delta, w) * pow_q(1 - delta, n - w);
    if (pv == 0) continue;
    const Rational pu = pv / Rational(pow2z(coords.size()));
    for (std::size_t bits = 0; bits < (std::size_t{1} << coords.size()); ++bits) {
      Gf2Vector u(n2);
      for (std::size_t t = 0; t < coords.size(); ++t) u.set(coords[t], (bits >> t) & 1U);
      d.entries.push_back({std::move(u), label, pu});
    }
  }
  return d;
}

DistTable depolarizing_table(std::size_t n, const Rational& delta) {
  check_probability(delta, "delta");
  DistTable d;
  d.n = n;
  const std::size_t n2 = 2 * n;
  const Rational each = delta / 3;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n2); ++bits) {
    Gf2Vector u(n2);
    for (std::size_t t = 0; t < n2; ++t) u.set(t, (bits >> t) & 1U);
    std::size_t w = 0;
    for (std::size_t q = 0; q < n; ++q) w += u.get(q) || u.get(mirror_index(q, n2));
    const Rational p = pow_q(each, w) * pow_q(1 - delta, n - w);
    if (p == 0) continue;
    d.entries.push_back({std::move(u), "", p});
  }
  return d;
}

DistTable uniform_table(std::size_t n) {
  DistTable d;
  d.n = n;
  const std::size_t n2 = 2 * n;
  const Rational p(mpz_class(1), pow2z(n2));
  for (std::size_t bits = 0; bits < (std::size_t{1} << n2); ++bits) {
    Gf2Vector u(n2);
    for (std::size_t t = 0; t < n2; ++t) u.set(t, (bits >> t) & 1U);
    d.entries.push_back({std::move(u), "", p});
  }
  return d;
}

SortedProfile sorted_profile(const DistTable& d) {
  std::map<std::string, std::vector<DistEntry>> by_label;
  for (const auto& e : d.entries) by_label[e.v].push_back(e);
  SortedProfile s;
  for (auto& [label, group] : by_label) {
    std::sort(group.begin(), group.end(), [](const DistEntry& a, const DistEntry& b) {
      if (a.p != b.p) return a.p > b.p;
      return lex_less(a.u, b.u);
    });
    s.labels.push_back(label);
    s.groups.push_back(std::move(group));
  }
  return s;
}

// ---- bounds -----------------------------------------------------------------------

BoundResult general_bounds(const SortedProfile& s, std::size_t n, std::size_t m) {
  if (m > 2 * n) throw DomainError("m-at-most-2n", "general_bounds: m must not exceed 2n");
  const mpz_class big_m = pow2z(m);
  Rational conv = 0;
  Rational extra = 0;
  for (const auto& group : s.groups) {
    for (std::size_t idx = 0; idx < group.size(); ++idx) {
      // idx = J - 1
      if (mpz_class(idx) >= big_m) {
        conv += group[idx].p;
      } else {
        extra += group[idx].p * Rational(mpz_class(idx));
      }
    }
  }
  Rational ach = conv + extra / Rational(big_m);
  return make_exact(n, m, std::move(conv), std::move(ach));
}

BoundResult general_bounds(const DistTable& d, std::size_t m) {
  d.validate();
  return general_bounds(sorted_profile(d), d.n, m);
}

BoundResult erasure_bounds(std::size_t n, const Rational& delta, std::size_t m) {
  check_probability(delta, "delta");
  if (m > 2 * n) throw DomainError("m-at-most-2n", "erasure_bounds: m must not exceed 2n");
  const long half = static_cast<long>(m / 2);
  const long k0 = static_cast<long>(n) - half - 1;
  const Rational a = binom_cdf(n, 1 - delta, k0);
  const Rational q = (4 - 3 * delta) / 4;
  const Rational b = pow_q(q, n) * binom_cdf(n, (4 - 4 * delta) / (4 - 3 * delta), k0);
  const Rational c = pow_q(1 + 3 * delta, n) * binom_cdf(n, 4 * delta / (1 + 3 * delta), half);
  const Rational two_m = pow2q(static_cast<long>(m));
  const Rational inv = pow2q(-static_cast<long>(m) - 1);

  Rational conv = a - two_m * b;
  Rational ach = (1 + inv) * a - inv - (two_m + 1) / 2 * b + c * inv;
  return make_exact(n, m, std::move(conv), std::move(ach));
}

BoundResult depolarizing_bounds(std::size_t n, const Rational& delta, std::size_t m) {
  check_probability(delta, "delta");
  if (m > 2 * n) throw DomainError("m-at-most-2n", "depolarizing_bounds: m must not exceed 2n");
  if (delta > Rational(3, 4)) return depolarizing_bounds_blocks(n, delta, m);

  const Rational three_quarters(3, 4);
  const Rational ell = binom_cdf_inv_pl(n, three_quarters, Rational(pow2z(m), pow2z(2 * n)));
  const long fl = floor_q(ell).get_si();
  Rational conv = binom_cdf_ext(n, 1 - delta, Rational(static_cast<long>(n) - 1) - ell);

  const Rational x = delta / (3 - 3 * delta);
  const Rational inv = pow2q(-static_cast<long>(m) - 1);
  const auto f34 = binom_cdf_table(n, three_quarters);
  Rational sum = 0;
  for (long i = 0; i <= fl; ++i) {
    const Rational& fi = f34[static_cast<std::size_t>(i)];
    sum += pow_q(x, static_cast<std::size_t>(i)) * fi * fi;
  }
  Rational ach = (1 + inv) * conv - inv +
                 pow2q(static_cast<long>(m) - 1) * pow_q(1 - delta, n) * pow_q(x, static_cast<std::size_t>(fl + 1)) +
                 pow_q(16 - 16 * delta, n) * inv * (1 - x) * sum;
  return make_exact(n, m, std::move(conv), std::move(ach));
}

BoundResult depolarizing_bounds_blocks(std::size_t n, const Rational& delta, std::size_t m) {
  check_probability(delta, "delta");
  if (m > 2 * n) throw DomainError("m-at-most-2n", "depolarizing_bounds: m must not exceed 2n");
  const mpz_class big_m = pow2z(m);
  const bool heavy_first = delta > Rational(3, 4);
  Rational conv = 0;
  Rational extra = 0;  // sum of p * (J - 1) over J <= 2^m
  mpz_class lo = 0;
  for (std::size_t step = 0; step <= n; ++step) {
    const std::size_t i = heavy_first ? n - step : step;
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), 3, i);
    count *= choose(n, i);
    const Rational each = pow_q(delta / 3, i) * pow_q(1 - delta, n - i);
    const mpz_class hi = lo + count;
    if (lo >= big_m) {
      conv += each * Rational(count);
    } else if (hi <= big_m) {
      // J - 1 runs over lo .. hi-1
      extra += each * Rational(count * (lo + hi - 1), 2);
    } else {
      const mpz_class inside = big_m - lo;
      extra += each * Rational(inside * (lo + big_m - 1), 2);
      conv += each * Rational(hi - big_m);
    }
    lo = hi;
  }
  Rational ach = conv + extra / Rational(big_m);
  return make_exact(n, m, std::move(conv), std::move(ach));
}

BoundResult erasure_bounds_float(std::size_t n, double delta, std::size_t m) {
  if (!(delta >= 0 && delta <= 1)) throw DomainError("probability-in-[0,1]", "delta must lie in [0, 1]");
  if (m > 2 * n) throw DomainError("m-at-most-2n", "erasure_bounds: m must not exceed 2n");
  const auto lf = log_factorials(n);
  const double ln2 = std::numbers::ln2;
  const double md = static_cast<double>(m);
  KahanSum conv, extra;
  for (std::size_t w = 0; w <= n; ++w) {
    const double lb = log_binom_pmf(lf, n, w, delta);
    if (std::isinf(lb)) continue;
    const double wd = static_cast<double>(w);
    if (2 * w > m) {
      const double tail = -std::expm1((md - 2 * wd) * ln2);  // 1 - 2^{m-2w}
      conv.add(std::exp(lb) * tail);
      // (2^m - 1) 2^{-2w-1}
      extra.add(std::exp(lb + (md - 2 * wd - 1) * ln2) * -std::expm1(-md * ln2));
    } else if (w > 0) {
      // (4^w - 1) / 2^{m+1}
      extra.add(std::exp(lb + (2 * wd - md - 1) * ln2) * -std::expm1(-2 * wd * ln2));
    }
  }
  BoundResult b;
  b.n = n;
  b.m = m;
  b.p_conv = conv.value();
  b.p_ach = conv.value() + extra.value();
  return b;
}

BoundResult depolarizing_bounds_float(std::size_t n, double delta, std::size_t m) {
  if (!(delta >= 0 && delta <= 1)) throw DomainError("probability-in-[0,1]", "delta must lie in [0, 1]");
  if (m > 2 * n) throw DomainError("m-at-most-2n", "depolarizing_bounds: m must not exceed 2n");
  const auto lf = log_factorials(n);
  const mpz_class big_m = pow2z(m);
  const bool heavy_first = delta > 0.75;
  KahanSum conv, extra;
  mpz_class lo = 0;
  for (std::size_t step = 0; step <= n; ++step) {
    const std::size_t i = heavy_first ? n - step : step;
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), 3, i);
    count *= choose(n, i);
    const mpz_class hi = lo + count;
    // Probability mass of the whole weight-i block.
    const double lp = log_binom_pmf(lf, n, i, delta);
    const double block = std::isinf(lp) ? 0.0 : std::exp(lp);
    if (lo >= big_m) {
      conv.add(block);
    } else if (hi <= big_m) {
      extra.add(block * to_double(Rational(lo + hi - 1, 2 * big_m)));
    } else {
      const mpz_class inside = big_m - lo;
      extra.add(block * to_double(Rational(inside * (lo + big_m - 1), 2 * count * big_m)));
      conv.add(block * to_double(Rational(hi - big_m, count)));
    }
    lo = hi;
  }
  BoundResult b;
  b.n = n;
  b.m = m;
  b.p_conv = conv.value();
  b.p_ach = conv.value() + extra.value();
  return b;
}

Rational j_cdf_depolarizing(std::size_t n, const Rational& delta, const mpz_class& j) {
  check_probability(delta, "delta");
  const mpz_class total = pow2z(2 * n);
  if (j < 0 || j > total) throw DomainError("j-in-[0,4^n]", "j_cdf_depolarizing: j must lie in [0, 4^n]");
  const Rational x = binom_cdf_inv_pl(n, Rational(3, 4), Rational(j, total));
  return binom_cdf_ext(n, delta, x);
}

// ---- rates --------------------------------------------------------------------------

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Erasure:
      return "erasure";
    case ChannelKind::Depolarizing:
      return "depolarizing";
    case ChannelKind::Table:
      return "generic";
  }
  return "unknown";
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "erasure") return ChannelKind::Erasure;
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  if (name == "generic" || name == "table") return ChannelKind::Table;
  throw ParseError("unknown channel '" + name + "'");
}

BoundResult channel_bounds(const ChannelSpec& ch, std::size_t n, std::size_t m, bool exact) {
  switch (ch.kind) {
    case ChannelKind::Erasure:
      return exact ? erasure_bounds(n, ch.delta, m) : erasure_bounds_float(n, to_double(ch.delta), m);
    case ChannelKind::Depolarizing:
      return exact ? depolarizing_bounds(n, ch.delta, m) : depolarizing_bounds_float(n, to_double(ch.delta), m);
    case ChannelKind::Table:
      if (ch.table.n != n) throw DimensionError("distribution table has a different n");
      return general_bounds(ch.table, m);
  }
  throw DomainError("channel", "unknown channel kind");
}

RateResult rate_search(const ChannelSpec& ch, std::size_t n, const Rational& epsilon, bool exact) {
  if (n == 0) throw DimensionError("rate_search: n must be positive");
  RateResult res;
  res.n = n;
  res.epsilon = to_double(epsilon);
  std::optional<SortedProfile> profile;
  if (ch.kind == ChannelKind::Table) {
    if (ch.table.n != n) throw DimensionError("distribution table has a different n");
    ch.table.validate();
    profile = sorted_profile(ch.table);
  }
  for (std::size_t m = n + 1; m-- > 0;) {
    const BoundResult b = profile ? general_bounds(*profile, n, m) : channel_bounds(ch, n, m, exact);
    const bool ach_ok = b.exact ? b.p_ach_exact <= epsilon : b.p_ach <= res.epsilon;
    const bool conv_bad = b.exact ? b.p_conv_exact > epsilon : b.p_conv > res.epsilon;
    if (ach_ok) {
      res.ach_found = true;
      res.m_ach = m;
      res.r_ach = b.rate();
    }
    if (conv_bad && !res.conv_found) {
      res.conv_found = true;
      res.m_conv = m;
      res.r_conv = b.rate();
    }
  }
  return res;
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double asymptotic_rate(ChannelKind kind, std::size_t n, double delta, double epsilon) {
  if (!(delta > 0 && delta < 1)) throw DomainError("delta-in-(0,1)", "asymptotic_rate: delta must lie in (0, 1)");
  if (!(epsilon > 0 && epsilon < 1)) throw DomainError("epsilon-in-(0,1)", "asymptotic_rate: epsilon must lie in (0, 1)");
  if (n == 0) throw DimensionError("asymptotic_rate: n must be positive");
  const double nd = static_cast<double>(n);
  const double z = normal_cdf_inv(epsilon);
  switch (kind) {
    case ChannelKind::Erasure:
      return 1 - 2 * delta + 2 * z * std::sqrt(delta * (1 - delta)) / std::sqrt(nd);
    case ChannelKind::Depolarizing:
      return 1 - binary_entropy(delta) - delta * std::log2(3.0) -
             std::sqrt(delta * (1 - delta) / nd) * z * std::log2(delta / (3 * (1 - delta))) + std::log2(nd) / (2 * nd);
    case ChannelKind::Table:
      break;
  }
  throw DomainError("channel", "asymptotic_rate is defined for erasure and depolarizing channels");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_cdf_inv(double y) {
  if (!(y > 0 && y < 1)) throw DomainError("y-in-(0,1)", "normal_cdf_inv: argument must lie in (0, 1)");
  // Acklam's rational approximation, then Halley steps against erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (y < p_low) {
    double q = std::sqrt(-2 * std::log(y));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (y <= 1 - p_low) {
    double q = y - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log1p(-y));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  for (int step = 0; step < 2; ++step) {
    double e = normal_cdf(x) - y;
    double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
    x -= u / (1 + x * u / 2);
  }
  return x;
}

}  // namespace gf2sym
