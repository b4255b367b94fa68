#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gf2sym/matrix.hpp"

namespace gf2sym {

using Rational = mpq_class;

// ---- binomial machinery ----------------------------------------------------------

/// P(Binomial(n, p) <= i); 0 for i < 0 and 1 for i >= n.
Rational binom_cdf(std::size_t n, const Rational& p, long i);
/// All n+1 values F(n, p, 0..n).
std::vector<Rational> binom_cdf_table(std::size_t n, const Rational& p);
/// Piecewise-linear extension through (-1, 0), (0, F(0)), ..., (n, 1).
Rational binom_cdf_ext(std::size_t n, const Rational& p, const Rational& x);
/// Inverse of binom_cdf_ext on [0, 1] (requires 0 < p < 1).
Rational binom_cdf_inv_pl(std::size_t n, const Rational& p, const Rational& y);

/// Nearest double (mpq_get_d truncates instead).
double to_double(const Rational& q);

/// Largest integer <= x.
mpz_class floor_q(const Rational& x);

// ---- distributions ----------------------------------------------------------------

/// Joint distribution of a Pauli error u (2n bits, qubit q owning
/// coordinates q and 2n-1-q) and a side-information label v.
struct DistEntry {
  Gf2Vector u;
  std::string v;
  Rational p;
};

struct DistTable {
  std::size_t n = 0;
  std::vector<DistEntry> entries;

  /// Throws DomainError("dist-sums-to-one" / "dist-distinct-u" / ...).
  void validate() const;
};

DistTable erasure_table(std::size_t n, const Rational& delta);
DistTable depolarizing_table(std::size_t n, const Rational& delta);
/// U uniform over all 4^n vectors, empty side information.
DistTable uniform_table(std::size_t n);

/// Per label, entries sorted by decreasing p with ascending lexicographic u
/// as tie-break; the position inside the group is J - 1.
struct SortedProfile {
  std::vector<std::string> labels;
  std::vector<std::vector<DistEntry>> groups;
};

SortedProfile sorted_profile(const DistTable& d);

// ---- bounds -----------------------------------------------------------------------

struct BoundResult {
  std::size_t n = 0;
  std::size_t m = 0;
  bool exact = false;
  Rational p_conv_exact;  // meaningful when exact
  Rational p_ach_exact;
  double p_conv = 0;
  double p_ach = 0;

  /// (n - m) / n
  double rate() const { return n == 0 ? 0.0 : (static_cast<double>(n) - static_cast<double>(m)) / static_cast<double>(n); }
};

BoundResult general_bounds(const DistTable& d, std::size_t m);
BoundResult general_bounds(const SortedProfile& s, std::size_t n, std::size_t m);

/// Closed forms of the erasure theorem (exact).
BoundResult erasure_bounds(std::size_t n, const Rational& delta, std::size_t m);
/// Closed forms of the depolarizing theorem (exact). For delta > 3/4 the
/// likelihood order reverses and for delta = 1 the closed form divides by
/// zero; both cases use depolarizing_bounds_blocks instead.
BoundResult depolarizing_bounds(std::size_t n, const Rational& delta, std::size_t m);
/// The same quantities summed block by block over error weights (exact).
BoundResult depolarizing_bounds_blocks(std::size_t n, const Rational& delta, std::size_t m);

/// Log-domain floating-point evaluation for large n.
BoundResult erasure_bounds_float(std::size_t n, double delta, std::size_t m);
BoundResult depolarizing_bounds_float(std::size_t n, double delta, std::size_t m);

/// P(J <= j) for n depolarizing channels, 0 <= j <= 4^n.
Rational j_cdf_depolarizing(std::size_t n, const Rational& delta, const mpz_class& j);

// ---- rates --------------------------------------------------------------------------

enum class ChannelKind { Erasure, Depolarizing, Table };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::Erasure;
  Rational delta;
  DistTable table;  // ChannelKind::Table only
};

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

/// Bounds at one m; `exact` selects GMP rationals over the float path.
BoundResult channel_bounds(const ChannelSpec& ch, std::size_t n, std::size_t m, bool exact);

struct RateResult {
  std::size_t n = 0;
  double epsilon = 0;
  /// max (n-m)/n with P_ach <= eps; 0 and ach_found=false when none.
  double r_ach = 0;
  std::size_t m_ach = 0;
  bool ach_found = false;
  /// min (n-m)/n with P_conv > eps; 1 and conv_found=false when none.
  double r_conv = 1;
  std::size_t m_conv = 0;
  bool conv_found = false;
};

/// Linear scan over m = n, n-1, ..., 0. The exact path compares against
/// epsilon as a rational.
RateResult rate_search(const ChannelSpec& ch, std::size_t n, const Rational& epsilon, bool exact);

double asymptotic_rate(ChannelKind kind, std::size_t n, double delta, double epsilon);

double normal_cdf(double x);
double normal_cdf_inv(double y);
double binary_entropy(double p);

}  // namespace gf2sym
