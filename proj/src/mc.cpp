#include "gf2sym/mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "gf2sym/errors.hpp"
#include "gf2sym/moves.hpp"
#include "gf2sym/sample.hpp"

namespace gf2sym {

namespace {

constexpr double kZ95 = 1.959963984540054;

class ErasureOrder final : public CandidateOrder {
 public:
  explicit ErasureOrder(std::size_t n) : n_(n) {}

  // Vectors supported on the erased coordinates, in lexicographic order:
  // a binary counter whose most significant bit is the lowest coordinate.
  void for_each(const std::string& v, const std::function<bool(const Gf2Vector&)>& visit) const override {
    const std::size_t n2 = 2 * n_;
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < n2; ++i) {
      if (v[qubit_of(i, n2)] == '1') coords.push_back(i);
    }
    const std::size_t k = coords.size();
    if (k >= 64) throw DomainError("erasure-count", "too many erased qubits to enumerate");
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
      Gf2Vector u(n2);
      for (std::size_t b = 0; b < k; ++b) u.set(coords[b], (t >> (k - 1 - b)) & 1U);
      if (!visit(u)) return;
    }
  }

 private:
  std::size_t n_;
};

class DepolarizingOrder final : public CandidateOrder {
 public:
  DepolarizingOrder(std::size_t n, const Rational& delta) : n_(n) {
    // Weights of probability zero (all but 0 at delta = 0, all but n at
    // delta = 1) are left out.
    if (delta == 0) {
      weights_.push_back(0);
    } else if (delta == 1) {
      weights_.push_back(static_cast<long>(n));
    } else if (delta < Rational(3, 4)) {
      for (std::size_t w = 0; w <= n; ++w) weights_.push_back(static_cast<long>(w));
    } else if (delta > Rational(3, 4)) {
      for (std::size_t w = n + 1; w-- > 0;) weights_.push_back(static_cast<long>(w));
    } else {
      weights_.push_back(-1);  // all vectors equally likely: plain lexicographic order
    }
  }

  void for_each(const std::string&, const std::function<bool(const Gf2Vector&)>& visit) const override {
    Gf2Vector u(2 * n_);
    for (long w : weights_) {
      if (!dfs(u, 0, 0, w, visit)) return;
    }
  }

 private:
  // Assigns coordinate pos (0-based, lexicographic significance), 0 before 1.
  // `active` counts qubits already known to be non-identity.
  bool dfs(Gf2Vector& u, std::size_t pos, std::size_t active, long target,
           const std::function<bool(const Gf2Vector&)>& visit) const {
    const std::size_t n2 = 2 * n_;
    if (pos == n2) return target >= 0 && static_cast<long>(active) != target ? true : visit(u);
    if (target >= 0) {
      // Qubits that may still turn non-identity: unvisited ones, plus visited
      // ones with a zero first coordinate whose second coordinate is open.
      std::size_t open = 0;
      if (pos < n_) {
        open = n_ - pos;
        for (std::size_t q = 0; q < pos; ++q) open += !u.get(q);
      } else {
        for (std::size_t p = pos; p < n2; ++p) open += !u.get(mirror_index(p, n2));
      }
      if (static_cast<long>(active) > target || static_cast<long>(active + open) < target) return true;
    }
    for (int bit = 0; bit < 2; ++bit) {
      u.set(pos, bit != 0);
      std::size_t next = active;
      if (bit != 0 && (pos < n_ || !u.get(mirror_index(pos, n2)))) ++next;
      if (!dfs(u, pos + 1, next, target, visit)) {
        u.set(pos, false);
        return false;
      }
    }
    u.set(pos, false);
    return true;
  }

  std::size_t n_;
  std::vector<long> weights_;
};

class TableOrder final : public CandidateOrder {
 public:
  explicit TableOrder(const DistTable& d) : profile_(sorted_profile(d)) {}

  void for_each(const std::string& v, const std::function<bool(const Gf2Vector&)>& visit) const override {
    auto it = std::find(profile_.labels.begin(), profile_.labels.end(), v);
    if (it == profile_.labels.end()) return;
    for (const auto& e : profile_.groups[static_cast<std::size_t>(it - profile_.labels.begin())]) {
      if (e.p == 0) return;
      if (!visit(e.u)) return;
    }
  }

 private:
  SortedProfile profile_;
};

}  // namespace

PauliSample sample_pauli_error(const ChannelSpec& ch, std::size_t n, Philox& rng) {
  const std::size_t n2 = 2 * n;
  PauliSample s{Gf2Vector(n2), {}};
  switch (ch.kind) {
    case ChannelKind::Erasure: {
      // delta = a / b exactly: a qubit is erased when a uniform draw below b is < a.
      const mpz_class& a = ch.delta.get_num();
      const mpz_class& b = ch.delta.get_den();
      s.v.assign(n, '0');
      for (std::size_t q = 0; q < n; ++q) {
        if (random_below(b, rng) < a) {
          s.v[q] = '1';
          s.u.set(q, rng.next_bit());
          s.u.set(mirror_index(q, n2), rng.next_bit());
        }
      }
      return s;
    }
    case ChannelKind::Depolarizing: {
      const mpz_class& a = ch.delta.get_num();
      const mpz_class& b = ch.delta.get_den();
      const mpz_class b3 = 3 * b;
      for (std::size_t q = 0; q < n; ++q) {
        // Outcomes below 3a pick X, Z or XZ with probability a / b each.
        mpz_class x = random_below(b3, rng);
        if (x < a) {
          s.u.set(q, true);
        } else if (x < 2 * a) {
          s.u.set(mirror_index(q, n2), true);
        } else if (x < 3 * a) {
          s.u.set(q, true);
          s.u.set(mirror_index(q, n2), true);
        }
      }
      return s;
    }
    case ChannelKind::Table: {
      mpz_class den = 1;
      for (const auto& e : ch.table.entries) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.p.get_den_mpz_t());
      mpz_class x = random_below(den, rng);
      for (const auto& e : ch.table.entries) {
        mpz_class w = e.p.get_num() * (den / e.p.get_den());
        if (x < w) return {e.u, e.v};
        x -= w;
      }
      throw DomainError("dist-sums-to-one", "probabilities must sum to exactly 1");
    }
  }
  return s;
}

std::unique_ptr<CandidateOrder> make_candidate_order(const ChannelSpec& ch, std::size_t n) {
  switch (ch.kind) {
    case ChannelKind::Erasure:
      return std::make_unique<ErasureOrder>(n);
    case ChannelKind::Depolarizing:
      return std::make_unique<DepolarizingOrder>(n, ch.delta);
    case ChannelKind::Table:
      return std::make_unique<TableOrder>(ch.table);
  }
  throw DomainError("channel", "unknown channel kind");
}

Gf2Vector syndrome(const Gf2Matrix& c, std::size_t m, const Gf2Vector& u) {
  if (u.size() != c.cols() || m > c.rows()) throw DimensionError("syndrome: shape mismatch");
  Gf2Vector s(m);
  for (std::size_t i = 0; i < m; ++i) s.set(i, kernels::and_parity(c.row_ptr(i), u.words().data(), c.stride()));
  return s;
}

std::optional<Gf2Vector> decode_guess(const Gf2Vector& s, const std::string& v, const CandidateOrder& order,
                                      const Gf2Matrix& c, std::size_t m, std::size_t cap) {
  std::optional<Gf2Vector> found;
  std::size_t tried = 0;
  order.for_each(v, [&](const Gf2Vector& cand) {
    if (cap != 0 && tried == cap) return false;
    ++tried;
    if (syndrome(c, m, cand) == s) {
      found = cand;
      return false;
    }
    return true;
  });
  return found;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = kZ95 * kZ95;
  const double denom = 1 + z2 / nt;
  const double centre = (p + z2 / (2 * nt)) / denom;
  const double half = kZ95 * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

McResult estimate_error(const TrialConfig& cfg) {
  if (cfg.trials == 0) throw DomainError("trials-positive", "estimate_error: trials must be positive");
  if (cfg.m > 2 * cfg.n) throw DomainError("m-at-most-2n", "estimate_error: m must not exceed 2n");
  const auto order = make_candidate_order(cfg.channel, cfg.n);
  std::size_t cap = 0;
  if (!cfg.full_search) {
    cap = cfg.m + 1 < 64 ? (std::size_t{1} << cfg.m) + 1 : 0;
  }
  std::optional<Gf2Matrix> fixed;
  if (!cfg.fresh_matrix) {
    Philox rng(cfg.seed, ~std::uint64_t{0});
    fixed = sample_symplectic(cfg.n, rng);
  }

  const unsigned workers = std::max(1U, cfg.threads);
  std::vector<std::uint64_t> fails(workers, 0), unresolved(workers, 0);
  auto run = [&](unsigned w) {
    for (std::uint64_t t = w; t < cfg.trials; t += workers) {
      Philox rng(cfg.seed, t);
      const Gf2Matrix c = fixed ? *fixed : sample_symplectic(cfg.n, rng);
      const PauliSample e = sample_pauli_error(cfg.channel, cfg.n, rng);
      const Gf2Vector s = syndrome(c, cfg.m, e.u);
      auto guess = decode_guess(s, e.v, *order, c, cfg.m, cap);
      if (!guess) {
        ++fails[w];
        ++unresolved[w];
      } else if (*guess != e.u) {
        ++fails[w];
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  McResult r;
  r.trials = cfg.trials;
  for (unsigned w = 0; w < workers; ++w) {
    r.failures += fails[w];
    r.unresolved += unresolved[w];
  }
  const double nt = static_cast<double>(r.trials);
  r.p_hat = static_cast<double>(r.failures) / nt;
  r.sigma = std::sqrt(r.p_hat * (1 - r.p_hat) / nt);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.failures, r.trials);
  return r;
}

}  // namespace gf2sym
