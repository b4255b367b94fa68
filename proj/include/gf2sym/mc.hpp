#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "gf2sym/bounds.hpp"
#include "gf2sym/matrix.hpp"
#include "gf2sym/rng.hpp"

namespace gf2sym {

/// Error vector and side-information label. Erasure labels are n-character
/// '0'/'1' strings marking erased qubits; depolarizing labels are empty.
struct PauliSample {
  Gf2Vector u;
  std::string v;
};

PauliSample sample_pauli_error(const ChannelSpec& ch, std::size_t n, Philox& rng);

/// Candidate errors of positive probability for one label, in decreasing
/// likelihood with ties broken by ascending lexicographic u; the same order
/// general_bounds sorts by.
class CandidateOrder {
 public:
  virtual ~CandidateOrder() = default;
  /// Calls visit on successive candidates until it returns false.
  virtual void for_each(const std::string& v, const std::function<bool(const Gf2Vector&)>& visit) const = 0;
};

std::unique_ptr<CandidateOrder> make_candidate_order(const ChannelSpec& ch, std::size_t n);

/// First m rows of C u.
Gf2Vector syndrome(const Gf2Matrix& c, std::size_t m, const Gf2Vector& u);

/// The first candidate whose syndrome equals s, trying at most `cap`
/// candidates (0 = unlimited); nullopt when the cap is reached.
std::optional<Gf2Vector> decode_guess(const Gf2Vector& s, const std::string& v, const CandidateOrder& order,
                                      const Gf2Matrix& c, std::size_t m, std::size_t cap = 0);

struct TrialConfig {
  ChannelSpec channel;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool fresh_matrix = true;
  /// Disable the 2^m + 1 candidate cap.
  bool full_search = false;
  unsigned threads = 1;
};

struct McResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  /// Trials stopped by the cap; already included in failures.
  std::uint64_t unresolved = 0;
  double p_hat = 0;
  double sigma = 0;
  double ci_low = 0;
  double ci_high = 0;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// Trial t draws from stream t of the seed (the fixed matrix, if any, from
/// the last stream), so results do not depend on the thread count.
McResult estimate_error(const TrialConfig& cfg);

}  // namespace gf2sym
