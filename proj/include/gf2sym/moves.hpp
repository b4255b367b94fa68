#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gf2sym/matrix.hpp"

// Index conventions: all indices are 0-based. For a 2n-dimensional symplectic
// space the reversal of index i is 2n-1-i and the qubit of index i is
// min(i, 2n-1-i), so qubit q owns coordinates q and 2n-1-q.
namespace gf2sym {

constexpr std::size_t mirror_index(std::size_t i, std::size_t n2) { return n2 - 1 - i; }
constexpr std::size_t qubit_of(std::size_t i, std::size_t n2) { return i < n2 - 1 - i ? i : n2 - 1 - i; }

/// Subset of the strictly-below-diagonal pairs {(i, j) : i > j} of an n x n
/// index square.
class TransitiveSet {
 public:
  TransitiveSet() = default;
  explicit TransitiveSet(std::size_t n) : n_(n), bits_(n, n) {}

  /// Every pair below the diagonal.
  static TransitiveSet all_pairs(std::size_t n);

  std::size_t size() const { return n_; }
  bool contains(std::size_t i, std::size_t j) const { return i < n_ && j < n_ && bits_.get(i, j); }
  void insert(std::size_t i, std::size_t j);
  std::size_t count() const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  bool is_transitive() const;
  /// Meaningful for even n: (i, j) in T iff (n-1-j, n-1-i) in T.
  bool is_reversal_closed() const;
  bool is_subset_of(const TransitiveSet& other) const;

  TransitiveSet reversed() const;
  TransitiveSet united(const TransitiveSet& other) const;

  friend bool operator==(const TransitiveSet&, const TransitiveSet&) = default;

  const Gf2Matrix& bits() const { return bits_; }

 private:
  std::size_t n_ = 0;
  Gf2Matrix bits_;
};

struct TsetValidation {
  bool transitive = false;
  bool reversal_closed = false;
};

TsetValidation tset_validate(const TransitiveSet& t);

enum class Mode { Unrestricted, Stabilizer, Symplectic };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Pivot positions (alpha[k], beta[k]) of a canonical form. In symplectic
/// mode alpha is implicitly 0..n-1 and `rows == cols == 2n`.
struct PivotProfile {
  Mode mode = Mode::Unrestricted;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> alpha;
  std::vector<std::size_t> beta;

  std::size_t rank() const { return beta.size(); }
  /// Throws DomainError naming the first violated profile invariant.
  void validate() const;

  friend bool operator==(const PivotProfile&, const PivotProfile&) = default;
};

bool is_increasing(const std::vector<std::size_t>& alpha);
bool is_injective(const std::vector<std::size_t>& beta);
bool is_qubit_injective(const std::vector<std::size_t>& beta, std::size_t n2);

/// Pairs (i, j), j in Im(alpha), i > j.
TransitiveSet tset_tl(const std::vector<std::size_t>& alpha, std::size_t m);
/// Pairs (beta[k], j), j < beta[k], j not in {beta[0..k)}.
TransitiveSet tset_tr(const std::vector<std::size_t>& beta, std::size_t n);
/// Pairs (beta[k], j), j < beta[k], qubit(j) not among the qubits of beta[0..k).
TransitiveSet tset_tm(const std::vector<std::size_t>& beta, std::size_t n2);
/// tset_tm together with its reversal; transitive and reversal-closed.
TransitiveSet tset_ttcr(const std::vector<std::size_t>& beta, std::size_t n2);

/// Inversions {(i, j) : i > j, pi(i) < pi(j)} and non-inversions of a permutation.
TransitiveSet tset_inversions(const std::vector<std::size_t>& perm);
TransitiveSet tset_noninversions(const std::vector<std::size_t>& perm);

// ---- dense generators --------------------------------------------------------

/// I + e_i e_jᵀ (adds row j to row i from the left).
Gf2Matrix gaussian_move(std::size_t n, std::size_t i, std::size_t j);
/// Symplectic image of a Clifford Gaussian move on n qubits (matrix side 2n).
Gf2Matrix symplectic_move(std::size_t n, std::size_t i, std::size_t j);
/// Whole-column move I + v e_iᵀ + Λe_i vᵀΛ + v_{ī} e_{ī} e_iᵀ (requires v_i = 0).
Gf2Matrix symplectic_column_move(std::size_t n, const Gf2Vector& v, std::size_t i);
/// The same operator assembled as a product of single symplectic moves.
Gf2Matrix symplectic_column_move_as_product(std::size_t n, const Gf2Vector& v, std::size_t i);

bool is_symplectic(const Gf2Matrix& a);
bool is_stabilizer_pcm(const Gf2Matrix& a);

/// Unit lower triangular with off-diagonal support inside T.
bool in_L(const Gf2Matrix& a, const TransitiveSet& t);
/// in_L and symplectic.
bool in_B(const Gf2Matrix& a, const TransitiveSet& t);

// ---- sparse appliers ---------------------------------------------------------
// Each costs O(rows * words) and never materializes the move.

/// M <- (I + u e_aᵀ) M : rows in supp(u) gain row a.
void apply_gauss_column_left(Gf2Matrix& m, const Gf2Vector& u, std::size_t a);
/// M <- (I + e_a vᵀ) M : row a gains the rows in supp(v).
void apply_gauss_row_left(Gf2Matrix& m, std::size_t a, const Gf2Vector& v);
/// M <- M (I + e_a vᵀ) : every row with bit a gains v.
void apply_gauss_row_right(Gf2Matrix& m, std::size_t a, const Gf2Vector& v);

/// M <- s(v, i) M.
void apply_symp_column_left(Gf2Matrix& m, const Gf2Vector& v, std::size_t i);
/// M <- s(v, i)ᵀ M.
void apply_symp_row_left(Gf2Matrix& m, std::size_t i, const Gf2Vector& v);
/// M <- M s(v, i)ᵀ.
void apply_symp_row_right(Gf2Matrix& m, std::size_t i, const Gf2Vector& v);

}  // namespace gf2sym
