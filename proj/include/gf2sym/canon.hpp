#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gf2sym/matrix.hpp"
#include "gf2sym/moves.hpp"

namespace gf2sym {

/// Canonical decomposition A = L · Π · R.
///
/// Unrestricted:  L ∈ L(m, T_L(α)),   R ∈ L(n, T_R(β)).
/// Stabilizer:    L ∈ L(m, T_L(α)),   R ∈ B(2n, T_tcr(β)).
/// Symplectic:    L ∈ B(2n, P(2n)),   R ∈ B(2n, T_tcr(β)),  Π = Π^sym(β).
struct Quintuple {
  PivotProfile profile;
  Gf2Matrix L;
  Gf2Matrix R;

  Mode mode() const { return profile.mode; }
  std::size_t rank() const { return profile.rank(); }

  friend bool operator==(const Quintuple&, const Quintuple&) = default;
};

/// Called after every elimination step with the partially reduced matrix and
/// the pivots found so far.
using StepHook = std::function<void(const Gf2Matrix& partial, const PivotProfile& so_far)>;

/// Π(α, β), or Π^sym(β) in symplectic mode.
Gf2Matrix pivot_matrix(const PivotProfile& profile);

/// Gaussian elimination with pivots searched "left and down": rows in
/// order, and inside a row from the last column towards the first.
Quintuple decompose_unrestricted(const Gf2Matrix& a, const StepHook& hook = {});
/// Throws DomainError("stabilizer-pcm") when A Λ Aᵀ != 0.
Quintuple decompose_stabilizer(const Gf2Matrix& a, const StepHook& hook = {});
/// Throws DomainError("symplectic") when Aᵀ Λ A != Λ.
Quintuple decompose_symplectic(const Gf2Matrix& a, const StepHook& hook = {});
/// Dispatches on mode.
Quintuple decompose(const Gf2Matrix& a, Mode mode);

/// Name of the first violated quintuple invariant, or nullopt.
std::optional<std::string> quintuple_violation(const Quintuple& q);

/// L · Π · R after checking every quintuple invariant; a violation throws
/// DomainError carrying the invariant name.
Gf2Matrix reconstruct(const Quintuple& q);

/// Column vectors v_k (k < n) with B = s(v_0, 0) s(v_1, 1) … s(v_{n-1}, n-1);
/// v_k holds column k of B restricted to rows k+1 … 2n-1-k.
std::vector<Gf2Vector> borel_expand(const Gf2Matrix& b);
/// Inverse of borel_expand: the ordered product of whole-column moves.
Gf2Matrix borel_compose(const std::vector<Gf2Vector>& vs);

// ---- gates ---------------------------------------------------------------------

enum class GateKind { CNOT, CZ, PHASE, H_PHASE_H, HADAMARD, SWAP, H_CZ_H };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

/// CNOT qubits are {control, target}; the others list the qubits acted on.
struct Gate {
  GateKind kind;
  std::vector<std::size_t> qubits;

  friend bool operator==(const Gate&, const Gate&) = default;
};

using GateList = std::vector<Gate>;

/// Gate whose symplectic image is symplectic_move(n, i, j).
Gate gate_from_move(std::size_t n, std::size_t i, std::size_t j);
/// 2n x 2n symplectic image of a gate.
Gf2Matrix gate_image(std::size_t n, const Gate& gate);
/// g_1 · g_2 · … · g_k over the images, in list order.
Gf2Matrix gate_product(std::size_t n, const GateList& gates);

/// Gates for L (borel_expand order), then the Π^sym(β) block (swaps then
/// Hadamards), then gates for R. The product of the images is L Π^sym(β) R.
GateList to_gates(const std::vector<std::size_t>& beta, const Gf2Matrix& l, const Gf2Matrix& r);
GateList to_gates(const Quintuple& q);

}  // namespace gf2sym
