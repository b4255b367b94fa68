#include "gf2sym/canon.hpp"

#include <utility>

#include "gf2sym/errors.hpp"

namespace gf2sym {

Gf2Matrix pivot_matrix(const PivotProfile& profile) {
  Gf2Matrix p(profile.rows, profile.cols);
  if (profile.mode == Mode::Symplectic) {
    const std::size_t n2 = profile.cols;
    for (std::size_t k = 0; k < profile.beta.size(); ++k) {
      p.set(k, profile.beta[k], true);
      p.set(mirror_index(k, n2), mirror_index(profile.beta[k], n2), true);
    }
  } else {
    for (std::size_t k = 0; k < profile.beta.size(); ++k) p.set(profile.alpha[k], profile.beta[k], true);
  }
  return p;
}

namespace {

// Column c of w with the pivot-row bit cleared.
Gf2Vector column_below_pivot(const Gf2Matrix& w, std::size_t c, std::size_t pivot_row) {
  Gf2Vector u = w.column(c);
  u.set(pivot_row, false);
  return u;
}

Gf2Vector row_left_of_pivot(const Gf2Matrix& w, std::size_t r, std::size_t pivot_col) {
  Gf2Vector v = w.row(r);
  v.set(pivot_col, false);
  return v;
}

}  // namespace

Quintuple decompose_unrestricted(const Gf2Matrix& a, const StepHook& hook) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Gf2Matrix w = a;
  Gf2Matrix lt = Gf2Matrix::identity(m);  // Lᵀ, grown by row moves
  Gf2Matrix r = Gf2Matrix::identity(n);
  PivotProfile profile{Mode::Unrestricted, m, n, {}, {}};

  for (std::size_t row = 0; row < m; ++row) {
    const std::size_t col = w.last_set_in_row(row);
    if (col == n) continue;
    Gf2Vector u = column_below_pivot(w, col, row);
    Gf2Vector v = row_left_of_pivot(w, row, col);
    apply_gauss_column_left(w, u, row);
    apply_gauss_row_right(w, col, v);
    apply_gauss_row_left(lt, row, u);
    apply_gauss_row_left(r, col, v);
    profile.alpha.push_back(row);
    profile.beta.push_back(col);
    if (hook) hook(w, profile);
  }
  return {std::move(profile), lt.transposed(), std::move(r)};
}

Quintuple decompose_stabilizer(const Gf2Matrix& a, const StepHook& hook) {
  if (a.cols() % 2 != 0) throw DimensionError("decompose_stabilizer: column count must be even");
  if (!is_stabilizer_pcm(a)) {
    throw DomainError("stabilizer-pcm", "input is not a stabilizer parity check matrix (A Λ Aᵀ != 0)");
  }
  const std::size_t m = a.rows();
  const std::size_t n2 = a.cols();
  Gf2Matrix w = a;
  Gf2Matrix lt = Gf2Matrix::identity(m);
  Gf2Matrix r = Gf2Matrix::identity(n2);
  PivotProfile profile{Mode::Stabilizer, m, n2, {}, {}};

  for (std::size_t row = 0; row < m; ++row) {
    const std::size_t col = w.last_set_in_row(row);
    if (col == n2) continue;
    Gf2Vector u = column_below_pivot(w, col, row);
    Gf2Vector v = row_left_of_pivot(w, row, col);
    apply_gauss_column_left(w, u, row);
    apply_symp_row_right(w, col, v);
    apply_gauss_row_left(lt, row, u);
    apply_symp_row_left(r, col, v);
    profile.alpha.push_back(row);
    profile.beta.push_back(col);
    if (hook) hook(w, profile);
  }
  return {std::move(profile), lt.transposed(), std::move(r)};
}

Quintuple decompose_symplectic(const Gf2Matrix& a, const StepHook& hook) {
  if (!a.is_square() || a.rows() % 2 != 0) throw DimensionError("decompose_symplectic: matrix must be 2n x 2n");
  if (!is_symplectic(a)) throw DomainError("symplectic", "input is not symplectic (Aᵀ Λ A != Λ)");
  const std::size_t n2 = a.rows();
  const std::size_t n = n2 / 2;
  Gf2Matrix w = a;
  Gf2Matrix lt = Gf2Matrix::identity(n2);
  Gf2Matrix r = Gf2Matrix::identity(n2);
  PivotProfile profile{Mode::Symplectic, n2, n2, {}, {}};
  profile.beta.reserve(n);

  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t col = w.last_set_in_row(row);
    Gf2Vector u = column_below_pivot(w, col, row);
    Gf2Vector v = row_left_of_pivot(w, row, col);
    apply_symp_column_left(w, u, row);
    apply_symp_row_right(w, col, v);
    apply_symp_row_left(lt, row, u);
    apply_symp_row_left(r, col, v);
    profile.beta.push_back(col);
    if (hook) hook(w, profile);
  }
  return {std::move(profile), lt.transposed(), std::move(r)};
}

Quintuple decompose(const Gf2Matrix& a, Mode mode) {
  switch (mode) {
    case Mode::Unrestricted:
      return decompose_unrestricted(a);
    case Mode::Stabilizer:
      return decompose_stabilizer(a);
    case Mode::Symplectic:
      return decompose_symplectic(a);
  }
  throw DomainError("mode", "unknown decomposition mode");
}

std::optional<std::string> quintuple_violation(const Quintuple& q) {
  const auto& p = q.profile;
  try {
    p.validate();
  } catch (const DomainError& e) {
    return e.invariant();
  }
  if (q.L.rows() != p.rows || !q.L.is_square()) return "L-shape";
  if (q.R.rows() != p.cols || !q.R.is_square()) return "R-shape";
  switch (p.mode) {
    case Mode::Unrestricted:
      if (!in_L(q.L, tset_tl(p.alpha, p.rows))) return "L-in-L(m,T_L(alpha))";
      if (!in_L(q.R, tset_tr(p.beta, p.cols))) return "R-in-L(n,T_R(beta))";
      break;
    case Mode::Stabilizer:
      if (p.rank() > p.cols / 2) return "rank-at-most-n";
      if (!in_L(q.L, tset_tl(p.alpha, p.rows))) return "L-in-L(m,T_L(alpha))";
      if (!in_B(q.R, tset_ttcr(p.beta, p.cols))) return "R-in-B(2n,T_tcr(beta))";
      break;
    case Mode::Symplectic:
      if (!in_B(q.L, TransitiveSet::all_pairs(p.rows))) return "L-in-B(2n,P(2n))";
      if (!in_B(q.R, tset_ttcr(p.beta, p.cols))) return "R-in-B(2n,T_tcr(beta))";
      break;
  }
  return std::nullopt;
}

Gf2Matrix reconstruct(const Quintuple& q) {
  if (auto bad = quintuple_violation(q)) {
    throw DomainError(*bad, "quintuple invariant violated: " + *bad);
  }
  return mul(q.L, mul(pivot_matrix(q.profile), q.R));
}

std::vector<Gf2Vector> borel_expand(const Gf2Matrix& b) {
  if (!b.is_square() || b.rows() % 2 != 0) throw DimensionError("borel_expand: matrix must be 2n x 2n");
  if (!in_B(b, TransitiveSet::all_pairs(b.rows()))) {
    throw DomainError("B(2n,P(2n))", "borel_expand: matrix is not unit lower triangular symplectic");
  }
  const std::size_t n2 = b.rows();
  const std::size_t n = n2 / 2;
  std::vector<Gf2Vector> vs;
  vs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Gf2Vector v(n2);
    for (std::size_t i = k + 1; i <= n2 - 1 - k; ++i) {
      if (b.get(i, k)) v.set(i, true);
    }
    vs.push_back(std::move(v));
  }
  return vs;
}

Gf2Matrix borel_compose(const std::vector<Gf2Vector>& vs) {
  const std::size_t n = vs.size();
  auto m = Gf2Matrix::identity(2 * n);
  for (std::size_t k = n; k-- > 0;) apply_symp_column_left(m, vs[k], k);
  return m;
}

// ---- gates ---------------------------------------------------------------------

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::CNOT:
      return "CNOT";
    case GateKind::CZ:
      return "CZ";
    case GateKind::PHASE:
      return "PHASE";
    case GateKind::H_PHASE_H:
      return "H_PHASE_H";
    case GateKind::HADAMARD:
      return "HADAMARD";
    case GateKind::SWAP:
      return "SWAP";
    case GateKind::H_CZ_H:
      return "H_CZ_H";
  }
  return "UNKNOWN";
}

GateKind gate_kind_from_string(const std::string& name) {
  for (auto k : {GateKind::CNOT, GateKind::CZ, GateKind::PHASE, GateKind::H_PHASE_H, GateKind::HADAMARD,
                 GateKind::SWAP, GateKind::H_CZ_H}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown gate name: " + name);
}

Gate gate_from_move(std::size_t n, std::size_t i, std::size_t j) {
  const std::size_t n2 = 2 * n;
  if (i >= n2 || j >= n2 || i == j) throw DimensionError("gate_from_move: invalid index pair");
  const std::size_t ib = mirror_index(i, n2);
  const std::size_t jb = mirror_index(j, n2);
  if (j == ib) {
    return i < n ? Gate{GateKind::H_PHASE_H, {i}} : Gate{GateKind::PHASE, {j}};
  }
  if (i < n && j < n) return {GateKind::CNOT, {j, i}};
  if (i >= n && j >= n) return {GateKind::CNOT, {ib, jb}};
  if (i >= n) return {GateKind::CZ, {ib, j}};
  return {GateKind::H_CZ_H, {i, jb}};
}

Gf2Matrix gate_image(std::size_t n, const Gate& gate) {
  const std::size_t n2 = 2 * n;
  auto need = [&](std::size_t count) {
    if (gate.qubits.size() != count) throw DomainError("gate-arity", "wrong number of qubits for " + to_string(gate.kind));
    for (auto q : gate.qubits) {
      if (q >= n) throw DimensionError("gate qubit out of range");
    }
    if (count == 2 && gate.qubits[0] == gate.qubits[1]) throw DomainError("gate-arity", "two-qubit gate on one qubit");
  };
  auto bar = [&](std::size_t q) { return mirror_index(q, n2); };
  switch (gate.kind) {
    case GateKind::CNOT:
      need(2);
      return symplectic_move(n, gate.qubits[1], gate.qubits[0]);
    case GateKind::CZ:
      need(2);
      return symplectic_move(n, bar(gate.qubits[0]), gate.qubits[1]);
    case GateKind::PHASE:
      need(1);
      return symplectic_move(n, bar(gate.qubits[0]), gate.qubits[0]);
    case GateKind::H_PHASE_H:
      need(1);
      return symplectic_move(n, gate.qubits[0], bar(gate.qubits[0]));
    case GateKind::H_CZ_H:
      need(2);
      return symplectic_move(n, gate.qubits[0], bar(gate.qubits[1]));
    case GateKind::HADAMARD: {
      need(1);
      auto h = Gf2Matrix::identity(n2);
      const std::size_t q = gate.qubits[0];
      h.set(q, q, false);
      h.set(bar(q), bar(q), false);
      h.set(q, bar(q), true);
      h.set(bar(q), q, true);
      return h;
    }
    case GateKind::SWAP: {
      need(2);
      auto s = Gf2Matrix::identity(n2);
      for (auto [x, y] : {std::pair{gate.qubits[0], gate.qubits[1]}, std::pair{bar(gate.qubits[0]), bar(gate.qubits[1])}}) {
        s.set(x, x, false);
        s.set(y, y, false);
        s.set(x, y, true);
        s.set(y, x, true);
      }
      return s;
    }
  }
  throw DomainError("gate-kind", "unknown gate kind");
}

Gf2Matrix gate_product(std::size_t n, const GateList& gates) {
  auto m = Gf2Matrix::identity(2 * n);
  for (const auto& g : gates) m = mul(m, gate_image(n, g));
  return m;
}

namespace {

void append_borel_gates(std::size_t n, const Gf2Matrix& b, GateList& out) {
  const std::size_t n2 = 2 * n;
  const auto vs = borel_expand(b);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = vs[k];
    // s(v, k) = s(k̄, k)^c · Π_j s(j, k)^{v_j}; the factors commute.
    bool c = false;
    for (std::size_t j = 0; j < n; ++j) c ^= v.get(j) && v.get(mirror_index(j, n2));
    if (c) out.push_back(gate_from_move(n, mirror_index(k, n2), k));
    for (auto j : v.support()) out.push_back(gate_from_move(n, j, k));
  }
}

}  // namespace

GateList to_gates(const std::vector<std::size_t>& beta, const Gf2Matrix& l, const Gf2Matrix& r) {
  if (!l.is_square() || l.rows() % 2 != 0 || r.rows() != l.rows() || !r.is_square()) {
    throw DimensionError("to_gates: L and R must be 2n x 2n");
  }
  const std::size_t n2 = l.rows();
  const std::size_t n = n2 / 2;
  if (beta.size() != n || !is_qubit_injective(beta, n2)) {
    throw DomainError("beta-qubit-injective", "to_gates: beta must be a qubit-injective map of n pivots");
  }
  GateList gates;
  append_borel_gates(n, l, gates);

  // Π^sym(β) = Q · D: D applies Hadamards to the qubits whose pivot sits on
  // the mirrored coordinate, Q permutes qubits q(β_k) -> k.
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[qubit_of(beta[k], n2)] = k;
  for (std::size_t a = 0; a < n; ++a) {
    if (perm[a] == a) continue;
    const std::size_t b = perm[a];
    gates.push_back({GateKind::SWAP, {a, b}});
    for (auto& p : perm) {
      if (p == a) {
        p = b;
      } else if (p == b) {
        p = a;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (beta[k] >= n) gates.push_back({GateKind::HADAMARD, {qubit_of(beta[k], n2)}});
  }

  append_borel_gates(n, r, gates);
  return gates;
}

GateList to_gates(const Quintuple& q) {
  if (q.mode() != Mode::Symplectic) throw DomainError("mode", "to_gates needs a symplectic decomposition");
  return to_gates(q.profile.beta, q.L, q.R);
}

}  // namespace gf2sym
