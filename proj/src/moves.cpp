#include "gf2sym/moves.hpp"

#include <algorithm>
#include <bit>

#include "gf2sym/errors.hpp"

namespace gf2sym {

// ---- TransitiveSet -----------------------------------------------------------

TransitiveSet TransitiveSet::all_pairs(std::size_t n) {
  TransitiveSet t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) t.bits_.set(i, j, true);
  }
  return t;
}

void TransitiveSet::insert(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw DimensionError("pair index out of range");
  if (i <= j) throw DomainError("pair-below-diagonal", "transitive-set pairs must satisfy i > j");
  bits_.set(i, j, true);
}

std::size_t TransitiveSet::count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n_; ++i) c += bits_.row(i).weight();
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> TransitiveSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (bits_.get(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool TransitiveSet::is_transitive() const {
  // (i, j), (j, k) in T  =>  (i, k) in T, i.e. row j is contained in row i.
  for (std::size_t i = 0; i < n_; ++i) {
    const Word* ri = bits_.row_ptr(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (!bits_.get(i, j)) continue;
      const Word* rj = bits_.row_ptr(j);
      for (std::size_t w = 0; w < bits_.stride(); ++w) {
        if (rj[w] & ~ri[w]) return false;
      }
    }
  }
  return true;
}

bool TransitiveSet::is_reversal_closed() const { return reversed() == *this; }

bool TransitiveSet::is_subset_of(const TransitiveSet& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    const Word* a = bits_.row_ptr(i);
    const Word* b = other.bits_.row_ptr(i);
    for (std::size_t w = 0; w < bits_.stride(); ++w) {
      if (a[w] & ~b[w]) return false;
    }
  }
  return true;
}

TransitiveSet TransitiveSet::reversed() const {
  TransitiveSet r(n_);
  for (auto [i, j] : pairs()) r.bits_.set(n_ - 1 - j, n_ - 1 - i, true);
  return r;
}

TransitiveSet TransitiveSet::united(const TransitiveSet& other) const {
  if (other.n_ != n_) throw DimensionError("union of transitive sets of different sizes");
  TransitiveSet u = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t w = 0; w < bits_.stride(); ++w) {
      u.bits_.row_ptr(i)[w] = bits_.row_ptr(i)[w] | other.bits_.row_ptr(i)[w];
    }
  }
  return u;
}

TsetValidation tset_validate(const TransitiveSet& t) {
  return {t.is_transitive(), t.size() % 2 == 0 && t.is_reversal_closed()};
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Unrestricted:
      return "unrestricted";
    case Mode::Stabilizer:
      return "stabilizer";
    case Mode::Symplectic:
      return "symplectic";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& name) {
  if (name == "unrestricted") return Mode::Unrestricted;
  if (name == "stabilizer") return Mode::Stabilizer;
  if (name == "symplectic") return Mode::Symplectic;
  throw ParseError("unknown mode: " + name);
}

// ---- profiles ------------------------------------------------------------------

bool is_increasing(const std::vector<std::size_t>& alpha) {
  return std::adjacent_find(alpha.begin(), alpha.end(), [](auto a, auto b) { return a >= b; }) == alpha.end();
}

bool is_injective(const std::vector<std::size_t>& beta) {
  auto sorted = beta;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool is_qubit_injective(const std::vector<std::size_t>& beta, std::size_t n2) {
  std::vector<std::size_t> q;
  q.reserve(beta.size());
  for (auto b : beta) {
    if (b >= n2) return false;
    q.push_back(qubit_of(b, n2));
  }
  return is_injective(q);
}

void PivotProfile::validate() const {
  if (mode == Mode::Symplectic) {
    if (rows != cols || cols % 2 != 0) throw DomainError("profile-shape", "symplectic profile must be 2n x 2n");
    if (beta.size() != cols / 2) throw DomainError("profile-rank", "symplectic profile needs exactly n pivots");
    if (!alpha.empty()) {
      for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] != k) throw DomainError("alpha-increasing", "symplectic profile rows must be 0..n-1");
      }
    }
  } else {
    if (alpha.size() != beta.size()) throw DomainError("profile-rank", "alpha and beta lengths differ");
    if (!is_increasing(alpha)) throw DomainError("alpha-increasing", "alpha must be strictly increasing");
    for (auto a : alpha) {
      if (a >= rows) throw DomainError("alpha-range", "alpha index out of range");
    }
  }
  for (auto b : beta) {
    if (b >= cols) throw DomainError("beta-range", "beta index out of range");
  }
  if (mode == Mode::Unrestricted) {
    if (!is_injective(beta)) throw DomainError("beta-injective", "beta must be injective");
  } else {
    if (cols % 2 != 0) throw DomainError("profile-shape", "column count must be even");
    if (!is_qubit_injective(beta, cols)) throw DomainError("beta-qubit-injective", "beta must be qubit-injective");
  }
}

TransitiveSet tset_tl(const std::vector<std::size_t>& alpha, std::size_t m) {
  if (!is_increasing(alpha)) throw DomainError("alpha-increasing", "alpha must be strictly increasing");
  TransitiveSet t(m);
  for (auto j : alpha) {
    if (j >= m) throw DimensionError("alpha index out of range");
    for (std::size_t i = j + 1; i < m; ++i) t.insert(i, j);
  }
  return t;
}

TransitiveSet tset_tr(const std::vector<std::size_t>& beta, std::size_t n) {
  if (!is_injective(beta)) throw DomainError("beta-injective", "beta must be injective");
  TransitiveSet t(n);
  std::vector<bool> used(n, false);
  for (auto b : beta) {
    if (b >= n) throw DimensionError("beta index out of range");
    for (std::size_t j = 0; j < b; ++j) {
      if (!used[j]) t.insert(b, j);
    }
    used[b] = true;
  }
  return t;
}

TransitiveSet tset_tm(const std::vector<std::size_t>& beta, std::size_t n2) {
  if (n2 % 2 != 0) throw DimensionError("symplectic index space must have even size");
  if (!is_qubit_injective(beta, n2)) throw DomainError("beta-qubit-injective", "beta must be qubit-injective");
  TransitiveSet t(n2);
  std::vector<bool> used_qubit(n2 / 2, false);
  for (auto b : beta) {
    for (std::size_t j = 0; j < b; ++j) {
      if (!used_qubit[qubit_of(j, n2)]) t.insert(b, j);
    }
    used_qubit[qubit_of(b, n2)] = true;
  }
  return t;
}

TransitiveSet tset_ttcr(const std::vector<std::size_t>& beta, std::size_t n2) {
  auto tm = tset_tm(beta, n2);
  return tm.united(tm.reversed());
}

TransitiveSet tset_inversions(const std::vector<std::size_t>& perm) {
  TransitiveSet t(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (perm[i] < perm[j]) t.insert(i, j);
    }
  }
  return t;
}

TransitiveSet tset_noninversions(const std::vector<std::size_t>& perm) {
  TransitiveSet t(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (perm[i] > perm[j]) t.insert(i, j);
    }
  }
  return t;
}

// ---- dense generators ----------------------------------------------------------

Gf2Matrix gaussian_move(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw DimensionError("gaussian_move: index out of range");
  if (i == j) throw DimensionError("gaussian_move: i == j");
  auto g = Gf2Matrix::identity(n);
  g.set(i, j, true);
  return g;
}

Gf2Matrix symplectic_move(std::size_t n, std::size_t i, std::size_t j) {
  const std::size_t n2 = 2 * n;
  if (i >= n2 || j >= n2) throw DimensionError("symplectic_move: index out of range");
  if (i == j) throw DimensionError("symplectic_move: i == j");
  auto s = Gf2Matrix::identity(n2);
  s.flip(i, j);
  if (i + j != n2 - 1) s.flip(mirror_index(j, n2), mirror_index(i, n2));
  return s;
}

namespace {

Gf2Vector reversed(const Gf2Vector& v) {
  Gf2Vector r(v.size());
  for (auto k : v.support()) r.set(v.size() - 1 - k, true);
  return r;
}

void check_column_move(std::size_t n2, const Gf2Vector& v, std::size_t i) {
  if (v.size() != n2) throw DimensionError("column move: vector length must be 2n");
  if (i >= n2) throw DimensionError("column move: index out of range");
  if (v.get(i)) throw DomainError("column-move-support", "column move vector must have v_i = 0");
}

}  // namespace

Gf2Matrix symplectic_column_move(std::size_t n, const Gf2Vector& v, std::size_t i) {
  const std::size_t n2 = 2 * n;
  check_column_move(n2, v, i);
  const std::size_t ib = mirror_index(i, n2);
  auto s = Gf2Matrix::identity(n2);
  for (auto k : v.support()) {
    s.flip(k, i);                        // v e_iᵀ
    s.flip(ib, mirror_index(k, n2));     // Λ e_i vᵀ Λ
  }
  if (v.get(ib)) s.flip(ib, i);
  return s;
}

Gf2Matrix symplectic_column_move_as_product(std::size_t n, const Gf2Vector& v, std::size_t i) {
  const std::size_t n2 = 2 * n;
  check_column_move(n2, v, i);
  const std::size_t ib = mirror_index(i, n2);
  bool correction = false;
  for (std::size_t j = 0; j < n; ++j) correction ^= v.get(j) && v.get(mirror_index(j, n2));
  auto s = Gf2Matrix::identity(n2);
  if (correction) s = mul(s, symplectic_move(n, ib, i));
  for (auto j : v.support()) s = mul(s, symplectic_move(n, j, i));
  return s;
}

bool is_symplectic(const Gf2Matrix& a) {
  if (!a.is_square()) throw DimensionError("is_symplectic: matrix must be square");
  if (a.rows() % 2 != 0) throw DimensionError("is_symplectic: side must be even");
  const std::size_t n2 = a.rows();
  // Aᵀ Λ A == Λ, with Λ A = A with its rows reversed.
  Gf2Matrix flipped(n2, n2);
  for (std::size_t r = 0; r < n2; ++r) {
    std::copy_n(a.row_ptr(n2 - 1 - r), a.stride(), flipped.row_ptr(r));
  }
  return mul(a.transposed(), flipped) == revdiag(n2);
}

bool is_stabilizer_pcm(const Gf2Matrix& a) {
  if (a.cols() % 2 != 0) throw DimensionError("is_stabilizer_pcm: column count must be even");
  const std::size_t n2 = a.cols();
  // A Λ: each row reversed.
  Gf2Matrix rev(a.rows(), n2);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Word* p = a.row_ptr(r);
    for (std::size_t w = 0; w < a.stride(); ++w) {
      Word x = p[w];
      while (x) {
        std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
        rev.set(r, n2 - 1 - c, true);
        x &= x - 1;
      }
    }
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.rows(); ++j) {
      if (kernels::and_parity(a.row_ptr(i), rev.row_ptr(j), a.stride())) return false;
    }
  }
  return true;
}

bool in_L(const Gf2Matrix& a, const TransitiveSet& t) {
  if (!a.is_square() || a.rows() != t.size()) throw DimensionError("in_L: matrix side must equal the pair-set size");
  const auto& bits = t.bits();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Word* row = a.row_ptr(i);
    const Word* allowed = bits.row_ptr(i);
    for (std::size_t w = 0; w < a.stride(); ++w) {
      Word diag = (w == i / kWordBits) ? (Word{1} << (i % kWordBits)) : 0;
      if ((row[w] & diag) != diag) return false;
      if (row[w] & ~(allowed[w] | diag)) return false;
    }
  }
  return true;
}

bool in_B(const Gf2Matrix& a, const TransitiveSet& t) { return in_L(a, t) && is_symplectic(a); }

// ---- sparse appliers -----------------------------------------------------------

void apply_gauss_column_left(Gf2Matrix& m, const Gf2Vector& u, std::size_t a) {
  if (u.size() != m.rows() || a >= m.rows()) throw DimensionError("apply_gauss_column_left: shape mismatch");
  if (u.get(a)) throw DomainError("column-move-support", "gaussian column move needs u_a = 0");
  for (auto i : u.support()) m.xor_row(i, a);
}

void apply_gauss_row_left(Gf2Matrix& m, std::size_t a, const Gf2Vector& v) {
  if (v.size() != m.rows() || a >= m.rows()) throw DimensionError("apply_gauss_row_left: shape mismatch");
  if (v.get(a)) throw DomainError("column-move-support", "gaussian row move needs v_a = 0");
  for (auto k : v.support()) m.xor_row(a, k);
}

void apply_gauss_row_right(Gf2Matrix& m, std::size_t a, const Gf2Vector& v) {
  if (v.size() != m.cols() || a >= m.cols()) throw DimensionError("apply_gauss_row_right: shape mismatch");
  if (v.get(a)) throw DomainError("column-move-support", "gaussian row move needs v_a = 0");
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.get(r, a)) k.xor_into(m.row_ptr(r), v.words().data(), m.stride());
  }
}

void apply_symp_column_left(Gf2Matrix& m, const Gf2Vector& v, std::size_t i) {
  const std::size_t n2 = m.rows();
  check_column_move(n2, v, i);
  const std::size_t ib = mirror_index(i, n2);
  const auto& k = kernels::active();
  // Row ī receives Σ_{j ∈ supp v} row_{j̄}; evaluate before touching any row.
  std::vector<Word> t(m.stride(), 0);
  const Word* sel = v.words().data();
  k.gather_xor(t.data(), m.row_ptr(0), m.stride(), m.stride(), sel, n2, true);
  k.scatter_xor(m.row_ptr(0), m.stride(), m.stride(), sel, n2, false, m.row_ptr(i), ib);
  k.xor_into(m.row_ptr(ib), t.data(), m.stride());
}

void apply_symp_row_left(Gf2Matrix& m, std::size_t i, const Gf2Vector& v) {
  const std::size_t n2 = m.rows();
  check_column_move(n2, v, i);
  const std::size_t ib = mirror_index(i, n2);
  const auto& k = kernels::active();
  std::vector<Word> t(m.stride(), 0);
  const Word* sel = v.words().data();
  k.gather_xor(t.data(), m.row_ptr(0), m.stride(), m.stride(), sel, n2, false);
  k.scatter_xor(m.row_ptr(0), m.stride(), m.stride(), sel, n2, true, m.row_ptr(ib), i);
  k.xor_into(m.row_ptr(i), t.data(), m.stride());
}

void apply_symp_row_right(Gf2Matrix& m, std::size_t i, const Gf2Vector& v) {
  const std::size_t n2 = m.cols();
  check_column_move(n2, v, i);
  const std::size_t ib = mirror_index(i, n2);
  const bool c = v.get(ib);
  const Gf2Vector vr = reversed(v);
  if (m.rows() == 0) return;
  kernels::active().column_move_rows(m.row_ptr(0), m.rows(), m.stride(), m.stride(), v.words().data(),
                                     vr.words().data(), i, ib, c);
}

}  // namespace gf2sym
