#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gf2sym/kernels.hpp"

namespace gf2sym {

using Word = kernels::Word;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Bit-packed vector over GF(2). Bits beyond `size()` are kept zero.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t len) : len_(len), words_(words_for(len), 0) {}

  static Gf2Vector unit(std::size_t len, std::size_t i);
  /// Parses a string of '0'/'1' characters; entry 0 is the first character.
  static Gf2Vector from_string(std::string_view bits);

  std::size_t size() const { return len_; }
  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value) {
    Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool is_zero() const;
  std::size_t weight() const;
  std::vector<std::size_t> support() const;

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  Gf2Vector& operator^=(const Gf2Vector& other);
  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }
  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
  /// Lexicographic order of the '0'/'1' strings (entry 0 most significant).
  friend bool lex_less(const Gf2Vector& a, const Gf2Vector& b);

  /// Standard inner product over GF(2).
  friend bool dot(const Gf2Vector& a, const Gf2Vector& b);

  std::string to_string() const;

 private:
  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Dense row-major bit-packed matrix over GF(2); each row starts on a word
/// boundary and padding bits are zero. Zero-sized shapes are valid.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static Gf2Matrix zeros(std::size_t rows, std::size_t cols) { return Gf2Matrix(rows, cols); }
  static Gf2Matrix identity(std::size_t n);
  /// Rows given as '0'/'1' strings of equal length.
  static Gf2Matrix from_rows(const std::vector<std::string>& rows);
  static Gf2Matrix from_rows(std::initializer_list<std::string_view> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }
  bool is_square() const { return rows_ == cols_; }

  bool get(std::size_t r, std::size_t c) const { return (row_ptr(r)[c / kWordBits] >> (c % kWordBits)) & 1U; }
  void set(std::size_t r, std::size_t c, bool value) {
    Word mask = Word{1} << (c % kWordBits);
    Word& w = row_ptr(r)[c / kWordBits];
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) { row_ptr(r)[c / kWordBits] ^= Word{1} << (c % kWordBits); }

  Word* row_ptr(std::size_t r) { return data_.data() + r * stride_; }
  const Word* row_ptr(std::size_t r) const { return data_.data() + r * stride_; }
  std::span<Word> row_words(std::size_t r) { return {row_ptr(r), stride_}; }
  std::span<const Word> row_words(std::size_t r) const { return {row_ptr(r), stride_}; }

  Gf2Vector row(std::size_t r) const;
  Gf2Vector column(std::size_t c) const;
  void set_row(std::size_t r, const Gf2Vector& v);
  void set_column(std::size_t c, const Gf2Vector& v);

  /// row[dst] ^= row[src]
  void xor_row(std::size_t dst, std::size_t src) { kernels::xor_into(row_ptr(dst), row_ptr(src), stride_); }
  /// row[dst] ^= v (v.size() == cols())
  void xor_row(std::size_t dst, const Gf2Vector& v);
  bool row_is_zero(std::size_t r) const { return kernels::is_zero(row_ptr(r), stride_); }
  /// Index of the highest set column in row r, or cols() if the row is zero.
  std::size_t last_set_in_row(std::size_t r) const;

  bool is_zero() const;
  bool is_identity() const;

  Gf2Matrix transposed() const;
  /// Sub-block of rows [r0, r0+nr).
  Gf2Matrix row_block(std::size_t r0, std::size_t nr) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

  /// One '0'/'1' line per row, no separators.
  std::string to_text() const;
  std::vector<std::string> to_row_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// Throws DimensionError when a.cols() != b.rows().
Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b);
Gf2Vector mul(const Gf2Matrix& a, const Gf2Vector& x);
Gf2Matrix add(const Gf2Matrix& a, const Gf2Matrix& b);
inline Gf2Matrix transpose(const Gf2Matrix& a) { return a.transposed(); }

/// Reverse-diagonal involution: ones at (i, n-1-i).
Gf2Matrix revdiag(std::size_t n);

std::size_t rank(const Gf2Matrix& a);

/// Outer product u vᵀ.
Gf2Matrix outer(const Gf2Vector& u, const Gf2Vector& v);

/// Text matrix format: one row per line of '0'/'1' characters, optionally
/// separated by single spaces; '#' starts a comment; blank lines are skipped.
Gf2Matrix parse_matrix_text(std::string_view text);
Gf2Matrix read_matrix_file(const std::string& path);

std::ostream& operator<<(std::ostream& os, const Gf2Matrix& m);

/// Calls f(j) for each set index j of v, ascending.
template <class F>
void for_each_set(const Gf2Vector& v, F&& f) {
  const auto w = v.words();
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (Word x = w[k]; x != 0; x &= x - 1) f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
  }
}

}  // namespace gf2sym
