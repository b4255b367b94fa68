#include "gf2sym/matrix.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gf2sym/errors.hpp"

namespace gf2sym {

// ---- Gf2Vector -------------------------------------------------------------

Gf2Vector Gf2Vector::unit(std::size_t len, std::size_t i) {
  if (i >= len) throw DimensionError("unit vector index out of range");
  Gf2Vector v(len);
  v.set(i, true);
  return v;
}

Gf2Vector Gf2Vector::from_string(std::string_view bits) {
  Gf2Vector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw ParseError("bit string contains a character other than '0'/'1'");
    }
  }
  return v;
}

bool Gf2Vector::is_zero() const { return kernels::is_zero(words_.data(), words_.size()); }

std::size_t Gf2Vector::weight() const {
  std::size_t w = 0;
  for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

std::vector<std::size_t> Gf2Vector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    Word x = words_[k];
    while (x) {
      out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
  if (other.len_ != len_) throw DimensionError("vector length mismatch");
  kernels::xor_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool lex_less(const Gf2Vector& a, const Gf2Vector& b) {
  if (a.len_ != b.len_) return a.len_ < b.len_;
  for (std::size_t k = 0; k < a.words_.size(); ++k) {
    Word diff = a.words_[k] ^ b.words_[k];
    if (diff) {
      // Lowest index is the most significant character.
      Word lowest = diff & (~diff + 1);
      return (b.words_[k] & lowest) != 0;
    }
  }
  return false;
}

bool dot(const Gf2Vector& a, const Gf2Vector& b) {
  if (a.len_ != b.len_) throw DimensionError("vector length mismatch");
  return kernels::and_parity(a.words_.data(), b.words_.data(), a.words_.size());
}

std::string Gf2Vector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---- Gf2Matrix -------------------------------------------------------------

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::string>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Gf2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ParseError("rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      char ch = rows[r][c];
      if (ch == '1') {
        m.set(r, c, true);
      } else if (ch != '0') {
        throw ParseError("matrix row contains a character other than '0'/'1'");
      }
    }
  }
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> v;
  v.reserve(rows.size());
  for (auto r : rows) v.emplace_back(r);
  return from_rows(v);
}

Gf2Vector Gf2Matrix::row(std::size_t r) const {
  Gf2Vector v(cols_);
  std::copy_n(row_ptr(r), stride_, v.words().data());
  return v;
}

Gf2Vector Gf2Matrix::column(std::size_t c) const {
  Gf2Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r, true);
  }
  return v;
}

void Gf2Matrix::set_row(std::size_t r, const Gf2Vector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  std::copy_n(v.words().data(), stride_, row_ptr(r));
}

void Gf2Matrix::set_column(std::size_t c, const Gf2Vector& v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, v.get(r));
}

void Gf2Matrix::xor_row(std::size_t dst, const Gf2Vector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  kernels::xor_into(row_ptr(dst), v.words().data(), stride_);
}

std::size_t Gf2Matrix::last_set_in_row(std::size_t r) const {
  const Word* p = row_ptr(r);
  for (std::size_t k = stride_; k-- > 0;) {
    if (p[k]) return k * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(p[k])));
  }
  return cols_;
}

bool Gf2Matrix::is_zero() const { return kernels::is_zero(data_.data(), data_.size()); }

bool Gf2Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* p = row_ptr(r);
    for (std::size_t k = 0; k < stride_; ++k) {
      Word expect = (k == r / kWordBits) ? (Word{1} << (r % kWordBits)) : 0;
      if (p[k] != expect) return false;
    }
  }
  return true;
}

namespace {

// In-place transpose of a 64x64 bit block, bit j of x[i] <-> bit i of x[j].
void transpose64(Word* x) {
  Word m = 0x00000000FFFFFFFFull;
  for (unsigned j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (unsigned k = 0; k < 64; k = (k + j + 1) & ~j) {
      const Word t = ((x[k] >> j) ^ x[k + j]) & m;
      x[k] ^= t << j;
      x[k + j] ^= t;
    }
  }
}

}  // namespace

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix t(cols_, rows_);
  Word block[64];
  for (std::size_t rb = 0; rb < rows_; rb += kWordBits) {
    const std::size_t nr = std::min(kWordBits, rows_ - rb);
    for (std::size_t cw = 0; cw < stride_; ++cw) {
      for (std::size_t i = 0; i < 64; ++i) block[i] = i < nr ? row_ptr(rb + i)[cw] : 0;
      transpose64(block);
      const std::size_t c0 = cw * kWordBits;
      const std::size_t nc = std::min(kWordBits, cols_ - c0);
      for (std::size_t i = 0; i < nc; ++i) t.row_ptr(c0 + i)[rb / kWordBits] = block[i];
    }
  }
  return t;
}

Gf2Matrix Gf2Matrix::row_block(std::size_t r0, std::size_t nr) const {
  if (r0 + nr > rows_) throw DimensionError("row block out of range");
  Gf2Matrix out(nr, cols_);
  std::copy_n(row_ptr(r0), nr * stride_, out.data_.data());
  return out;
}

std::vector<std::string> Gf2Matrix::to_row_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::string s(cols_, '0');
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) s[c] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string Gf2Matrix::to_text() const {
  std::string out;
  for (const auto& s : to_row_strings()) {
    out += s;
    out += '\n';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Gf2Matrix& m) { return os << m.to_text(); }

// ---- free functions --------------------------------------------------------

Gf2Matrix mul(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("mul: inner dimensions differ");
  Gf2Matrix c(a.rows(), b.cols());
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (b.rows() == 0) break;
    k.gather_xor(c.row_ptr(i), b.row_ptr(0), b.stride(), c.stride(), a.row_ptr(i), a.cols(), false);
  }
  return c;
}

Gf2Vector mul(const Gf2Matrix& a, const Gf2Vector& x) {
  if (a.cols() != x.size()) throw DimensionError("mul: inner dimensions differ");
  Gf2Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (kernels::and_parity(a.row_ptr(i), x.words().data(), a.stride())) y.set(i, true);
  }
  return y;
}

Gf2Matrix add(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shapes differ");
  Gf2Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) kernels::xor_into(c.row_ptr(i), b.row_ptr(i), c.stride());
  return c;
}

Gf2Matrix revdiag(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, n - 1 - i, true);
  return m;
}

std::size_t rank(const Gf2Matrix& a) {
  Gf2Matrix w = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t p = r;
    while (p < w.rows() && !w.get(p, c)) ++p;
    if (p == w.rows()) continue;
    if (p != r) {
      w.xor_row(r, p);
    }
    for (std::size_t i = r + 1; i < w.rows(); ++i) {
      if (w.get(i, c)) w.xor_row(i, r);
    }
    ++r;
  }
  return r;
}

Gf2Matrix outer(const Gf2Vector& u, const Gf2Vector& v) {
  Gf2Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.get(i)) m.set_row(i, v);
  }
  return m;
}

Gf2Matrix parse_matrix_text(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const bool spaced = line.find(' ') != std::string_view::npos;
    std::string row;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char ch = line[i];
      bool separator_slot = spaced && (i % 2 == 1);
      if (separator_slot) {
        if (ch != ' ') throw ParseError("line " + std::to_string(line_no) + ": entries must be separated by single spaces");
      } else if (ch == '0' || ch == '1') {
        row.push_back(ch);
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unexpected character '" + std::string(1, ch) + "'");
      }
    }
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": row length " + std::to_string(row.size()) +
                       " differs from first row length " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  return Gf2Matrix::from_rows(rows);
}

Gf2Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

}  // namespace gf2sym
