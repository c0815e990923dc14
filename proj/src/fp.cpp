#include "blockhh/fp.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "blockhh/errors.hpp"

namespace blockhh {

namespace {

std::size_t words_for(std::size_t cols) { return (cols + 63) / 64; }

}  // namespace

FpMat::FpMat(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols) {
  if (p < 2 || p > 251) throw InvalidStructure("FpMat: prime out of supported range");
  if (p == 2) {
    wpr_ = words_for(cols);
    bits_.assign(rows * wpr_, 0);
  } else {
    wpr_ = cols;
    bytes_.assign(rows * cols, 0);
  }
}

FpMat FpMat::identity(std::uint32_t p, std::size_t n) {
  FpMat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::uint32_t FpMat::get(std::size_t r, std::size_t c) const {
  assert(r < rows_ && c < cols_);
  if (p_ == 2) return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
  return bytes_[r * wpr_ + c];
}

void FpMat::set(std::size_t r, std::size_t c, std::uint32_t v) {
  assert(r < rows_ && c < cols_);
  v %= p_;
  if (p_ == 2) {
    std::uint64_t& w = bits_[r * wpr_ + c / 64];
    std::uint64_t mask = std::uint64_t(1) << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
  } else {
    bytes_[r * wpr_ + c] = static_cast<std::uint8_t>(v);
  }
}

std::vector<std::uint32_t> FpMat::row(std::size_t r) const {
  std::vector<std::uint32_t> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
  return out;
}

void FpMat::set_row(std::size_t r, const std::vector<std::uint32_t>& vals) {
  if (vals.size() != cols_) throw DimensionMismatch("FpMat::set_row: length mismatch");
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, vals[c]);
}

void FpMat::append_row(const std::vector<std::uint32_t>& vals) {
  if (vals.size() != cols_) throw DimensionMismatch("FpMat::append_row: length mismatch");
  rows_ += 1;
  if (p_ == 2)
    bits_.resize(rows_ * wpr_, 0);
  else
    bytes_.resize(rows_ * wpr_, 0);
  set_row(rows_ - 1, vals);
}

void FpMat::add_row_into(std::size_t dst, std::size_t src, std::uint32_t scalar) {
  scalar %= p_;
  if (scalar == 0) return;
  if (p_ == 2) {
    std::uint64_t* d = bit_row(dst);
    const std::uint64_t* s = bit_row(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
  } else {
    std::uint8_t* d = byte_row(dst);
    const std::uint8_t* s = byte_row(src);
    for (std::size_t c = 0; c < cols_; ++c)
      d[c] = static_cast<std::uint8_t>((d[c] + scalar * std::uint32_t(s[c])) % p_);
  }
}

void FpMat::scale_row(std::size_t r, std::uint32_t scalar) {
  scalar %= p_;
  if (p_ == 2) {
    if (scalar == 0) {
      std::uint64_t* d = bit_row(r);
      for (std::size_t w = 0; w < wpr_; ++w) d[w] = 0;
    }
    return;
  }
  std::uint8_t* d = byte_row(r);
  for (std::size_t c = 0; c < cols_; ++c)
    d[c] = static_cast<std::uint8_t>((scalar * std::uint32_t(d[c])) % p_);
}

void FpMat::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (p_ == 2) {
    std::uint64_t* ra = bit_row(a);
    std::uint64_t* rb = bit_row(b);
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
  } else {
    std::uint8_t* ra = byte_row(a);
    std::uint8_t* rb = byte_row(b);
    for (std::size_t c = 0; c < cols_; ++c) std::swap(ra[c], rb[c]);
  }
}

bool FpMat::row_is_zero(std::size_t r) const {
  if (p_ == 2) {
    const std::uint64_t* w = bit_row(r);
    for (std::size_t i = 0; i < wpr_; ++i)
      if (w[i]) return false;
    return true;
  }
  const std::uint8_t* b = byte_row(r);
  for (std::size_t c = 0; c < cols_; ++c)
    if (b[c]) return false;
  return true;
}

FpMat FpMat::mul(const FpMat& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.rows_) throw DimensionMismatch("FpMat::mul: shape mismatch");
  FpMat out(p_, rows_, rhs.cols_);
  if (p_ == 2) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::uint64_t* a = bit_row(i);
      std::uint64_t* o = out.bit_row(i);
      for (std::size_t w = 0; w < wpr_; ++w) {
        std::uint64_t word = a[w];
        while (word) {
          std::size_t k = w * 64 + std::countr_zero(word);
          word &= word - 1;
          const std::uint64_t* b = rhs.bit_row(k);
          for (std::size_t j = 0; j < rhs.wpr_; ++j) o[j] ^= b[j];
        }
      }
    }
    return out;
  }
  std::vector<std::uint32_t> acc(rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0u);
    const std::uint8_t* a = byte_row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint32_t v = a[k];
      if (!v) continue;
      const std::uint8_t* b = rhs.byte_row(k);
      for (std::size_t j = 0; j < rhs.cols_; ++j) acc[j] += v * b[j];
      // 251^2 per step: fold periodically to keep the accumulator in range.
      if ((k & 0xFFFF) == 0xFFFF)
        for (auto& x : acc) x %= p_;
    }
    std::uint8_t* o = out.byte_row(i);
    for (std::size_t j = 0; j < rhs.cols_; ++j) o[j] = static_cast<std::uint8_t>(acc[j] % p_);
  }
  return out;
}

std::vector<std::uint32_t> FpMat::mul_vec(const std::vector<std::uint32_t>& v) const {
  if (v.size() != cols_) throw DimensionMismatch("FpMat::mul_vec: length mismatch");
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t(get(i, c)) * (v[c] % p_);
    out[i] = static_cast<std::uint32_t>(acc % p_);
  }
  return out;
}

FpMat FpMat::transpose() const {
  FpMat out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      std::uint32_t v = get(r, c);
      if (v) out.set(c, r, v);
    }
  return out;
}

FpMat FpMat::add(const FpMat& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionMismatch("FpMat::add: shape mismatch");
  FpMat out = *this;
  if (p_ == 2) {
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] ^ rhs.bits_[i];
  } else {
    for (std::size_t i = 0; i < bytes_.size(); ++i)
      out.bytes_[i] = static_cast<std::uint8_t>((bytes_[i] + rhs.bytes_[i]) % p_);
  }
  return out;
}

FpMat FpMat::sub(const FpMat& rhs) const { return add(rhs.scaled(p_ - 1)); }

FpMat FpMat::scaled(std::uint32_t scalar) const {
  scalar %= p_;
  FpMat out = *this;
  for (std::size_t r = 0; r < rows_; ++r) out.scale_row(r, scalar);
  return out;
}

bool FpMat::is_zero() const {
  for (std::size_t r = 0; r < rows_; ++r)
    if (!row_is_zero(r)) return false;
  return true;
}

bool FpMat::operator==(const FpMat& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  return p_ == 2 ? bits_ == rhs.bits_ : bytes_ == rhs.bytes_;
}

std::vector<std::size_t> FpMat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pr = r;
    while (pr < rows_ && get(pr, c) == 0) ++pr;
    if (pr == rows_) continue;
    swap_rows(r, pr);
    std::uint32_t lead = get(r, c);
    if (lead != 1) scale_row(r, fp_inverse(lead, p_));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::uint32_t v = get(i, c);
      if (v) add_row_into(i, r, p_ - v);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMat::rank() const {
  StreamEliminator elim(p_, cols_);
  if (p_ == 2) {
    for (std::size_t r = 0; r < rows_; ++r) elim.add_bit_row(bit_row(r));
  } else {
    for (std::size_t r = 0; r < rows_; ++r) elim.add_byte_row(byte_row(r));
  }
  return elim.rank();
}

FpMat FpMat::kernel_basis() const {
  FpMat work = *this;
  std::vector<std::size_t> pivots = work.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FpMat out(p_, free_cols.size(), cols_);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    out.set(k, f, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::uint32_t v = work.get(i, f);
      if (v) out.set(k, pivots[i], p_ - v);
    }
  }
  return out;
}

std::uint64_t* FpMat::bit_row(std::size_t r) {
  assert(p_ == 2);
  return bits_.data() + r * wpr_;
}
const std::uint64_t* FpMat::bit_row(std::size_t r) const {
  assert(p_ == 2);
  return bits_.data() + r * wpr_;
}
std::uint8_t* FpMat::byte_row(std::size_t r) {
  assert(p_ != 2);
  return bytes_.data() + r * wpr_;
}
const std::uint8_t* FpMat::byte_row(std::size_t r) const {
  assert(p_ != 2);
  return bytes_.data() + r * wpr_;
}

SolveResult fp_solve(const FpMat& A, const std::vector<std::uint32_t>& b) {
  if (b.size() != A.rows()) throw DimensionMismatch("fp_solve: rhs length mismatch");
  std::uint32_t p = A.prime();
  std::size_t n = A.cols();
  FpMat aug(p, A.rows(), n + 1);
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::uint32_t v = A.get(r, c);
      if (v) aug.set(r, c, v);
    }
    if (b[r] % p) aug.set(r, n, b[r] % p);
  }
  std::vector<std::size_t> pivots = aug.rref();
  SolveResult res;
  res.rank_augmented = pivots.size();
  res.rank_coefficient = pivots.size();
  if (!pivots.empty() && pivots.back() == n) {
    res.rank_coefficient -= 1;
    res.consistent = false;
    return res;
  }
  res.consistent = true;
  res.solution.assign(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) res.solution[pivots[i]] = aug.get(i, n);
  return res;
}

std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw InvalidStructure("fp_inverse: zero is not invertible");
  return fp_pow(a, p - 2, p);
}

StreamEliminator::StreamEliminator(std::uint32_t p, std::size_t cols)
    : p_(p), cols_(cols), store_(p, 0, cols), col_to_row_(cols, -1) {}

void StreamEliminator::forward_reduce(FpMat& m, std::size_t r) const {
  if (p_ == 2) {
    std::uint64_t* row = m.bit_row(r);
    std::size_t wpr = m.words_per_row();
    for (std::size_t w = 0; w < wpr; ++w) {
      std::uint64_t pending = row[w];
      while (pending) {
        unsigned b = static_cast<unsigned>(std::countr_zero(pending));
        std::size_t c = w * 64 + b;
        if (c >= cols_) break;
        long sr = col_to_row_[c];
        if (sr < 0) {
          pending &= pending - 1;
          continue;
        }
        const std::uint64_t* s = store_.bit_row(static_cast<std::size_t>(sr));
        for (std::size_t j = w; j < wpr; ++j) row[j] ^= s[j];
        pending = row[w];
        if (b + 1 < 64) pending &= ~((std::uint64_t(1) << (b + 1)) - 1);
        else pending = 0;
      }
    }
    return;
  }
  std::uint8_t* row = m.byte_row(r);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::uint32_t v = row[c];
    if (!v) continue;
    long sr = col_to_row_[c];
    if (sr < 0) continue;
    const std::uint8_t* s = store_.byte_row(static_cast<std::size_t>(sr));
    std::uint32_t neg = p_ - v;
    for (std::size_t j = c; j < cols_; ++j)
      row[j] = static_cast<std::uint8_t>((row[j] + neg * std::uint32_t(s[j])) % p_);
  }
}

bool StreamEliminator::add_row(const std::vector<std::uint32_t>& row) {
  if (row.size() != cols_) throw DimensionMismatch("StreamEliminator::add_row: length mismatch");
  FpMat scratch(p_, 1, cols_);
  scratch.set_row(0, row);
  forward_reduce(scratch, 0);
  std::size_t c = 0;
  while (c < cols_ && scratch.get(0, c) == 0) ++c;
  if (c == cols_) return false;
  std::uint32_t lead = scratch.get(0, c);
  if (lead != 1) scratch.scale_row(0, fp_inverse(lead, p_));
  store_.append_row(scratch.row(0));
  col_to_row_[c] = static_cast<long>(store_.rows() - 1);
  pivot_cols_.push_back(c);
  return true;
}

bool StreamEliminator::add_bit_row(const std::uint64_t* words) {
  FpMat scratch(2, 1, cols_);
  std::uint64_t* dst = scratch.bit_row(0);
  for (std::size_t w = 0; w < scratch.words_per_row(); ++w) dst[w] = words[w];
  forward_reduce(scratch, 0);
  std::size_t wpr = scratch.words_per_row();
  for (std::size_t w = 0; w < wpr; ++w) {
    if (dst[w]) {
      std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(dst[w]));
      store_.append_row(scratch.row(0));
      col_to_row_[c] = static_cast<long>(store_.rows() - 1);
      pivot_cols_.push_back(c);
      return true;
    }
  }
  return false;
}

bool StreamEliminator::add_byte_row(const std::uint8_t* entries) {
  std::vector<std::uint32_t> row(entries, entries + cols_);
  return add_row(row);
}

bool StreamEliminator::reduces_to_zero(const std::vector<std::uint32_t>& row) const {
  FpMat scratch(p_, 1, cols_);
  scratch.set_row(0, row);
  forward_reduce(scratch, 0);
  return scratch.row_is_zero(0);
}

std::vector<std::uint32_t> StreamEliminator::residue(const std::vector<std::uint32_t>& row) const {
  FpMat scratch(p_, 1, cols_);
  scratch.set_row(0, row);
  forward_reduce(scratch, 0);
  return scratch.row(0);
}

FpMat StreamEliminator::echelon() const {
  // Order rows by pivot column, then clear every pivot column above its row.
  std::vector<std::size_t> order(pivot_cols_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivot_cols_[a] < pivot_cols_[b]; });
  FpMat out(p_, pivot_cols_.size(), cols_);
  for (std::size_t i = 0; i < order.size(); ++i) out.set_row(i, store_.row(order[i]));
  for (std::size_t i = order.size(); i-- > 0;) {
    std::size_t pc = pivot_cols_[order[i]];
    for (std::size_t j = 0; j < i; ++j) {
      std::uint32_t v = out.get(j, pc);
      if (v) out.add_row_into(j, i, p_ - v);
    }
  }
  return out;
}

FpMat StreamEliminator::kernel_basis() const {
  // The kernel depends only on the row space, so the stored echelon suffices.
  return echelon().kernel_basis();
}

}  // namespace blockhh
