#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace blockhh {

// Dense matrix over the prime field F_p. Rows are bit-packed words for p = 2 and
// byte entries otherwise; all public entries are canonical representatives in [0, p).
class FpMat {
 public:
  FpMat() = default;
  FpMat(std::uint32_t p, std::size_t rows, std::size_t cols);
  static FpMat identity(std::uint32_t p, std::size_t n);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::uint32_t v);

  std::vector<std::uint32_t> row(std::size_t r) const;
  void set_row(std::size_t r, const std::vector<std::uint32_t>& vals);
  void append_row(const std::vector<std::uint32_t>& vals);
  void add_row_into(std::size_t dst, std::size_t src, std::uint32_t scalar);  // dst += scalar*src
  void scale_row(std::size_t r, std::uint32_t scalar);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;

  FpMat mul(const FpMat& rhs) const;
  std::vector<std::uint32_t> mul_vec(const std::vector<std::uint32_t>& v) const;
  FpMat transpose() const;
  FpMat add(const FpMat& rhs) const;
  FpMat sub(const FpMat& rhs) const;
  FpMat scaled(std::uint32_t scalar) const;
  bool is_zero() const;
  bool operator==(const FpMat& rhs) const;

  // In-place reduced row echelon form; returns the pivot columns in order.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis of {x : M x = 0}, one vector per row of the result.
  FpMat kernel_basis() const;

  // Raw word access for p = 2 hot paths (words per row = (cols+63)/64).
  std::uint64_t* bit_row(std::size_t r);
  const std::uint64_t* bit_row(std::size_t r) const;
  std::size_t words_per_row() const { return wpr_; }
  std::uint8_t* byte_row(std::size_t r);
  const std::uint8_t* byte_row(std::size_t r) const;

 private:
  std::uint32_t p_ = 0;
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;  // wpr_ = words (p=2) or bytes (odd) per row
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> bytes_;
};

struct SolveResult {
  bool consistent = false;
  std::vector<std::uint32_t> solution;  // one solution if consistent
  std::size_t rank_coefficient = 0;
  std::size_t rank_augmented = 0;
};

// Solve A x = b.
SolveResult fp_solve(const FpMat& A, const std::vector<std::uint32_t>& b);

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

// Incremental row-echelon accumulator: rows stream in, only pivot rows are kept.
class StreamEliminator {
 public:
  StreamEliminator() = default;
  StreamEliminator(std::uint32_t p, std::size_t cols);

  // Reduces the row against the current echelon; keeps it if a new pivot appears.
  // Returns true when the rank grew.
  bool add_row(const std::vector<std::uint32_t>& row);
  bool add_bit_row(const std::uint64_t* words);             // p = 2 fast path
  bool add_byte_row(const std::uint8_t* entries);           // odd p fast path

  std::size_t rank() const { return pivot_cols_.size(); }
  std::size_t cols() const { return cols_; }
  bool reduces_to_zero(const std::vector<std::uint32_t>& row) const;
  // Residue of a row after forward reduction (not back-substituted).
  std::vector<std::uint32_t> residue(const std::vector<std::uint32_t>& row) const;

  // Echelon rows in pivot order, fully back-substituted (reduced form).
  FpMat echelon() const;
  // Kernel of the matrix formed by every row ever added.
  FpMat kernel_basis() const;
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }

 private:
  void forward_reduce(FpMat& m, std::size_t r) const;
  std::uint32_t p_ = 0;
  std::size_t cols_ = 0;
  FpMat store_;                          // one row per pivot, insertion order
  std::vector<std::size_t> pivot_cols_;  // pivot column of store_ row i
  std::vector<long> col_to_row_;         // column -> store_ row index or -1
};

}  // namespace blockhh
