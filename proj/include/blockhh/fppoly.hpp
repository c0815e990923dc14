#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blockhh/fp.hpp"

namespace blockhh {

// Univariate polynomial over F_p, coefficients ascending, trailing zeros trimmed.
class FpPoly {
 public:
  FpPoly() = default;  // zero over an unset prime; usable only after assignment
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  static FpPoly zero(std::uint32_t p) { return FpPoly(p, {}); }
  static FpPoly one(std::uint32_t p) { return FpPoly(p, {1}); }
  static FpPoly x(std::uint32_t p) { return FpPoly(p, {0, 1}); }
  static FpPoly constant(std::uint32_t p, std::uint32_t c) { return FpPoly(p, {c}); }
  static FpPoly monomial(std::uint32_t p, std::size_t deg, std::uint32_t c = 1);

  std::uint32_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // zero -> -1
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint32_t leading() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  FpPoly monic() const;

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  // Quotient and remainder; divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
  FpPoly operator/(const FpPoly& o) const { return divmod(o).first; }
  FpPoly operator%(const FpPoly& o) const { return divmod(o).second; }
  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const FpPoly& o) const { return !(*this == o); }

  FpPoly derivative() const;
  std::uint32_t eval(std::uint32_t x) const;
  // Evaluate at a matrix (for annihilation checks).
  FpMat eval(const FpMat& M) const;
  FpPoly pow_mod(std::uint64_t e, const FpPoly& mod) const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> c_;
};

// Monic gcd; gcd(0,0) = 0.
FpPoly poly_gcd(FpPoly a, FpPoly b);
FpPoly poly_lcm(const FpPoly& a, const FpPoly& b);

// Least-degree monic polynomial annihilating the square matrix M.
FpPoly minimal_polynomial(const FpMat& M);

// Complete factorization into monic irreducibles with multiplicities, sorted by
// (degree, coefficient sequence). The seed drives the equal-degree splitting.
std::vector<std::pair<FpPoly, unsigned>> factor(const FpPoly& f, std::uint64_t seed = 0);

bool is_irreducible(const FpPoly& f, std::uint64_t seed = 0);

}  // namespace blockhh
