#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blockhh {

// Point labels are 0-based internally; the file format and cycle notation are 1-based.
using Point = std::uint8_t;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);                  // identity
  explicit Permutation(std::vector<Point> images);           // img[i] = image of i

  static Permutation identity(std::size_t degree);
  // Parse disjoint-cycle notation, e.g. "(1,2,3)(4,5)"; fixed points implied.
  static Permutation from_cycles(std::size_t degree, const std::string& cycles);
  static Permutation from_one_based(const std::vector<int>& images);

  std::size_t degree() const { return img_.size(); }
  Point apply(Point x) const { return img_[x]; }
  Point operator()(Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }
  std::vector<int> one_based_images() const;

  bool is_identity() const;
  Permutation inverse() const;
  // (a * b)(x) = a(b(x))
  Permutation operator*(const Permutation& rhs) const;
  Permutation conjugate_by(const Permutation& g) const;  // g * this * g^-1
  Permutation power(long long e) const;
  std::uint64_t order() const;

  bool operator==(const Permutation& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Permutation& rhs) const { return img_ != rhs.img_; }
  bool operator<(const Permutation& rhs) const { return img_ < rhs.img_; }

  std::string cycle_string() const;  // 1-based disjoint cycles, "()" for identity

 private:
  std::vector<Point> img_;
};

// Raw-buffer composition for hot loops: dst[i] = a[b[i]].
inline void compose_into(Point* dst, const Point* a, const Point* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[b[i]];
}

inline void invert_into(Point* dst, const Point* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[a[i]] = static_cast<Point>(i);
}

}  // namespace blockhh
