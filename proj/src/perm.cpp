#include "blockhh/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "blockhh/errors.hpp"

namespace blockhh {

Permutation::Permutation(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p]) throw InvalidStructure("not a permutation");
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) { return Permutation(degree); }

Permutation Permutation::from_cycles(std::size_t degree, const std::string& cycles) {
  if (degree > 255) throw InvalidStructure("degree exceeds 255");
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[i]))) ++i;
  };
  skip_ws();
  while (i < cycles.size()) {
    if (cycles[i] != '(') throw ParseError("expected '(' in cycle string: " + cycles);
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < cycles.size() && cycles[i] != ')') {
      if (cycles[i] == ',' || std::isspace(static_cast<unsigned char>(cycles[i]))) {
        ++i;
        continue;
      }
      int v = 0;
      bool any = false;
      while (i < cycles.size() && std::isdigit(static_cast<unsigned char>(cycles[i]))) {
        v = v * 10 + (cycles[i] - '0');
        ++i;
        any = true;
      }
      if (!any) throw ParseError("bad cycle string: " + cycles);
      cyc.push_back(v);
    }
    if (i >= cycles.size()) throw ParseError("unterminated cycle: " + cycles);
    ++i;  // ')'
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (from < 1 || from > static_cast<int>(degree) || to < 1 || to > static_cast<int>(degree))
        throw ParseError("cycle point out of range: " + cycles);
      if (used[from - 1]) throw ParseError("point repeated across cycles: " + cycles);
      used[from - 1] = true;
      img[from - 1] = static_cast<Point>(to - 1);
    }
    skip_ws();
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<Point> img(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 1 || images[i] > static_cast<int>(images.size()))
      throw ParseError("image out of range");
    img[i] = static_cast<Point>(images[i] - 1);
  }
  return Permutation(std::move(img));
}

std::vector<int> Permutation::one_based_images() const {
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[i] = static_cast<int>(img_[i]) + 1;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(img_.size());
  invert_into(inv.data(), img_.data(), img_.size());
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw DimensionMismatch("degree mismatch in composition");
  std::vector<Point> out(img_.size());
  compose_into(out.data(), img_.data(), rhs.img_.data(), img_.size());
  return Permutation(std::move(out));
}

Permutation Permutation::conjugate_by(const Permutation& g) const {
  return g * (*this) * g.inverse();
}

Permutation Permutation::power(long long e) const {
  std::uint64_t n = order();
  long long r = e % static_cast<long long>(n);
  if (r < 0) r += static_cast<long long>(n);
  Permutation acc = identity(degree());
  Permutation base = *this;
  while (r > 0) {
    if (r & 1) acc = acc * base;
    base = base * base;
    r >>= 1;
  }
  return acc;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img_[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = true;
      continue;
    }
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ',';
      os << (j + 1);
      first = false;
      j = img_[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace blockhh
