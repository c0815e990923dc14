#include "blockhh/fppoly.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "blockhh/errors.hpp"

namespace blockhh {

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw InvalidStructure("FpPoly: prime must be at least 2");
  for (auto& v : c_) v %= p_;
  trim();
}

FpPoly FpPoly::monomial(std::uint32_t p, std::size_t deg, std::uint32_t c) {
  std::vector<std::uint32_t> v(deg + 1, 0);
  v[deg] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint32_t FpPoly::leading() const {
  if (c_.empty()) throw InvalidStructure("FpPoly::leading: zero polynomial");
  return c_.back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  if (c_.back() == 1) return *this;
  std::uint32_t inv = fp_inverse(c_.back(), p_);
  std::vector<std::uint32_t> out(c_);
  for (auto& v : out) v = v * inv % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<std::uint32_t> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (coeff(i) + o.coeff(i)) % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  std::vector<std::uint32_t> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (coeff(i) + p_ - o.coeff(i)) % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += std::uint64_t(c_[i]) * o.c_[j];
  }
  std::vector<std::uint32_t> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
  return FpPoly(p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
  if (divisor.is_zero()) throw InvalidStructure("FpPoly::divmod: division by zero");
  if (degree() < divisor.degree()) return {zero(p_), *this};
  std::vector<std::uint32_t> rem(c_);
  std::vector<std::uint32_t> quo(c_.size() - divisor.c_.size() + 1, 0);
  std::uint32_t dinv = fp_inverse(divisor.c_.back(), p_);
  for (std::size_t i = rem.size(); i-- >= divisor.c_.size();) {
    std::uint32_t q = rem[i] * dinv % p_;
    if (q) {
      quo[i - (divisor.c_.size() - 1)] = q;
      for (std::size_t j = 0; j < divisor.c_.size(); ++j) {
        std::size_t pos = i - (divisor.c_.size() - 1) + j;
        rem[pos] = (rem[pos] + p_ - q * divisor.c_[j] % p_) % p_;
      }
    }
    if (i == divisor.c_.size() - 1) break;
  }
  rem.resize(divisor.c_.size() - 1);
  return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return zero(p_);
  std::vector<std::uint32_t> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    out[i - 1] = static_cast<std::uint32_t>(std::uint64_t(i) % p_ * c_[i] % p_);
  return FpPoly(p_, std::move(out));
}

std::uint32_t FpPoly::eval(std::uint32_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
  return static_cast<std::uint32_t>(acc);
}

FpMat FpPoly::eval(const FpMat& M) const {
  if (M.rows() != M.cols()) throw DimensionMismatch("FpPoly::eval: matrix not square");
  FpMat acc(p_, M.rows(), M.cols());
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc.mul(M);
    if (c_[i]) acc = acc.add(FpMat::identity(p_, M.rows()).scaled(c_[i]));
  }
  return acc;
}

FpPoly FpPoly::pow_mod(std::uint64_t e, const FpPoly& mod) const {
  FpPoly base = *this % mod;
  FpPoly acc = one(p_);
  while (e) {
    if (e & 1) acc = acc * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return acc;
}

std::string FpPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
    if (i >= 1) {
      if (c_[i] != 1) out += "*";
      out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out;
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly poly_lcm(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.prime());
  return ((a * b) / poly_gcd(a, b)).monic();
}

FpPoly minimal_polynomial(const FpMat& M) {
  if (M.rows() != M.cols()) throw DimensionMismatch("minimal_polynomial: matrix not square");
  std::uint32_t p = M.prime();
  std::size_t n = M.rows();
  if (n == 0) return FpPoly::one(p);
  FpPoly L = FpPoly::one(p);
  for (std::size_t i = 0; i < n; ++i) {
    // Skip the basis vector if the running lcm already annihilates it.
    std::vector<std::uint32_t> e(n, 0);
    e[i] = 1;
    {
      std::vector<std::uint32_t> acc(n, 0), w = e;
      for (std::size_t j = 0; j <= static_cast<std::size_t>(L.degree()); ++j) {
        std::uint32_t cj = L.coeff(j);
        if (cj)
          for (std::size_t t = 0; t < n; ++t) acc[t] = (acc[t] + cj * w[t]) % p;
        if (j < static_cast<std::size_t>(L.degree())) w = M.mul_vec(w);
      }
      bool zero = std::all_of(acc.begin(), acc.end(), [](std::uint32_t v) { return v == 0; });
      if (zero) continue;
    }
    // Krylov iterates of e until dependence; solve for the relation.
    FpMat iterates(p, 0, n);
    StreamEliminator elim(p, n);
    std::vector<std::uint32_t> v = e;
    while (true) {
      if (!elim.add_row(v)) break;
      iterates.append_row(v);
      v = M.mul_vec(v);
    }
    std::size_t k = iterates.rows();
    SolveResult rel = fp_solve(iterates.transpose(), v);
    if (!rel.consistent) throw InvalidStructure("minimal_polynomial: dependence solve failed");
    std::vector<std::uint32_t> g(k + 1, 0);
    g[k] = 1;
    for (std::size_t j = 0; j < k; ++j) g[j] = (p - rel.solution[j]) % p;
    L = poly_lcm(L, FpPoly(p, std::move(g)));
  }
  return L;
}

namespace {

FpPoly random_poly(std::uint32_t p, std::size_t max_deg, std::mt19937_64& rng) {
  std::vector<std::uint32_t> c(max_deg + 1);
  for (auto& v : c) v = static_cast<std::uint32_t>(rng() % p);
  return FpPoly(p, std::move(c));
}

// x^p mod f via binary powering (p <= 251, cheap at these degrees).
FpPoly frobenius_step(const FpPoly& a, const FpPoly& f) {
  return a.pow_mod(f.prime(), f);
}

// Splits a squarefree product of irreducibles all of degree d.
void equal_degree_split(const FpPoly& h, std::size_t d, std::mt19937_64& rng,
                        std::vector<FpPoly>& out) {
  std::uint32_t p = h.prime();
  if (static_cast<std::size_t>(h.degree()) == d) {
    out.push_back(h.monic());
    return;
  }
  while (true) {
    // Trace map a + a^p + ... + a^{p^(d-1)} lands in F_p modulo each factor.
    FpPoly a = random_poly(p, static_cast<std::size_t>(h.degree()) - 1, rng);
    FpPoly tr = a % h;
    FpPoly pw = a % h;
    for (std::size_t j = 1; j < d; ++j) {
      pw = frobenius_step(pw, h);
      tr = (tr + pw) % h;
    }
    for (std::uint32_t c = 0; c < p; ++c) {
      FpPoly g = poly_gcd(tr - FpPoly::constant(p, c), h);
      if (g.degree() > 0 && g.degree() < h.degree()) {
        equal_degree_split(g, d, rng, out);
        equal_degree_split((h / g).monic(), d, rng, out);
        return;
      }
    }
  }
}

// Distinct-degree stage on squarefree monic g.
void factor_squarefree(const FpPoly& g0, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  std::uint32_t p = g0.prime();
  FpPoly g = g0.monic();
  FpPoly h = FpPoly::x(p) % g;
  std::size_t d = 0;
  while (g.degree() > 0) {
    ++d;
    if (2 * d > static_cast<std::size_t>(g.degree())) {
      out.push_back(g.monic());
      return;
    }
    h = frobenius_step(h, g);
    FpPoly gd = poly_gcd(h - FpPoly::x(p), g);
    if (gd.degree() > 0) {
      equal_degree_split(gd, d, rng, out);
      g = (g / gd).monic();
      h = h % g;
    }
  }
}

FpPoly pth_root(const FpPoly& f) {
  // Coefficients lie in F_p, so f(X) = u(X)^p exactly when f = u(X^p).
  std::uint32_t p = f.prime();
  std::vector<std::uint32_t> c;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); i += p) c.push_back(f.coeff(i));
  return FpPoly(p, std::move(c));
}

void factor_rec(const FpPoly& f0, unsigned mult, std::mt19937_64& rng,
                std::map<std::vector<std::uint32_t>, unsigned>& found) {
  std::uint32_t p = f0.prime();
  FpPoly f = f0.monic();
  if (f.degree() <= 0) return;
  FpPoly der = f.derivative();
  if (der.is_zero()) {
    factor_rec(pth_root(f), mult * p, rng, found);
    return;
  }
  FpPoly c = poly_gcd(f, der);
  FpPoly w = (f / c).monic();
  unsigned i = 1;
  while (!w.is_one()) {
    FpPoly y = poly_gcd(w, c);
    FpPoly z = (w / y).monic();
    if (z.degree() > 0) {
      std::vector<FpPoly> irr;
      factor_squarefree(z, rng, irr);
      for (const auto& q : irr) found[q.coeffs()] += mult * i;
    }
    ++i;
    w = y;
    c = (c / y).monic();
  }
  if (c.degree() > 0) factor_rec(c, mult, rng, found);
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor(const FpPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw InvalidStructure("factor: zero polynomial");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::map<std::vector<std::uint32_t>, unsigned> found;
  factor_rec(f, 1, rng, found);
  std::vector<std::pair<FpPoly, unsigned>> out;
  out.reserve(found.size());
  for (const auto& [coeffs, mult] : found) out.emplace_back(FpPoly(f.prime(), coeffs), mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return out;
}

bool is_irreducible(const FpPoly& f, std::uint64_t seed) {
  if (f.degree() <= 0) return false;
  auto fs = factor(f, seed);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace blockhh
