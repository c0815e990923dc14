#include "blockhh/permgroup.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <map>
#include <numeric>
#include <set>

#include "blockhh/errors.hpp"

namespace blockhh {

namespace {

int row_cmp(const Point* a, const Point* b, std::size_t d) { return std::memcmp(a, b, d); }

bool sorted_rows_contain(const std::vector<Point>& flat, std::size_t count, std::size_t d,
                         const Point* row) {
  std::size_t lo = 0, hi = count;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = row_cmp(flat.data() + mid * d, row, d);
    if (c == 0) return true;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return false;
}

}  // namespace

Permutation ElementTable::perm(std::uint32_t i) const {
  return Permutation(std::vector<Point>(at(i), at(i) + degree_));
}

std::uint32_t ElementTable::index_of_images(const Point* img) const {
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = row_cmp(flat_.data() + mid * degree_, img, degree_);
    if (c == 0) return static_cast<std::uint32_t>(mid);
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return npos;
}

std::uint32_t ElementTable::index_of(const Permutation& g) const {
  if (g.degree() != degree_) return npos;
  return index_of_images(g.images().data());
}

std::uint32_t ElementTable::mul(std::uint32_t a, std::uint32_t b) const {
  Point buf[256];
  compose_into(buf, at(a), at(b), degree_);
  std::uint32_t r = index_of_images(buf);
  assert(r != npos);
  return r;
}

std::uint32_t ElementTable::conj(std::uint32_t g, std::uint32_t x) const {
  Point t[256], buf[256];
  compose_into(t, at(x), at(inv_[g]), degree_);
  compose_into(buf, at(g), t, degree_);
  std::uint32_t r = index_of_images(buf);
  assert(r != npos);
  return r;
}

std::uint32_t ElementTable::power(std::uint32_t a, std::uint64_t e) const {
  e %= element_order(a);
  Point acc[256], base[256], tmp[256];
  for (std::size_t i = 0; i < degree_; ++i) acc[i] = static_cast<Point>(i);
  std::memcpy(base, at(a), degree_);
  while (e) {
    if (e & 1) {
      compose_into(tmp, acc, base, degree_);
      std::memcpy(acc, tmp, degree_);
    }
    compose_into(tmp, base, base, degree_);
    std::memcpy(base, tmp, degree_);
    e >>= 1;
  }
  std::uint32_t r = index_of_images(acc);
  assert(r != npos);
  return r;
}

std::uint64_t ElementTable::element_order(std::uint32_t a) const {
  const Point* img = at(a);
  bool seen[256] = {};
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

// A generator stored at level m fixes the first m base points and moves base m,
// so the generating set relevant to level i is everything stored at depth >= i.
void StabilizerChain::rebuild_orbit(std::size_t lvl) {
  Level& L = levels_[lvl];
  L.where.assign(degree_, -1);
  L.orbit.clear();
  L.transversal.clear();
  L.orbit.push_back(L.base);
  L.where[L.base] = 0;
  L.transversal.push_back(Permutation::identity(degree_));
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    for (std::size_t j = lvl; j < levels_.size(); ++j) {
      for (const Permutation& g : levels_[j].gens) {
        Point y = g.apply(L.orbit[k]);
        if (L.where[y] < 0) {
          L.where[y] = static_cast<std::int32_t>(L.orbit.size());
          L.orbit.push_back(y);
          L.transversal.push_back(g * L.transversal[k]);
        }
      }
    }
  }
}

// Stores a non-identity element at its exact depth: the number of leading base
// points it fixes. Appends a fresh level when it fixes every existing base point.
std::size_t StabilizerChain::place(const Permutation& g) {
  std::size_t d = 0;
  while (d < levels_.size() && g.apply(levels_[d].base) == levels_[d].base) ++d;
  if (d == levels_.size()) {
    Level L;
    for (Point i = 0; i < static_cast<Point>(degree_); ++i)
      if (g.apply(i) != i) {
        L.base = i;
        break;
      }
    levels_.push_back(std::move(L));
  }
  levels_[d].gens.push_back(g);
  return d;
}

// Schreier test for one level. Returns the storage depth of the first failing
// residue (always deeper than lvl), or -1 when every Schreier element sifts to
// the identity through the levels below.
long long StabilizerChain::check_level(std::size_t lvl) {
  const Level& L = levels_[lvl];
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    for (std::size_t j = lvl; j < levels_.size(); ++j) {
      for (const Permutation& h : levels_[j].gens) {
        Point y = h.apply(L.orbit[k]);
        Permutation s = L.transversal[L.where[y]].inverse() * (h * L.transversal[k]);
        if (s.is_identity()) continue;
        Permutation r = s;
        std::size_t m = lvl + 1;
        while (m < levels_.size() && !r.is_identity()) {
          Point img = r.apply(levels_[m].base);
          std::int32_t pos = levels_[m].where[img];
          if (pos < 0) break;
          r = levels_[m].transversal[pos].inverse() * r;
          ++m;
        }
        if (r.is_identity()) continue;
        return static_cast<long long>(place(r));
      }
    }
  }
  return -1;
}

// Bottom-up verification: levels deeper than the cursor already satisfy the
// Schreier condition, and inserting a residue at depth m only invalidates
// levels at or above m, so the cursor jumps there and resumes.
void StabilizerChain::verify_from(std::size_t start) {
  long long i = static_cast<long long>(start);
  while (i >= 0) {
    rebuild_orbit(static_cast<std::size_t>(i));
    long long m = check_level(static_cast<std::size_t>(i));
    i = (m < 0) ? i - 1 : m;
  }
}

bool StabilizerChain::extend(const Permutation& g) {
  if (g.degree() != degree_) throw DimensionMismatch("stabilizer chain degree mismatch");
  if (g.is_identity() || contains(g)) return false;
  verify_from(place(g));
  return true;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  Permutation r = g;
  for (const Level& L : levels_) {
    if (r.is_identity()) return true;
    Point img = r.apply(L.base);
    std::int32_t pos = L.where[img];
    if (pos < 0) return false;
    r = L.transversal[pos].inverse() * r;
  }
  return r.is_identity();
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t o = 1;
  for (const Level& L : levels_) o *= L.orbit.size();
  return o;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name)
    : degree_(degree), gens_(std::move(generators)), name_(std::move(name)) {
  if (degree_ == 0 || degree_ > 255) throw InvalidStructure("group degree out of range");
  for (const Permutation& g : gens_)
    if (g.degree() != degree_) throw DimensionMismatch("generator degree mismatch");
}

void PermGroup::ensure_chain() const {
  if (chain_) return;
  auto chain = std::make_unique<StabilizerChain>(degree_);
  for (const Permutation& g : gens_) chain->extend(g);
  chain_ = std::move(chain);
}

std::uint64_t PermGroup::order() const {
  ensure_chain();
  return chain_->order();
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  ensure_chain();
  return chain_->contains(g);
}

std::uint64_t PermGroup::p_part(std::uint32_t p) const {
  std::uint64_t o = order(), part = 1;
  while (o % p == 0) {
    o /= p;
    part *= p;
  }
  return part;
}

const ElementTable& PermGroup::elements(std::uint64_t cap) const {
  if (table_) return *table_;
  std::uint64_t n = order();
  if (n > cap)
    throw CapExceeded("group order " + std::to_string(n) + " exceeds enumeration cap " +
                      std::to_string(cap));
  const std::size_t d = degree_;
  auto tab = std::make_unique<ElementTable>();
  tab->degree_ = d;

  std::vector<Point> all(d);
  std::iota(all.begin(), all.end(), Point{0});
  std::size_t count = 1;
  std::vector<Point> frontier = all;

  std::vector<const Point*> gimg;
  for (const Permutation& g : gens_) gimg.push_back(g.images().data());

  while (!frontier.empty() && count < n) {
    std::size_t fr = frontier.size() / d;
    std::vector<Point> batch(fr * gimg.size() * d);
    std::size_t rows = 0;
    for (std::size_t i = 0; i < fr; ++i)
      for (const Point* g : gimg) {
        compose_into(batch.data() + rows * d, frontier.data() + i * d, g, d);
        ++rows;
      }
    std::vector<std::uint32_t> idx(rows);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return row_cmp(batch.data() + std::size_t(a) * d, batch.data() + std::size_t(b) * d, d) < 0;
    });
    std::vector<Point> fresh;
    const Point* prev = nullptr;
    for (std::uint32_t k : idx) {
      const Point* r = batch.data() + std::size_t(k) * d;
      if (prev && row_cmp(prev, r, d) == 0) continue;
      prev = r;
      if (!sorted_rows_contain(all, count, d, r)) fresh.insert(fresh.end(), r, r + d);
    }
    if (fresh.empty()) break;
    std::size_t fc = fresh.size() / d;
    all.resize((count + fc) * d);
    std::size_t i = count, j = fc, w = count + fc;
    while (j > 0) {
      if (i > 0 && row_cmp(all.data() + (i - 1) * d, fresh.data() + (j - 1) * d, d) > 0) {
        std::memmove(all.data() + (w - 1) * d, all.data() + (i - 1) * d, d);
        --i;
      } else {
        std::memcpy(all.data() + (w - 1) * d, fresh.data() + (j - 1) * d, d);
        --j;
      }
      --w;
    }
    count += fc;
    frontier = std::move(fresh);
  }
  if (count != n) throw InvalidStructure("enumeration did not reach the group order");
  tab->flat_ = std::move(all);
  tab->count_ = count;

  tab->inv_.resize(count);
  Point buf[256];
  for (std::uint32_t i = 0; i < count; ++i) {
    invert_into(buf, tab->at(i), d);
    tab->inv_[i] = tab->index_of_images(buf);
  }
  for (std::size_t i = 0; i < d; ++i) buf[i] = static_cast<Point>(i);
  tab->id_idx_ = tab->index_of_images(buf);
  table_ = std::move(tab);
  return *table_;
}

const ClassTable& PermGroup::conjugacy_classes(std::uint64_t cap) const {
  if (classes_) return *classes_;
  const ElementTable& T = elements(cap);
  const std::size_t d = degree_;
  std::size_t n = T.size();
  auto ct = std::make_unique<ClassTable>();
  ct->class_of.assign(n, ElementTable::npos);

  struct GenPair {
    const Point* g;
    const Point* ginv;
  };
  std::vector<GenPair> gps;
  std::vector<std::vector<Point>> inv_storage;
  for (const Permutation& g : gens_) {
    inv_storage.push_back(g.inverse().images());
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    gps.push_back({gens_[i].images().data(), inv_storage[i].data()});

  std::vector<std::uint32_t> queue;
  Point t[256], c[256];
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ct->class_of[i] != ElementTable::npos) continue;
    std::uint32_t id = static_cast<std::uint32_t>(ct->rep_index.size());
    ct->rep_index.push_back(i);
    ct->class_of[i] = id;
    std::uint64_t size = 1;
    queue.assign(1, i);
    while (!queue.empty()) {
      std::uint32_t x = queue.back();
      queue.pop_back();
      for (const GenPair& gp : gps) {
        compose_into(t, T.at(x), gp.ginv, d);
        compose_into(c, gp.g, t, d);
        std::uint32_t y = T.index_of_images(c);
        if (ct->class_of[y] == ElementTable::npos) {
          ct->class_of[y] = id;
          ++size;
          queue.push_back(y);
        }
      }
    }
    ct->sizes.push_back(size);
  }
  classes_ = std::move(ct);
  return *classes_;
}

SubgroupHandle::SubgroupHandle(const PermGroup* parent, std::vector<std::uint32_t> members)
    : parent_(parent),
      members_(std::make_shared<const std::vector<std::uint32_t>>(std::move(members))) {}

bool SubgroupHandle::contains_index(std::uint32_t idx) const {
  return std::binary_search(members_->begin(), members_->end(), idx);
}

bool SubgroupHandle::contains(const Permutation& g) const {
  std::uint32_t idx = parent_->table_->index_of(g);
  return idx != ElementTable::npos && contains_index(idx);
}

Permutation SubgroupHandle::member_perm(std::size_t k) const {
  return parent_->table_->perm((*members_)[k]);
}

const std::vector<std::uint32_t>& SubgroupHandle::generating_indices() const {
  if (gen_cache_) return *gen_cache_;
  auto gens = std::make_shared<std::vector<std::uint32_t>>();
  StabilizerChain chain(parent_->degree());
  const ElementTable& T = *parent_->table_;
  for (std::uint32_t idx : *members_) {
    if (chain.order() == members_->size()) break;
    if (chain.extend(T.perm(idx))) gens->push_back(idx);
  }
  gen_cache_ = std::move(gens);
  return *gen_cache_;
}

std::vector<Permutation> SubgroupHandle::generating_perms() const {
  std::vector<Permutation> out;
  for (std::uint32_t idx : generating_indices()) out.push_back(parent_->table_->perm(idx));
  if (out.empty()) out.push_back(Permutation::identity(parent_->degree()));
  return out;
}

PermGroup SubgroupHandle::as_group(const std::string& name) const {
  return PermGroup(parent_->degree(), generating_perms(), name);
}

bool SubgroupHandle::is_p_group(std::uint32_t p) const {
  std::uint64_t o = order();
  while (o % p == 0) o /= p;
  return o == 1;
}

bool SubgroupHandle::is_normal_in_parent() const {
  const ElementTable& T = *parent_->table_;
  const auto& gens = generating_indices();
  for (std::uint32_t g = 0; g < T.size(); ++g)
    for (std::uint32_t s : gens)
      if (!contains_index(T.conj(g, s))) return false;
  return true;
}

bool SubgroupHandle::is_subgroup_of(const SubgroupHandle& other) const {
  return std::includes(other.members_->begin(), other.members_->end(), members_->begin(),
                       members_->end());
}

SubgroupHandle SubgroupHandle::intersect(const SubgroupHandle& other) const {
  std::vector<std::uint32_t> out;
  std::set_intersection(members_->begin(), members_->end(), other.members_->begin(),
                        other.members_->end(), std::back_inserter(out));
  return SubgroupHandle(parent_, std::move(out));
}

SubgroupHandle SubgroupHandle::conjugated(std::uint32_t g_index) const {
  const ElementTable& T = *parent_->table_;
  std::vector<std::uint32_t> out;
  out.reserve(members_->size());
  for (std::uint32_t m : *members_) out.push_back(T.conj(g_index, m));
  std::sort(out.begin(), out.end());
  return SubgroupHandle(parent_, std::move(out));
}

bool SubgroupHandle::same_set(const SubgroupHandle& other) const {
  return parent_ == other.parent_ && *members_ == *other.members_;
}

const std::vector<std::uint32_t>& SubgroupHandle::fingerprint() const {
  if (fp_cache_) return *fp_cache_;
  assert(parent_->classes_ && "conjugacy classes must be built before fingerprints");
  auto fp = std::make_shared<std::vector<std::uint32_t>>();
  fp->reserve(members_->size());
  for (std::uint32_t m : *members_) fp->push_back(parent_->classes_->class_of[m]);
  std::sort(fp->begin(), fp->end());
  fp_cache_ = std::move(fp);
  return *fp_cache_;
}

SubgroupHandle PermGroup::full_handle(std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::vector<std::uint32_t> all(T.size());
  std::iota(all.begin(), all.end(), 0u);
  return SubgroupHandle(this, std::move(all));
}

SubgroupHandle PermGroup::trivial_handle(std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  return SubgroupHandle(this, {T.identity_index()});
}

std::vector<std::uint32_t> PermGroup::closure_from_reduced(
    std::vector<std::uint32_t> gen_indices) const {
  const ElementTable& T = *table_;
  std::vector<bool> in(T.size(), false);
  std::vector<std::uint32_t> out, work;
  std::uint32_t id = T.identity_index();
  in[id] = true;
  out.push_back(id);
  work.push_back(id);
  while (!work.empty()) {
    std::uint32_t a = work.back();
    work.pop_back();
    for (std::uint32_t g : gen_indices) {
      std::uint32_t b = T.mul(a, g);
      if (!in[b]) {
        in[b] = true;
        out.push_back(b);
        work.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> PermGroup::reduce_generating_set(
    const std::vector<std::uint32_t>& candidates, std::uint64_t target_order) const {
  const ElementTable& T = *table_;
  StabilizerChain chain(degree_);
  std::vector<std::uint32_t> kept;
  for (std::uint32_t idx : candidates) {
    if (target_order && chain.order() == target_order) break;
    if (chain.extend(T.perm(idx))) kept.push_back(idx);
  }
  return kept;
}

SubgroupHandle PermGroup::subgroup_from_indices(std::vector<std::uint32_t> members,
                                                std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || !std::binary_search(members.begin(), members.end(), T.identity_index()))
    throw NotASubgroup("member set does not contain the identity");
  for (std::uint32_t m : members)
    if (m >= T.size()) throw NotAMember("element index out of range");
  StabilizerChain chain(degree_);
  for (std::uint32_t idx : members) chain.extend(T.perm(idx));
  if (chain.order() != members.size())
    throw NotASubgroup("member set is not closed under the group operation");
  return SubgroupHandle(this, std::move(members));
}

SubgroupHandle PermGroup::subgroup_generated(const std::vector<Permutation>& gens,
                                             std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::vector<std::uint32_t> idx;
  for (const Permutation& g : gens) {
    std::uint32_t i = T.index_of(g);
    if (i == ElementTable::npos) throw NotAMember("generator lies outside the group");
    idx.push_back(i);
  }
  return subgroup_generated_indices(idx, cap);
}

SubgroupHandle PermGroup::subgroup_generated_indices(const std::vector<std::uint32_t>& gen_indices,
                                                     std::uint64_t cap) const {
  elements(cap);
  std::vector<std::uint32_t> reduced = reduce_generating_set(gen_indices, 0);
  return SubgroupHandle(this, closure_from_reduced(std::move(reduced)));
}

SubgroupHandle PermGroup::centralizer_of_index(std::uint32_t idx, std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  if (idx >= T.size()) throw NotAMember("element index out of range");
  const std::size_t d = degree_;
  const Point* x = T.at(idx);
  std::vector<std::uint32_t> out;
  Point a[256], b[256];
  for (std::uint32_t i = 0; i < T.size(); ++i) {
    compose_into(a, T.at(i), x, d);
    compose_into(b, x, T.at(i), d);
    if (row_cmp(a, b, d) == 0) out.push_back(i);
  }
  return SubgroupHandle(this, std::move(out));
}

SubgroupHandle PermGroup::centralizer(const Permutation& g, std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::uint32_t idx = T.index_of(g);
  if (idx == ElementTable::npos) throw NotAMember("element lies outside the group");
  return centralizer_of_index(idx, cap);
}

SubgroupHandle PermGroup::centralizer_of_subgroup(const SubgroupHandle& h,
                                                  std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  if (&h.parent() != this) throw NotASubgroup("handle belongs to a different group");
  const std::size_t d = degree_;
  std::vector<const Point*> gens;
  for (std::uint32_t gi : h.generating_indices()) gens.push_back(T.at(gi));
  std::vector<std::uint32_t> out;
  Point a[256], b[256];
  for (std::uint32_t i = 0; i < T.size(); ++i) {
    bool ok = true;
    for (const Point* x : gens) {
      compose_into(a, T.at(i), x, d);
      compose_into(b, x, T.at(i), d);
      if (row_cmp(a, b, d) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(i);
  }
  return SubgroupHandle(this, std::move(out));
}

SubgroupHandle PermGroup::normalizer(const SubgroupHandle& h, std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  if (&h.parent() != this) throw NotASubgroup("handle belongs to a different group");
  const std::size_t d = degree_;
  const auto& hgens = h.generating_indices();
  const auto& hm = h.members();
  std::vector<std::uint32_t> out;
  Point t[256], c[256];
  for (std::uint32_t g = 0; g < T.size(); ++g) {
    const Point* gi = T.at(g);
    const Point* gv = T.at(T.inverse(g));
    bool ok = true;
    for (std::uint32_t s : hgens) {
      compose_into(t, T.at(s), gv, d);
      compose_into(c, gi, t, d);
      // Binary search the conjugate among the subgroup's sorted rows.
      std::size_t lo = 0, hi = hm.size();
      bool found = false;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        int cmp = row_cmp(T.at(hm[mid]), c, d);
        if (cmp == 0) {
          found = true;
          break;
        }
        if (cmp < 0)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(g);
  }
  return SubgroupHandle(this, std::move(out));
}

SubgroupHandle PermGroup::sylow(std::uint32_t p, std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::uint64_t target = p_part(p);
  if (target == 1) return trivial_handle(cap);
  // Seed with a maximal p-power-order element, then grow through normalizers.
  std::uint64_t best_order = 1;
  std::uint32_t best = T.identity_index();
  for (std::uint32_t i = 0; i < T.size(); ++i) {
    std::uint64_t m = T.element_order(i);
    std::uint64_t q = m;
    while (q % p == 0) q /= p;
    if (q == 1 && m > best_order) {
      best_order = m;
      best = i;
    }
  }
  std::vector<std::uint32_t> gens{best};
  SubgroupHandle S(this, closure_from_reduced(gens));
  while (S.order() < target) {
    SubgroupHandle N = normalizer(S, cap);
    std::uint32_t grow = ElementTable::npos;
    for (std::uint32_t y : N.members()) {
      if (S.contains_index(y)) continue;
      std::uint64_t m = T.element_order(y);
      std::uint64_t q = m;
      while (q % p == 0) q /= p;
      if (q == 1) {
        grow = y;
        break;
      }
    }
    if (grow == ElementTable::npos)
      throw InvalidStructure("sylow growth stalled below the full p-part");
    gens.push_back(grow);
    S = SubgroupHandle(this, closure_from_reduced(gens));
  }
  return S;
}

SubgroupHandle PermGroup::normal_closure(const std::vector<std::uint32_t>& seed_indices,
                                         std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  std::vector<std::uint32_t> seeds = reduce_generating_set(seed_indices, 0);
  std::vector<std::uint32_t> ggens;
  for (const Permutation& g : gens_) ggens.push_back(T.index_of(g));
  std::vector<bool> in(T.size(), false);
  std::vector<std::uint32_t> out, work;
  std::uint32_t id = T.identity_index();
  in[id] = true;
  out.push_back(id);
  work.push_back(id);
  while (!work.empty()) {
    std::uint32_t a = work.back();
    work.pop_back();
    auto visit = [&](std::uint32_t b) {
      if (!in[b]) {
        in[b] = true;
        out.push_back(b);
        work.push_back(b);
      }
    };
    for (std::uint32_t s : seeds) visit(T.mul(a, s));
    for (std::uint32_t g : ggens) visit(T.conj(g, a));
  }
  std::sort(out.begin(), out.end());
  return SubgroupHandle(this, std::move(out));
}

CharacteristicPData PermGroup::characteristic_p_data(std::uint32_t p, std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  CharacteristicPData out;

  // O_p: shrink a Sylow subgroup by intersecting with non-fixing conjugates.
  SubgroupHandle K = sylow(p, cap);
  while (K.order() > 1) {
    const auto& kgens = K.generating_indices();
    std::uint32_t bad = ElementTable::npos;
    for (std::uint32_t g = 0; g < T.size() && bad == ElementTable::npos; ++g)
      for (std::uint32_t s : kgens)
        if (!K.contains_index(T.conj(g, s))) {
          bad = g;
          break;
        }
    if (bad == ElementTable::npos) break;
    K = K.intersect(K.conjugated(bad));
  }
  out.o_p = K;

  // O^p: generated by the p'-parts of all elements.
  {
    std::vector<bool> seen(T.size(), false);
    std::vector<std::uint32_t> parts;
    for (std::uint32_t i = 0; i < T.size(); ++i) {
      std::uint64_t m = T.element_order(i);
      std::uint64_t pa = 1;
      while (m % p == 0) {
        m /= p;
        pa *= p;
      }
      std::uint32_t y = T.power(i, pa);
      if (!seen[y]) {
        seen[y] = true;
        parts.push_back(y);
      }
    }
    std::vector<std::uint32_t> reduced = reduce_generating_set(parts, 0);
    out.o_upper_p = SubgroupHandle(this, closure_from_reduced(reduced));
  }

  // Derived subgroup: normal closure of the generator commutators.
  {
    std::vector<std::uint32_t> seeds;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j) {
        Permutation c =
            gens_[i].inverse() * gens_[j].inverse() * gens_[i] * gens_[j];
        if (!c.is_identity()) seeds.push_back(T.index_of(c));
      }
    if (seeds.empty())
      out.commutator = trivial_handle(cap);
    else
      out.commutator = normal_closure(seeds, cap);
  }

  std::uint64_t o = order(), q = o;
  while (q % p == 0) q /= p;
  if (q == 1) out.frattini_rank = frattini_rank(full_handle(cap), p);
  return out;
}

std::size_t PermGroup::frattini_rank(const SubgroupHandle& h, std::uint32_t p) const {
  if (&h.parent() != this) throw NotASubgroup("handle belongs to a different group");
  if (!h.is_p_group(p)) throw FrattiniRankOnNonPGroup("frattini rank requires a p-group");
  if (h.order() == 1) return 0;
  const ElementTable& T = *table_;
  const auto& hg = h.generating_indices();
  // Frattini subgroup: normal closure inside h of commutators and p-th powers.
  std::vector<std::uint32_t> seeds;
  for (std::size_t i = 0; i < hg.size(); ++i) {
    for (std::size_t j = i + 1; j < hg.size(); ++j) {
      std::uint32_t c = T.mul(T.mul(T.inverse(hg[i]), T.inverse(hg[j])), T.mul(hg[i], hg[j]));
      seeds.push_back(c);
    }
    seeds.push_back(T.power(hg[i], p));
  }
  std::vector<std::uint32_t> red = reduce_generating_set(seeds, 0);
  std::vector<bool> in(T.size(), false);
  std::vector<std::uint32_t> out, work;
  std::uint32_t id = T.identity_index();
  in[id] = true;
  out.push_back(id);
  work.push_back(id);
  while (!work.empty()) {
    std::uint32_t a = work.back();
    work.pop_back();
    auto visit = [&](std::uint32_t b) {
      if (!in[b]) {
        in[b] = true;
        out.push_back(b);
        work.push_back(b);
      }
    };
    for (std::uint32_t s : red) visit(T.mul(a, s));
    for (std::uint32_t g : hg) visit(T.conj(g, a));
  }
  std::uint64_t phi = out.size();
  std::uint64_t quot = h.order() / phi;
  std::size_t rank = 0;
  while (quot > 1) {
    quot /= p;
    ++rank;
  }
  return rank;
}

std::optional<Permutation> PermGroup::is_conjugate_subgroup(const SubgroupHandle& a,
                                                            const SubgroupHandle& b,
                                                            std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  if (&a.parent() != this || &b.parent() != this)
    throw NotASubgroup("handle belongs to a different group");
  if (a.order() != b.order()) return std::nullopt;
  if (a.same_set(b)) return T.perm(T.identity_index());
  conjugacy_classes(cap);
  if (a.fingerprint() != b.fingerprint()) return std::nullopt;
  const std::size_t d = degree_;
  const auto& agens = a.generating_indices();
  const auto& bm = b.members();
  Point t[256], c[256];
  for (std::uint32_t g = 0; g < T.size(); ++g) {
    const Point* gi = T.at(g);
    const Point* gv = T.at(T.inverse(g));
    bool ok = true;
    for (std::uint32_t s : agens) {
      compose_into(t, T.at(s), gv, d);
      compose_into(c, gi, t, d);
      std::size_t lo = 0, hi = bm.size();
      bool found = false;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        int cmp = row_cmp(T.at(bm[mid]), c, d);
        if (cmp == 0) {
          found = true;
          break;
        }
        if (cmp < 0)
          lo = mid + 1;
        else
          hi = mid;
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) return T.perm(g);
  }
  return std::nullopt;
}

std::vector<SubgroupHandle> PermGroup::p_subgroup_classes(std::uint32_t p,
                                                          std::uint64_t cap) const {
  const ElementTable& T = elements(cap);
  const ClassTable& C = conjugacy_classes(cap);
  std::vector<SubgroupHandle> result;
  result.push_back(trivial_handle(cap));
  std::uint64_t target = p_part(p);
  if (target == 1) return result;

  auto accept_layer = [&](std::vector<std::vector<std::uint32_t>> candidates,
                          std::vector<SubgroupHandle>& layer) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto& cand : candidates) {
      SubgroupHandle h(this, std::move(cand));
      bool known = false;
      for (const SubgroupHandle& rep : layer) {
        if (is_conjugate_subgroup(h, rep, cap)) {
          known = true;
          break;
        }
      }
      if (!known) layer.push_back(h);
    }
  };

  // Order-p classes follow from the element classes.
  std::vector<SubgroupHandle> layer;
  {
    std::vector<std::vector<std::uint32_t>> cands;
    for (std::size_t cid = 0; cid < C.count(); ++cid) {
      std::uint32_t r = C.rep_index[cid];
      if (T.element_order(r) != p) continue;
      std::vector<std::uint32_t> members{T.identity_index()};
      std::uint32_t x = r;
      while (x != T.identity_index()) {
        members.push_back(x);
        x = T.mul(x, r);
      }
      std::sort(members.begin(), members.end());
      cands.push_back(std::move(members));
    }
    accept_layer(std::move(cands), layer);
  }

  std::uint64_t layer_order = p;
  while (!layer.empty()) {
    for (const SubgroupHandle& h : layer) result.push_back(h);
    if (layer_order == target) break;
    std::vector<SubgroupHandle> next;
    std::vector<std::vector<std::uint32_t>> cands;
    for (const SubgroupHandle& R : layer) {
      SubgroupHandle N = normalizer(R, cap);
      std::vector<std::uint32_t> rg = R.generating_indices();
      rg.push_back(0);
      for (std::uint32_t y : N.members()) {
        if (R.contains_index(y)) continue;
        std::uint64_t m = T.element_order(y);
        std::uint64_t q = m;
        while (q % p == 0) q /= p;
        if (q != 1) continue;
        if (!R.contains_index(T.power(y, p))) continue;
        rg.back() = y;
        std::vector<std::uint32_t> members = closure_from_reduced(rg);
        assert(members.size() == R.order() * p);
        cands.push_back(std::move(members));
      }
    }
    accept_layer(std::move(cands), next);
    layer = std::move(next);
    layer_order *= p;
  }

  std::sort(result.begin(), result.end(), [](const SubgroupHandle& x, const SubgroupHandle& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    if (x.fingerprint() != y.fingerprint()) return x.fingerprint() < y.fingerprint();
    return x.members() < y.members();
  });
  return result;
}

}  // namespace blockhh
