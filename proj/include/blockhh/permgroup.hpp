#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockhh/perm.hpp"

namespace blockhh {

// Enumeration guard shared by every element-table consumer.
inline constexpr std::uint64_t kDefaultCap = 2'000'000;

// Flat sorted table of all group elements; rows are image arrays of length degree,
// ordered lexicographically, so binary search doubles as canonical indexing.
class ElementTable {
 public:
  static constexpr std::uint32_t npos = 0xFFFFFFFFu;

  std::size_t size() const { return count_; }
  std::size_t degree() const { return degree_; }
  const Point* at(std::uint32_t i) const { return flat_.data() + std::size_t(i) * degree_; }
  Permutation perm(std::uint32_t i) const;
  std::uint32_t index_of_images(const Point* img) const;
  std::uint32_t index_of(const Permutation& g) const;
  std::uint32_t identity_index() const { return id_idx_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t conj(std::uint32_t g, std::uint32_t x) const;  // g x g^-1
  std::uint32_t power(std::uint32_t a, std::uint64_t e) const;
  std::uint64_t element_order(std::uint32_t a) const;

 private:
  friend class PermGroup;
  std::size_t degree_ = 0;
  std::size_t count_ = 0;
  std::vector<Point> flat_;
  std::vector<std::uint32_t> inv_;
  std::uint32_t id_idx_ = 0;
};

// Deterministic Schreier-Sims stabilizer chain; base points are the smallest
// moved points, so orders and membership tests are reproducible.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}
  // Adds a generator; returns true when the group grew.
  bool extend(const Permutation& g);
  bool contains(const Permutation& g) const;
  std::uint64_t order() const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> where;
    std::vector<Point> orbit;
    std::vector<Permutation> transversal;
  };
  void rebuild_orbit(std::size_t lvl);
  std::size_t place(const Permutation& g);
  void verify_from(std::size_t start);
  long long check_level(std::size_t lvl);
  std::size_t degree_;
  std::vector<Level> levels_;
};

struct ClassTable {
  std::vector<std::uint32_t> class_of;   // element index -> class id
  std::vector<std::uint32_t> rep_index;  // class id -> least element index
  std::vector<std::uint64_t> sizes;
  std::size_t count() const { return rep_index.size(); }
};

class PermGroup;

// Subgroup of an enumerated parent, held as a sorted vector of element indices.
class SubgroupHandle {
 public:
  SubgroupHandle() = default;

  std::uint64_t order() const { return members_ ? members_->size() : 0; }
  const std::vector<std::uint32_t>& members() const { return *members_; }
  const PermGroup& parent() const { return *parent_; }
  bool contains_index(std::uint32_t idx) const;
  bool contains(const Permutation& g) const;
  Permutation member_perm(std::size_t k) const;

  // Deterministic small generating set (ascending-index greedy).
  const std::vector<std::uint32_t>& generating_indices() const;
  std::vector<Permutation> generating_perms() const;
  PermGroup as_group(const std::string& name = "") const;

  bool is_p_group(std::uint32_t p) const;
  bool is_normal_in_parent() const;
  bool is_subgroup_of(const SubgroupHandle& other) const;
  SubgroupHandle intersect(const SubgroupHandle& other) const;
  SubgroupHandle conjugated(std::uint32_t g_index) const;
  bool same_set(const SubgroupHandle& other) const;

  // Multiset of parent conjugacy-class ids of the members (conjugation invariant).
  const std::vector<std::uint32_t>& fingerprint() const;

 private:
  friend class PermGroup;
  SubgroupHandle(const PermGroup* parent, std::vector<std::uint32_t> members);
  const PermGroup* parent_ = nullptr;
  std::shared_ptr<const std::vector<std::uint32_t>> members_;
  mutable std::shared_ptr<std::vector<std::uint32_t>> gen_cache_;
  mutable std::shared_ptr<std::vector<std::uint32_t>> fp_cache_;
};

struct CharacteristicPData {
  SubgroupHandle o_p;         // largest normal p-subgroup
  SubgroupHandle o_upper_p;   // generated by all p'-elements
  SubgroupHandle commutator;  // derived subgroup
  std::optional<std::size_t> frattini_rank;  // only when the whole group is a p-group
};

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = "");

  std::size_t degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  std::uint64_t p_part(std::uint32_t p) const;

  const ElementTable& elements(std::uint64_t cap = kDefaultCap) const;
  const ClassTable& conjugacy_classes(std::uint64_t cap = kDefaultCap) const;
  bool enumerated() const { return table_ != nullptr; }

  SubgroupHandle full_handle(std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle trivial_handle(std::uint64_t cap = kDefaultCap) const;
  // Validates closure of the given sorted index set.
  SubgroupHandle subgroup_from_indices(std::vector<std::uint32_t> members,
                                       std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle subgroup_generated(const std::vector<Permutation>& gens,
                                    std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle subgroup_generated_indices(const std::vector<std::uint32_t>& gen_indices,
                                            std::uint64_t cap = kDefaultCap) const;

  SubgroupHandle centralizer(const Permutation& g, std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle centralizer_of_index(std::uint32_t idx, std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle centralizer_of_subgroup(const SubgroupHandle& h,
                                         std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle normalizer(const SubgroupHandle& h, std::uint64_t cap = kDefaultCap) const;
  SubgroupHandle sylow(std::uint32_t p, std::uint64_t cap = kDefaultCap) const;
  CharacteristicPData characteristic_p_data(std::uint32_t p, std::uint64_t cap = kDefaultCap) const;
  // Frattini quotient rank of a p-subgroup handle.
  std::size_t frattini_rank(const SubgroupHandle& h, std::uint32_t p) const;
  SubgroupHandle normal_closure(const std::vector<std::uint32_t>& seed_indices,
                                std::uint64_t cap = kDefaultCap) const;

  // Every p-subgroup up to conjugacy, trivial subgroup included, sorted by
  // (order, fingerprint, member list).
  std::vector<SubgroupHandle> p_subgroup_classes(std::uint32_t p,
                                                 std::uint64_t cap = kDefaultCap) const;
  std::optional<Permutation> is_conjugate_subgroup(const SubgroupHandle& a,
                                                   const SubgroupHandle& b,
                                                   std::uint64_t cap = kDefaultCap) const;

 private:
  friend class SubgroupHandle;
  void ensure_chain() const;
  std::vector<std::uint32_t> closure_from_reduced(std::vector<std::uint32_t> gen_indices) const;
  std::vector<std::uint32_t> reduce_generating_set(const std::vector<std::uint32_t>& candidates,
                                                   std::uint64_t target_order) const;

  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::string name_;
  mutable std::unique_ptr<StabilizerChain> chain_;
  mutable std::unique_ptr<ElementTable> table_;
  mutable std::unique_ptr<ClassTable> classes_;
};

}  // namespace blockhh
