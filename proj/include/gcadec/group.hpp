#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcadec/common.hpp"

namespace gcadec {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group with effective multiplication. Elements are dense ids in
/// [0, order). Immutable after construction; safe to share across threads.
///
/// Backends:
///  - Table: dense Cayley table, orders up to Limits::table_backend_max.
///  - Permutation: elements enumerated from generator permutations.
///  - Product: direct product, ids encode factor tuples in mixed radix.
///  - Subgroup / Quotient: derived from a parent group (internal plumbing so
///    decomposition branches never have to fit a dense table).
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  enum class Backend { Table, Permutation, Product, Subgroup, Quotient };

  virtual ~FiniteGroup() = default;

  std::size_t order() const { return order_; }
  Elem identity() const { return identity_; }
  Backend backend() const { return backend_; }

  virtual Elem mul(Elem a, Elem b) const = 0;
  Elem inverse(Elem a) const { return inverse_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inverse(g)); }

  /// A small generating set (greedy; empty for the trivial group).
  const std::vector<Elem>& generators() const { return generators_; }

  virtual std::string label(Elem a) const;
  std::string name() const { return name_; }

  bool is_abelian() const;
  unsigned element_order(Elem a) const;
  /// lcm of element orders.
  std::uint64_t exponent() const;
  /// Elements commuting with everything.
  std::vector<Elem> center() const;
  /// Orbits of conjugation; each class sorted, classes ordered by least member.
  std::vector<std::vector<Elem>> conjugacy_classes() const;

  /// Product group factor access (empty unless Backend::Product).
  const std::vector<GroupPtr>& factors() const { return factors_; }
  /// Encode / decode product tuples. Only valid for the product backend.
  Elem encode_tuple(std::span<const Elem> parts) const;
  std::vector<Elem> decode_tuple(Elem a) const;

  /// Parent-element view for Subgroup/Quotient backends (identity otherwise).
  virtual Elem to_parent(Elem a) const { return a; }
  virtual GroupPtr parent() const { return nullptr; }

  // ---- factories -----------------------------------------------------------

  /// Validates identity, inverses and (up to Limits::assoc_check_max)
  /// associativity. Throws input_error on a malformed table.
  static GroupPtr from_table(std::vector<std::vector<Elem>> table,
                             std::vector<std::string> labels = {},
                             std::string name = "table");

  /// Generators are permutation images of 0..degree-1; the element set is the
  /// closure under composition.
  static GroupPtr from_permutations(unsigned degree,
                                    std::vector<std::vector<unsigned>> generators,
                                    std::string name = "perm");

  static GroupPtr product(std::vector<GroupPtr> factor_groups);

  /// The set `members` of `parent_group` as a group of its own. `members`
  /// must be closed (checked via generator closure).
  static GroupPtr subgroup_group(GroupPtr parent_group, std::vector<Elem> members);

  /// G/N for N normal in G (checked). Returns the quotient together with the
  /// projection table g -> coset id.
  static std::pair<GroupPtr, std::vector<Elem>> quotient_group(GroupPtr g,
                                                               const std::vector<Elem>& normal_members);

  static GroupPtr cyclic(unsigned n);
  static GroupPtr symmetric(unsigned n);
  static GroupPtr alternating(unsigned n);
  static GroupPtr dihedral(unsigned n);  // order 2n
  static GroupPtr quaternion8();
  static GroupPtr sl2_5();

 protected:
  FiniteGroup(Backend b, std::size_t order) : backend_(b), order_(order) {}
  void finish_init(std::string name);  // computes identity/inverses/generators

  Backend backend_;
  std::size_t order_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::vector<GroupPtr> factors_;  // product backend only
  std::string name_;
  mutable int abelian_cache_ = -1;
};

/// Subset of a group's elements, closed under product and inverse.
struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> members;  // sorted ascending
  std::vector<bool> mask;     // size parent->order()

  std::size_t order() const { return members.size(); }
  bool contains(Elem a) const { return mask[a]; }
  bool contains(const Subgroup& other) const;
  bool same_as(const Subgroup& other) const;
  bool is_whole_group() const { return members.size() == parent->order(); }
  bool is_trivial() const { return members.size() == 1; }

  static Subgroup from_members(GroupPtr parent, std::vector<Elem> members);
};

/// Total map G -> G satisfying map(ab) = map(a)map(b); map(e) = e follows.
class Endomorphism {
 public:
  Endomorphism() = default;

  const GroupPtr& group() const { return group_; }
  Elem operator()(Elem a) const { return map_[a]; }
  const std::vector<Elem>& table() const { return map_; }

  bool is_identity() const;
  bool is_trivial() const;  // constant identity element
  bool operator==(const Endomorphism& other) const { return map_ == other.map_; }

  /// h following g: x -> h(g(x)).
  Endomorphism after(const Endomorphism& g) const;
  /// Pointwise product x -> (*this)(x) * other(x). Only a homomorphism when
  /// the two images commute elementwise; callers guarantee that.
  Endomorphism pointwise_product(const Endomorphism& other) const;

  /// Least m >= 1 with h^m = id; requires h bijective (checked).
  unsigned order_as_automorphism() const;
  bool is_bijective() const;

  // ---- construction --------------------------------------------------------

  /// Verifies the homomorphism property: exhaustively over all pairs for small
  /// groups, otherwise map(a*s) = map(a)*map(s) for every a and generator s
  /// (equivalent, by induction over generator words).
  static Endomorphism checked(GroupPtr g, std::vector<Elem> images);
  /// Construction sites that guarantee the property by algebra (compositions,
  /// restrictions, ...) skip the quadratic check.
  static Endomorphism trusted(GroupPtr g, std::vector<Elem> images);

  static Endomorphism identity(GroupPtr g);
  static Endomorphism trivial(GroupPtr g);
  static Endomorphism power(GroupPtr g, std::uint64_t n);  // x -> x^n, checked
  static Endomorphism conjugation(GroupPtr g, Elem by);
  /// Extends images of g->generators() through the enumeration words, then
  /// verifies; throws input_error when the assignment is not a homomorphism.
  static Endomorphism from_generator_images(GroupPtr g, const std::vector<Elem>& images);

 private:
  Endomorphism(GroupPtr g, std::vector<Elem> map) : group_(std::move(g)), map_(std::move(map)) {}
  GroupPtr group_;
  std::vector<Elem> map_;
};

/// Violation witness for the homomorphism check: map(a*b) != map(a)*map(b).
struct HomViolation {
  Elem a, b;
};
std::optional<HomViolation> find_hom_violation(const FiniteGroup& g, const std::vector<Elem>& images);

/// Reduced word in n variables; letters are (variable, +-1). Free reduction is
/// applied on construction.
struct GroupWord {
  unsigned arity = 1;
  std::vector<std::pair<unsigned, int>> letters;

  GroupWord(unsigned arity, std::vector<std::pair<unsigned, int>> raw_letters);

  std::size_t length() const { return letters.size(); }
  Elem eval(const FiniteGroup& g, std::span<const Elem> args) const;
  std::string render() const;  // e.g. "x1^-1*x2^-1*x1*x2"
  bool operator==(const GroupWord& other) const {
    return arity == other.arity && letters == other.letters;
  }

  static GroupWord commutator();       // x1^-1 x2^-1 x1 x2
  static GroupWord power(unsigned n);  // x1^n
  static GroupWord variable();         // x1
};

// ---- group_engine operations ----------------------------------------------

Subgroup image(const Endomorphism& h);
Subgroup kernel(const Endomorphism& h);

Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens);
/// Smallest normal subgroup containing `seed`.
Subgroup normal_closure(GroupPtr g, const std::vector<Elem>& seed);
bool is_normal(const Subgroup& h);
/// Small generating set of an existing subgroup.
std::vector<Elem> subgroup_generators(const Subgroup& h);

/// w(G): subgroup generated by all values of w, by brute force over
/// |G|^arity argument tuples (budgeted).
Subgroup verbal_subgroup(GroupPtr g, const GroupWord& w);

/// All endomorphisms of G, via generator-image candidates. Budgeted by
/// Limits::endo_enum_max_order.
std::vector<Endomorphism> enumerate_endomorphisms(GroupPtr g);

/// True iff phi(H) <= H for every endomorphism phi of G (enumerated; budget
/// applies). The optional out-parameter receives a violating endomorphism.
bool is_fully_invariant(GroupPtr g, const Subgroup& h, Endomorphism* violation = nullptr);

/// Coset group G/N plus the projection map (as an Endomorphism-like table
/// from G ids to quotient ids).
struct QuotientResult {
  GroupPtr quotient;
  std::vector<Elem> projection;  // size |G|, values are quotient ids
};
QuotientResult quotient(GroupPtr g, const Subgroup& n);

/// Bijective homomorphism G1 -> G2 found by backtracking on generator images
/// (pruned by element orders and conjugacy class sizes).
struct Isomorphism {
  GroupPtr from, to;
  std::vector<Elem> map;  // size |G1|
};
std::optional<Isomorphism> find_isomorphism(GroupPtr g1, GroupPtr g2);

/// Decomposition of a characteristically simple group: G = N1 x ... x Nm with
/// the Ni pairwise isomorphic simple groups.
struct SimpleFactorization {
  bool abelian = false;
  unsigned prime = 0;  // abelian case: G ~ (Z/p)^rank
  std::vector<Subgroup> factors;
  GroupPtr reference;  // S, as a standalone group
  /// Per factor: member index (position in factors[i].members) -> reference id.
  std::vector<std::vector<Elem>> factor_to_reference;

  unsigned rank() const { return static_cast<unsigned>(factors.size()); }
};
std::optional<SimpleFactorization> characteristic_simple_decomposition(GroupPtr g);

/// Some nontrivial proper verbal subgroup together with its word, or nullopt
/// when G is characteristically simple. Search order: commutator word, power
/// words x^n over divisors of exp(G), then bounded two-variable word
/// enumeration. Throws internal_error when the search disagrees with the
/// characteristic-simplicity verdict.
struct VerbalCandidate {
  Subgroup subgroup;
  GroupWord word;
};
std::optional<VerbalCandidate> find_nontrivial_proper_verbal(GroupPtr g);
/// All candidates the bounded search can see, deduplicated by subgroup
/// (first word found wins); deterministic order.
std::vector<VerbalCandidate> enumerate_verbal_candidates(GroupPtr g, bool include_word_enumeration = true);

bool is_simple_group(const Subgroup& n);

/// Least m >= 1 with h^m = id for a bijective endomorphism.
unsigned automorphism_order(const Endomorphism& h);

}  // namespace gcadec
