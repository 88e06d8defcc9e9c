#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "gcadec/group.hpp"

namespace gcadec {

/// Ordered neighbor offsets of a d-dimensional local rule.
struct NeighborVector {
  unsigned dim = 1;
  std::vector<Offset> offsets;
};

/// Tuple of endomorphisms applied at the neighbor offsets; the product
/// defining the rule is well-defined because the images commute pairwise.
struct LocalRule {
  GroupPtr group;
  std::vector<Endomorphism> homs;
};

struct CommutingViolation {
  std::size_t i, j;  // rule positions
  Elem a, b;         // witnesses with h_i(a) h_j(b) != h_j(b) h_i(a)
};

/// A d-dimensional group cellular automaton given by its local rule.
class GCA {
 public:
  GCA(GroupPtr group, NeighborVector neighbors, std::vector<Endomorphism> homs);

  const GroupPtr& group() const { return group_; }
  unsigned dim() const { return neighbors_.dim; }
  const NeighborVector& neighbors() const { return neighbors_; }
  const std::vector<Endomorphism>& homs() const { return rule_.homs; }
  std::size_t arity() const { return rule_.homs.size(); }

 private:
  GroupPtr group_;
  NeighborVector neighbors_;
  LocalRule rule_;
};

/// Normal form of a rule: one nontrivial endomorphism per distinct offset.
/// Two GCAs define the same global map iff their canonical rules are equal.
struct CanonicalRule {
  GroupPtr group;
  unsigned dim = 1;
  std::map<Offset, Endomorphism> entries;

  bool operator==(const CanonicalRule& other) const;
};

/// The unique L-periodic configuration extending `cells` (row-major, first
/// coordinate slowest).
struct PeriodicConfig {
  unsigned dim = 1;
  std::vector<std::int64_t> periods;
  std::vector<Elem> cells;

  std::size_t size() const { return cells.size(); }
  std::size_t index_of(std::span<const std::int64_t> v) const;  // reduces mod periods
  Elem at(std::span<const std::int64_t> v) const { return cells[index_of(v)]; }

  static PeriodicConfig constant(const GCA& gca, std::vector<std::int64_t> periods, Elem value);
  static PeriodicConfig random(const GCA& gca, std::vector<std::int64_t> periods, std::mt19937_64& rng);
};

/// Finitely many pinned positions and their values.
struct Pattern {
  std::vector<Offset> positions;
  std::vector<Elem> values;
};

/// Validates the rule (arity/dimension bookkeeping plus the pairwise
/// commuting-images requirement) and constructs the automaton.
GCA make_gca(GroupPtr group, NeighborVector neighbors, std::vector<Endomorphism> homs);
/// Rule positions i<j and group elements whose images fail to commute.
std::optional<CommutingViolation> find_commuting_violation(const GroupPtr& group,
                                                           const std::vector<Endomorphism>& homs);

/// Left-to-right product of h_i(args_i).
Elem apply_local(const LocalRule& rule, std::span<const Elem> args);
Elem apply_local(const GCA& gca, std::span<const Elem> args);

PeriodicConfig step(const GCA& gca, const PeriodicConfig& c);
PeriodicConfig shift_config(const PeriodicConfig& c, const Offset& u);  // sigma_u
PeriodicConfig pointwise_product(const FiniteGroup& g, const PeriodicConfig& a, const PeriodicConfig& b);

CanonicalRule canonicalize(const GCA& gca);
/// GCA computing g1 after g2; offsets add, endomorphisms compose, the result
/// is canonicalized eagerly.
GCA compose(const GCA& g1, const GCA& g2);
/// g^n by repeated squaring (n >= 1).
GCA compose_power(const GCA& gca, std::uint64_t n);
/// sigma_u: the single-neighbor rule with the identity map at offset u.
GCA shift_gca(GroupPtr group, unsigned dim, const Offset& u);
bool equals_shift(const GCA& gca, const Offset& u);
/// GCA from canonical entries (the empty rule becomes the trivial hom at 0).
GCA gca_from_canonical(const CanonicalRule& canon);

/// Restriction to H^{Z^d}; requires h_i(H) <= H for every rule entry.
GCA restrict_rule(const GCA& gca, const Subgroup& h);
/// Induced automaton on (G/H)^{Z^d}; same requirement. Also returns the
/// quotient projection (G id -> quotient id).
struct QuotientRule {
  GCA gca;
  std::vector<Elem> projection;
};
QuotientRule quotient_rule(const GCA& gca, const Subgroup& h);

/// Product automaton F1 x F2 over G1 x G2 (homs act factorwise).
GCA direct_product(const GCA& f1, const GCA& f2);

/// max |offset|_inf over the rule.
std::int64_t neighborhood_radius(const GCA& gca);

}  // namespace gcadec
