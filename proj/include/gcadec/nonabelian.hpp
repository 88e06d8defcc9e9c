#pragma once

#include <variant>

#include "gcadec/gca.hpp"

namespace gcadec {

/// Structurally surjective leaf over S^m, S non-abelian simple: canonical rule
/// entries with their image/kernel factor index sets, plus the per-factor
/// routing isomorphisms.
struct SimplePowerLeaf {
  GCA gca;  // canonical form of the automaton
  GroupPtr reference;
  std::vector<Subgroup> factors;
  std::vector<Offset> offsets;                  // canonical entries, in offset order
  std::vector<Endomorphism> homs;               // aligned with offsets
  std::vector<std::vector<unsigned>> images;    // J_i: factor indices of Im(h_i)
  std::vector<std::vector<unsigned>> kernels;   // I_i: factor indices of Ker(h_i)
  struct Route {
    std::size_t entry = 0;    // the unique rule entry acting on this factor
    unsigned target = 0;      // pi(j)
    std::vector<Elem> iso;    // member position in factor j -> member position in factor target
  };
  std::vector<Route> routes;  // indexed by source factor
};

struct StructuralFailure {
  std::string condition;  // which requirement failed
  std::string detail;
};

/// Checks that every image and kernel is a product of factors, the image index
/// sets partition the factors, and every factor is outside exactly one kernel.
/// Success implies surjectivity (the flow identity below composes to a shift);
/// failure refutes it.
std::variant<SimplePowerLeaf, StructuralFailure> structural_surjectivity(
    const GCA& gca, const SimpleFactorization& sf);

struct FlowData {
  std::vector<unsigned> pi;                    // factor permutation
  std::vector<std::vector<unsigned>> cycles;   // ordered by least factor
  std::uint64_t o = 1;                         // order of pi
  std::vector<unsigned> return_orders;         // automorphism order per cycle
  std::uint64_t alpha = 1;                     // lcm of the return orders
  Offset beta;                                 // displacement: F^(o*alpha) = sigma_(-alpha*beta)
};

FlowData build_flow(const SimplePowerLeaf& leaf);

/// One sub-automaton per cycle of pi, each minimal (single-cycle flow).
struct MinimalComponent {
  std::vector<unsigned> factor_ids;  // in the parent leaf
  SimplePowerLeaf leaf;
  FlowData flow;
};
std::vector<MinimalComponent> minimal_components(const SimplePowerLeaf& leaf, const FlowData& flow);

struct NonabelianEvidence {
  bool surjective = false;
  std::optional<StructuralFailure> failure;
  std::optional<FlowData> flow;  // whole-leaf flow when structurally surjective
  struct ComponentReport {
    std::vector<unsigned> factors;
    std::uint64_t o = 1;
    std::uint64_t alpha = 1;
    Offset beta;
    Offset alpha_beta;
    bool transitive = false;
    bool lemma_verified = false;
  };
  std::vector<ComponentReport> components;
  bool transitive = false;
};

/// Transitive iff structurally surjective and every minimal component has a
/// nonzero displacement. With verify_lemma set, the shift identity
/// F^(o*alpha) = sigma_(-alpha*beta) is machine-checked per component and a
/// mismatch is a hard error.
NonabelianEvidence is_transitive_nonabelian(const GCA& gca, const SimpleFactorization& sf,
                                            bool verify_lemma = false);

std::string render_cycles(const std::vector<std::vector<unsigned>>& cycles);

}  // namespace gcadec
