#pragma once

#include "gcadec/gca.hpp"
#include "gcadec/laurent.hpp"

namespace gcadec {

/// Elementary-abelian leaf in coordinates: an isomorphism G ~ (Z/p)^n given by
/// a basis, plus the rule as an n x n matrix over F_p[x_1^±1, ..., x_d^±1].
struct AbelianLeaf {
  unsigned p = 2;
  unsigned n = 0;  // rank
  unsigned d = 1;  // lattice dimension
  GroupPtr group;
  std::vector<Elem> basis;
  std::vector<std::vector<unsigned>> coords;  // element id -> its n coordinates
  PolyMatrix matrix;
};

/// Assembles the leaf from the canonicalized rule; each rule map becomes an
/// F_p matrix in the chosen basis, summed into the coefficient of x^offset.
AbelianLeaf build_matrix(const GCA& gca, const SimpleFactorization& sf);
/// Same with an explicit basis (basis independence tests).
AbelianLeaf build_matrix_with_basis(const GCA& gca, unsigned p, std::vector<Elem> basis);

struct AbelianSurjectivity {
  bool surjective = false;
  LaurentPoly det;
};
/// Surjective iff det(M) != 0 as a Laurent polynomial.
AbelianSurjectivity is_surjective_abelian(const AbelianLeaf& leaf);

struct GcdCheck {
  unsigned i = 0;
  std::uint64_t q = 0;  // p^i - 1
  bool coprime = false;
  std::optional<TPoly> witness;
  LaurentPoly resultant;
};

struct AbelianEvidence {
  AbelianSurjectivity surjectivity;
  TPoly chi;
  std::vector<GcdCheck> checks;
  bool transitive = false;
};

/// Transitive iff surjective and gcd(chi(t), t^(p^i - 1) - 1) = 1 for every
/// i = 1..n over F_p(x_1..x_d).
AbelianEvidence is_transitive_abelian(const AbelianLeaf& leaf);

}  // namespace gcadec
