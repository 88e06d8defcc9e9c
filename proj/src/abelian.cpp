#include "gcadec/abelian.hpp"

namespace gcadec {

AbelianLeaf build_matrix_with_basis(const GCA& gca, unsigned p, std::vector<Elem> basis) {
  AbelianLeaf leaf;
  leaf.p = std::max(p, 2u);  // rank-0 leaves carry no real prime
  leaf.n = static_cast<unsigned>(basis.size());
  leaf.d = gca.dim();
  leaf.group = gca.group();
  leaf.basis = std::move(basis);

  const auto& g = *gca.group();
  const std::size_t order = g.order();
  std::uint64_t expected = 1;
  for (unsigned i = 0; i < leaf.n; ++i) expected *= leaf.p;
  if (expected != order) throw internal_error("abelian leaf: basis size does not match group order");

  // coordinates: enumerate all exponent combinations of the basis
  leaf.coords.assign(order, {});
  std::vector<unsigned> digits(leaf.n, 0);
  std::vector<bool> seen(order, false);
  for (std::uint64_t code = 0; code < expected; ++code) {
    std::uint64_t rest = code;
    Elem x = g.identity();
    for (unsigned i = 0; i < leaf.n; ++i) {
      digits[i] = static_cast<unsigned>(rest % leaf.p);
      rest /= leaf.p;
      for (unsigned k = 0; k < digits[i]; ++k) x = g.mul(x, leaf.basis[i]);
    }
    if (seen[x]) throw internal_error("abelian leaf: chosen elements are not a basis");
    seen[x] = true;
    leaf.coords[x] = digits;
  }

  // matrix of the canonicalized rule
  leaf.matrix = PolyMatrix(leaf.n, leaf.p, leaf.d);
  for (const auto& [off, hom] : canonicalize(gca).entries) {
    Monomial mono(off.begin(), off.end());
    for (unsigned j = 0; j < leaf.n; ++j) {
      const auto& col = leaf.coords[hom(leaf.basis[j])];
      for (unsigned i = 0; i < leaf.n; ++i)
        if (col[i] != 0)
          leaf.matrix.at(i, j) =
              leaf.matrix.at(i, j) + LaurentPoly::monomial(leaf.p, leaf.d, mono, col[i]);
    }
  }
  return leaf;
}

AbelianLeaf build_matrix(const GCA& gca, const SimpleFactorization& sf) {
  if (!sf.abelian) throw input_error("build_matrix: leaf is not elementary abelian");
  std::vector<Elem> basis;
  for (std::size_t i = 0; i < sf.factors.size(); ++i) {
    // the factor generator is the preimage of 1 under the reference map
    const auto& to_ref = sf.factor_to_reference[i];
    Elem gen = sf.factors[i].members[0];
    bool found = false;
    for (std::size_t k = 0; k < to_ref.size(); ++k)
      if (to_ref[k] == 1) {
        gen = sf.factors[i].members[k];
        found = true;
        break;
      }
    if (!found) throw internal_error("abelian factor has no generator mapped to 1");
    basis.push_back(gen);
  }
  return build_matrix_with_basis(gca, sf.prime, std::move(basis));
}

AbelianSurjectivity is_surjective_abelian(const AbelianLeaf& leaf) {
  AbelianSurjectivity s;
  s.det = determinant(leaf.matrix);
  s.surjective = !s.det.is_zero();
  return s;
}

AbelianEvidence is_transitive_abelian(const AbelianLeaf& leaf) {
  AbelianEvidence ev;
  ev.surjectivity = is_surjective_abelian(leaf);
  ev.chi = char_poly(leaf.matrix);
  ev.transitive = ev.surjectivity.surjective;
  std::uint64_t q = 1;
  for (unsigned i = 1; i <= leaf.n; ++i) {
    q = checked_mul(static_cast<std::int64_t>(q), leaf.p);
    GcdCheck check;
    check.i = i;
    check.q = q - 1;
    auto res = coprime_with_cyclic(ev.chi, check.q);
    check.coprime = res.coprime;
    check.witness = std::move(res.witness);
    check.resultant = std::move(res.resultant);
    if (!check.coprime) ev.transitive = false;
    ev.checks.push_back(std::move(check));
  }
  return ev;
}

}  // namespace gcadec
