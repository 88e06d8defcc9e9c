#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gcadec/group.hpp"

using namespace gcadec;

namespace {

// Independent oracle: all permutations of 0..n-1 as image vectors.
std::vector<std::vector<unsigned>> all_perms(unsigned n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<unsigned>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool perm_is_even(const std::vector<unsigned>& p) {
  unsigned inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

std::vector<std::vector<Elem>> cyclic_table(unsigned n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

}  // namespace

TEST_CASE("make_group: cyclic 2") {
  auto g = FiniteGroup::cyclic(2);
  CHECK(g->order() == 2);
  CHECK(g->identity() == 0);
  CHECK(g->mul(1, 1) == 0);
}

TEST_CASE("make_group: alternating 5 has order 60 (vs even-permutation oracle)") {
  auto a5 = FiniteGroup::alternating(5);
  std::size_t even = 0;
  for (const auto& p : all_perms(5))
    if (perm_is_even(p)) ++even;
  CHECK(even == 60);
  CHECK(a5->order() == even);
}

TEST_CASE("make_group: malformed table rejected") {
  // 0 is an identity but the rest violates associativity; keep rows Latin.
  std::vector<std::vector<Elem>> t{{0, 1, 2, 3, 4},
                                   {1, 0, 3, 4, 2},
                                   {2, 3, 4, 0, 1},
                                   {3, 4, 1, 2, 0},
                                   {4, 2, 0, 1, 3}};
  CHECK_THROWS_AS((void)FiniteGroup::from_table(t), input_error);
}

TEST_CASE("make_group: order bound applies to explicit tables") {
  auto& lim = limits();
  const auto saved = lim.table_backend_max;
  lim.table_backend_max = 4;
  lim.scale = 1.0;
  CHECK_THROWS_AS((void)FiniteGroup::from_table(cyclic_table(6)), budget_error);
  lim.table_backend_max = saved;
  // larger named groups fall back to the permutation backend
  lim.table_backend_max = 100;
  auto s5 = FiniteGroup::symmetric(5);
  CHECK(s5->order() == 120);
  CHECK(s5->backend() == FiniteGroup::Backend::Permutation);
  lim.table_backend_max = saved;
}

TEST_CASE("check_homomorphism: identity and abelian power maps are valid") {
  auto z3 = FiniteGroup::cyclic(3);
  auto id = Endomorphism::identity(z3);
  CHECK(id.is_identity());
  auto sq = Endomorphism::power(z3, 2);  // x -> x^2 on an abelian group
  CHECK(sq(1) == 2);
  CHECK(sq(2) == 1);
}

TEST_CASE("check_homomorphism: x -> x^2 on S3 fails with a genuine witness") {
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<Elem> images(s3->order());
  for (Elem a = 0; a < s3->order(); ++a) images[a] = s3->mul(a, a);
  auto v = find_hom_violation(*s3, images);
  REQUIRE(v.has_value());
  CHECK(images[s3->mul(v->a, v->b)] != s3->mul(images[v->a], images[v->b]));
  CHECK_THROWS_AS((void)Endomorphism::checked(s3, images), input_error);
}

TEST_CASE("image and kernel") {
  auto z6 = FiniteGroup::cyclic(6);
  SUBCASE("identity map") {
    auto id = Endomorphism::identity(z6);
    CHECK(image(id).order() == 6);
    CHECK(kernel(id).order() == 1);
  }
  SUBCASE("constant-identity map") {
    auto tr = Endomorphism::trivial(z6);
    CHECK(image(tr).order() == 1);
    CHECK(kernel(tr).order() == 6);
  }
  SUBCASE("x -> x^3 on Z/6") {
    auto cube = Endomorphism::power(z6, 3);
    CHECK(image(cube).order() == 2);
    CHECK(kernel(cube).order() == 3);
    CHECK(image(cube).contains(3));
    CHECK(kernel(cube).contains(2));
    CHECK(kernel(cube).contains(4));
  }
}

TEST_CASE("subgroup_generated") {
  auto a4 = FiniteGroup::alternating(4);
  SUBCASE("empty set generates the trivial subgroup") {
    auto s = subgroup_generated(a4, {});
    CHECK(s.order() == 1);
    CHECK(s.contains(a4->identity()));
  }
  SUBCASE("a 3-cycle generates an order-3 subgroup") {
    Elem three_cycle = 0;
    for (Elem a = 0; a < a4->order(); ++a)
      if (a4->element_order(a) == 3) {
        three_cycle = a;
        break;
      }
    CHECK(subgroup_generated(a4, {three_cycle}).order() == 3);
  }
  SUBCASE("the standard generators of A5 generate all of it") {
    auto a5 = FiniteGroup::alternating(5);
    CHECK(subgroup_generated(a5, a5->generators()).order() == 60);
  }
}

TEST_CASE("verbal_subgroup") {
  SUBCASE("commutator word on S3 gives A3 (vs even-permutation oracle)") {
    auto s3 = FiniteGroup::symmetric(3);
    auto h = verbal_subgroup(s3, GroupWord::commutator());
    CHECK(h.order() == 3);
    for (Elem x : h.members) CHECK(s3->element_order(x) != 2);  // no transpositions
  }
  SUBCASE("the word x1 gives the whole group") {
    auto q8 = FiniteGroup::quaternion8();
    CHECK(verbal_subgroup(q8, GroupWord::variable()).order() == 8);
  }
  SUBCASE("x^30 on SL(2,5) gives the order-2 center") {
    auto sl = FiniteGroup::sl2_5();
    CHECK(sl->order() == 120);
    auto h = verbal_subgroup(sl, GroupWord::power(30));
    auto z = sl->center();
    CHECK(h.order() == 2);
    CHECK(z.size() == 2);
    CHECK(std::equal(h.members.begin(), h.members.end(), z.begin(), z.end()));
  }
}

TEST_CASE("enumerate_endomorphisms: S3 has exactly 10 (vs all-maps oracle)") {
  auto s3 = FiniteGroup::symmetric(3);
  // oracle: brute force over all 6^6 total maps
  std::size_t hom_count = 0;
  std::vector<Elem> m(6);
  const std::size_t total = 6 * 6 * 6 * 6 * 6 * 6;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (auto& v : m) {
      v = static_cast<Elem>(rest % 6);
      rest /= 6;
    }
    if (!find_hom_violation(*s3, m)) ++hom_count;
  }
  CHECK(hom_count == 10);
  CHECK(enumerate_endomorphisms(s3).size() == hom_count);
}

TEST_CASE("is_fully_invariant") {
  auto s3 = FiniteGroup::symmetric(3);
  SUBCASE("trivial subgroup and the whole group") {
    CHECK(is_fully_invariant(s3, subgroup_generated(s3, {})));
    std::vector<Elem> all(s3->order());
    std::iota(all.begin(), all.end(), 0u);
    CHECK(is_fully_invariant(s3, Subgroup::from_members(s3, all)));
  }
  SUBCASE("the commutator subgroup of S3 is fully invariant") {
    CHECK(is_fully_invariant(s3, verbal_subgroup(s3, GroupWord::commutator())));
  }
  SUBCASE("an order-2 subgroup of S3 is not, and the violation is an endomorphism") {
    Elem t = 0;
    for (Elem a = 0; a < s3->order(); ++a)
      if (s3->element_order(a) == 2) {
        t = a;
        break;
      }
    auto h = subgroup_generated(s3, {t});
    Endomorphism bad;
    CHECK_FALSE(is_fully_invariant(s3, h, &bad));
    bool moved_out = false;
    for (Elem x : h.members)
      if (!h.contains(bad(x))) moved_out = true;
    CHECK(moved_out);
  }
}

TEST_CASE("quotient") {
  auto s3 = FiniteGroup::symmetric(3);
  SUBCASE("G/{e} is isomorphic to G") {
    auto q = quotient(s3, subgroup_generated(s3, {}));
    CHECK(q.quotient->order() == 6);
    CHECK(find_isomorphism(q.quotient, s3).has_value());
  }
  SUBCASE("G/G is trivial") {
    std::vector<Elem> all(s3->order());
    std::iota(all.begin(), all.end(), 0u);
    CHECK(quotient(s3, Subgroup::from_members(s3, all)).quotient->order() == 1);
  }
  SUBCASE("S3/A3 is cyclic of order 2") {
    auto a3 = verbal_subgroup(s3, GroupWord::commutator());
    auto q = quotient(s3, a3);
    CHECK(q.quotient->order() == 2);
    // projection is a surjective homomorphism with kernel exactly A3
    std::set<Elem> hit;
    for (Elem a = 0; a < s3->order(); ++a) {
      hit.insert(q.projection[a]);
      for (Elem b = 0; b < s3->order(); ++b)
        CHECK(q.projection[s3->mul(a, b)] == q.quotient->mul(q.projection[a], q.projection[b]));
    }
    CHECK(hit.size() == 2);
    for (Elem a = 0; a < s3->order(); ++a)
      CHECK((q.projection[a] == q.quotient->identity()) == a3.contains(a));
  }
  SUBCASE("quotient by a non-normal subgroup is rejected") {
    Elem t = 0;
    for (Elem a = 0; a < s3->order(); ++a)
      if (s3->element_order(a) == 2) {
        t = a;
        break;
      }
    CHECK_THROWS_AS((void)quotient(s3, subgroup_generated(s3, {t})), input_error);
  }
}

TEST_CASE("find_nontrivial_proper_verbal") {
  SUBCASE("Z/4 yields {0,2} via the square word") {
    auto z4 = FiniteGroup::cyclic(4);
    auto c = find_nontrivial_proper_verbal(z4);
    REQUIRE(c.has_value());
    CHECK(c->subgroup.order() == 2);
    CHECK(c->subgroup.contains(2));
    CHECK(c->word == GroupWord::power(2));
  }
  SUBCASE("A5 has none") {
    CHECK_FALSE(find_nontrivial_proper_verbal(FiniteGroup::alternating(5)).has_value());
  }
  SUBCASE("SL(2,5) yields the center via x^30") {
    auto sl = FiniteGroup::sl2_5();
    auto c = find_nontrivial_proper_verbal(sl);
    REQUIRE(c.has_value());
    CHECK(c->subgroup.order() == 2);
    CHECK(c->word == GroupWord::power(30));
  }
}

TEST_CASE("characteristic_simple_decomposition") {
  SUBCASE("(Z/2)^2 is elementary abelian with two factors") {
    auto g = FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)});
    auto sf = characteristic_simple_decomposition(g);
    REQUIRE(sf.has_value());
    CHECK(sf->abelian);
    CHECK(sf->prime == 2);
    CHECK(sf->rank() == 2);
    CHECK(sf->reference->order() == 2);
  }
  SUBCASE("S3 is not characteristically simple") {
    CHECK_FALSE(characteristic_simple_decomposition(FiniteGroup::symmetric(3)).has_value());
  }
  SUBCASE("A5 x A5: the two copies are the minimal normal subgroups") {
    auto a5 = FiniteGroup::alternating(5);
    auto g = FiniteGroup::product({a5, a5});
    auto sf = characteristic_simple_decomposition(g);
    REQUIRE(sf.has_value());
    CHECK_FALSE(sf->abelian);
    REQUIRE(sf->rank() == 2);
    CHECK(sf->factors[0].order() == 60);
    CHECK(sf->factors[1].order() == 60);
    CHECK(sf->reference->order() == 60);
    // internal direct product invariants
    std::uint64_t prod = 1;
    for (const auto& f : sf->factors) prod *= f.order();
    CHECK(prod == g->order());
    for (Elem a : sf->factors[0].members)
      for (Elem b : sf->factors[1].members) CHECK(g->mul(a, b) == g->mul(b, a));
    std::size_t common = 0;
    for (Elem a : sf->factors[0].members)
      if (sf->factors[1].contains(a)) ++common;
    CHECK(common == 1);  // only the identity
  }
}

TEST_CASE("isomorphism") {
  SUBCASE("a group is isomorphic to itself") {
    auto d4 = FiniteGroup::dihedral(4);
    auto iso = find_isomorphism(d4, d4);
    REQUIRE(iso.has_value());
  }
  SUBCASE("Z/6 vs S3: none (abelian invariant)") {
    CHECK_FALSE(find_isomorphism(FiniteGroup::cyclic(6), FiniteGroup::symmetric(3)).has_value());
  }
  SUBCASE("the two A5 factors inside A5 x A5 are isomorphic") {
    auto a5 = FiniteGroup::alternating(5);
    auto g = FiniteGroup::product({a5, a5});
    auto sf = characteristic_simple_decomposition(g);
    REQUIRE(sf.has_value());
    auto f0 = FiniteGroup::subgroup_group(g, sf->factors[0].members);
    auto f1 = FiniteGroup::subgroup_group(g, sf->factors[1].members);
    auto iso = find_isomorphism(f0, f1);
    REQUIRE(iso.has_value());
    // bijective homomorphism
    std::set<Elem> img(iso->map.begin(), iso->map.end());
    CHECK(img.size() == f0->order());
    for (Elem a = 0; a < f0->order(); ++a)
      for (Elem b = 0; b < f0->order(); ++b)
        CHECK(iso->map[f0->mul(a, b)] == f1->mul(iso->map[a], iso->map[b]));
  }
}

TEST_CASE("automorphism_order") {
  SUBCASE("identity has order 1") {
    CHECK(automorphism_order(Endomorphism::identity(FiniteGroup::cyclic(7))) == 1);
  }
  SUBCASE("inversion on Z/5 has order 2") {
    auto z5 = FiniteGroup::cyclic(5);
    auto inv = Endomorphism::power(z5, 4);  // x -> x^-1
    CHECK(automorphism_order(inv) == 2);
  }
  SUBCASE("conjugation by a 5-cycle on A5 has order 5") {
    auto a5 = FiniteGroup::alternating(5);
    Elem five = 0;
    for (Elem a = 0; a < a5->order(); ++a)
      if (a5->element_order(a) == 5) {
        five = a;
        break;
      }
    CHECK(automorphism_order(Endomorphism::conjugation(a5, five)) == 5);
  }
  SUBCASE("non-bijective maps are rejected") {
    CHECK_THROWS_AS((void)automorphism_order(Endomorphism::trivial(FiniteGroup::cyclic(3))),
                    input_error);
  }
}

TEST_CASE("verbal subgroups are fully invariant on small groups") {
  for (auto g : {FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), FiniteGroup::symmetric(3),
                 FiniteGroup::dihedral(4), FiniteGroup::quaternion8(), FiniteGroup::alternating(4),
                 FiniteGroup::symmetric(4)}) {
    for (const auto& cand : enumerate_verbal_candidates(g, false))
      CHECK(is_fully_invariant(g, cand.subgroup));
  }
}

TEST_CASE("characteristic simplicity agrees with the verbal search on the corpus") {
  std::vector<GroupPtr> groups{FiniteGroup::cyclic(2),      FiniteGroup::cyclic(3),
                               FiniteGroup::cyclic(4),      FiniteGroup::cyclic(6),
                               FiniteGroup::symmetric(3),   FiniteGroup::dihedral(4),
                               FiniteGroup::quaternion8(),  FiniteGroup::alternating(4),
                               FiniteGroup::symmetric(4),   FiniteGroup::alternating(5),
                               FiniteGroup::sl2_5(),
                               FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)}),
                               FiniteGroup::product({FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)})};
  groups.push_back(FiniteGroup::product({FiniteGroup::alternating(5), FiniteGroup::alternating(5)}));
  for (const auto& g : groups) {
    const bool simple_decomp = characteristic_simple_decomposition(g).has_value();
    const bool no_verbal = !find_nontrivial_proper_verbal(g).has_value();
    CHECK_MESSAGE(simple_decomp == no_verbal, "disagreement on ", g->name());
  }
}

TEST_CASE("group words reduce freely and render") {
  GroupWord w(2, {{0, 1}, {0, -1}, {1, 1}, {1, 1}});
  CHECK(w.letters.size() == 2);
  CHECK(w.render() == "x2^2");
  CHECK(GroupWord::commutator().render() == "x1^-1*x2^-1*x1*x2");
}
