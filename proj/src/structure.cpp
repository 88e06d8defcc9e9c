#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gcadec/group.hpp"

namespace gcadec {

namespace {

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Extends generator images to a full map along the enumeration BFS; returns
/// nullopt when the result is not a homomorphism.
std::optional<std::vector<Elem>> extend_generator_images(const FiniteGroup& g,
                                                         const std::vector<Elem>& gen_images) {
  const auto& gens = g.generators();
  const std::size_t n = g.order();
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> m(n, kUnset);
  m[g.identity()] = g.identity();
  std::vector<Elem> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem a : frontier)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Elem b = g.mul(a, gens[i]);
        if (m[b] == kUnset) {
          m[b] = g.mul(m[a], gen_images[i]);
          next.push_back(b);
        }
      }
    frontier = std::move(next);
  }
  if (find_hom_violation(g, m)) return std::nullopt;
  return m;
}

}  // namespace

QuotientResult quotient(GroupPtr g, const Subgroup& n) {
  if (n.parent.get() != g.get()) throw input_error("quotient: subgroup belongs to a different group");
  if (!is_normal(n)) throw input_error("quotient: subgroup is not normal");
  auto [q, proj] = FiniteGroup::quotient_group(g, n.members);
  return QuotientResult{q, proj};
}

std::vector<Endomorphism> enumerate_endomorphisms(GroupPtr g) {
  const std::size_t n = g->order();
  if (n > limits().scaled(limits().endo_enum_max_order))
    throw budget_error("End(G) enumeration limited to order " +
                       std::to_string(limits().scaled(limits().endo_enum_max_order)));
  const auto& gens = g->generators();
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const unsigned go = g->element_order(gens[i]);
    for (Elem x = 0; x < n; ++x)
      if (go % g->element_order(x) == 0) candidates[i].push_back(x);
  }
  std::vector<Endomorphism> endos;
  std::set<std::vector<Elem>> seen;
  std::vector<Elem> pick(gens.size(), 0);
  std::vector<std::size_t> idx(gens.size(), 0);
  if (gens.empty()) {  // trivial group
    endos.push_back(Endomorphism::identity(g));
    return endos;
  }
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i) pick[i] = candidates[i][idx[i]];
    if (auto m = extend_generator_images(*g, pick)) {
      if (seen.insert(*m).second) endos.push_back(Endomorphism::trusted(g, std::move(*m)));
    }
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == candidates[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == gens.size()) break;
  }
  return endos;
}

bool is_fully_invariant(GroupPtr g, const Subgroup& h, Endomorphism* violation) {
  for (const auto& phi : enumerate_endomorphisms(g)) {
    for (Elem x : h.members)
      if (!h.contains(phi(x))) {
        if (violation) *violation = phi;
        return false;
      }
  }
  return true;
}

std::optional<Isomorphism> find_isomorphism(GroupPtr g1, GroupPtr g2) {
  const std::size_t n = g1->order();
  if (n != g2->order()) return std::nullopt;
  if (g1->is_abelian() != g2->is_abelian()) return std::nullopt;
  if (n == 1) return Isomorphism{g1, g2, {g2->identity()}};

  std::map<unsigned, std::size_t> hist1, hist2;
  for (Elem a = 0; a < n; ++a) {
    ++hist1[g1->element_order(a)];
    ++hist2[g2->element_order(a)];
  }
  if (hist1 != hist2) return std::nullopt;

  std::vector<std::size_t> cls1(n), cls2(n);  // element -> its class size
  std::multiset<std::size_t> sizes1, sizes2;
  for (const auto& c : g1->conjugacy_classes()) {
    sizes1.insert(c.size());
    for (Elem a : c) cls1[a] = c.size();
  }
  for (const auto& c : g2->conjugacy_classes()) {
    sizes2.insert(c.size());
    for (Elem a : c) cls2[a] = c.size();
  }
  if (sizes1 != sizes2) return std::nullopt;

  const auto& gens = g1->generators();
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Elem x = 0; x < n; ++x)
      if (g2->element_order(x) == g1->element_order(gens[i]) && cls2[x] == cls1[gens[i]])
        candidates[i].push_back(x);
    if (candidates[i].empty()) return std::nullopt;
  }

  std::uint64_t attempts = 0;
  const std::uint64_t budget = limits().scaled64(limits().iso_attempt_budget);
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<Elem> pick(gens.size());
  while (true) {
    if (++attempts > budget) throw budget_error("isomorphism search budget exceeded");
    for (std::size_t i = 0; i < gens.size(); ++i) pick[i] = candidates[i][idx[i]];
    // build phi: G1 -> G2 along G1's enumeration, then verify
    constexpr Elem kUnset = static_cast<Elem>(-1);
    std::vector<Elem> m(n, kUnset);
    m[g1->identity()] = g2->identity();
    std::vector<Elem> frontier{g1->identity()};
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem a : frontier)
        for (std::size_t i = 0; i < gens.size(); ++i) {
          const Elem b = g1->mul(a, gens[i]);
          if (m[b] == kUnset) {
            m[b] = g2->mul(m[a], pick[i]);
            next.push_back(b);
          }
        }
      frontier = std::move(next);
    }
    bool ok = true;
    std::vector<bool> seen(n, false);
    for (Elem v : m) {
      if (seen[v]) {
        ok = false;
        break;
      }
      seen[v] = true;
    }
    if (ok) {
      for (Elem a = 0; a < n && ok; ++a)
        for (Elem s : gens)
          if (m[g1->mul(a, s)] != g2->mul(m[a], m[s])) {
            ok = false;
            break;
          }
    }
    if (ok) return Isomorphism{g1, g2, std::move(m)};

    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == candidates[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == gens.size()) return std::nullopt;
  }
}

bool is_simple_group(const Subgroup& n) {
  if (n.order() == 1) return false;
  if (is_prime(n.order())) return true;
  auto sg = FiniteGroup::subgroup_group(n.parent, n.members);
  if (sg->is_abelian()) return false;  // abelian simple groups have prime order
  for (const auto& cls : sg->conjugacy_classes()) {
    if (cls.size() == 1 && cls[0] == sg->identity()) continue;
    const Subgroup closure = normal_closure(sg, {cls[0]});
    if (closure.order() != sg->order()) return false;
  }
  return true;
}

std::optional<SimpleFactorization> characteristic_simple_decomposition(GroupPtr g) {
  const std::size_t n = g->order();
  SimpleFactorization out;

  if (n == 1) {
    out.abelian = true;
    out.prime = 0;
    out.reference = g;
    return out;
  }

  if (g->is_abelian()) {
    const std::uint64_t exp = g->exponent();
    if (!is_prime(exp)) return std::nullopt;
    const auto p = static_cast<unsigned>(exp);
    out.abelian = true;
    out.prime = p;
    // greedy basis of independent generators
    std::vector<Elem> basis;
    Subgroup span = subgroup_generated(g, {});
    for (Elem a = 0; a < n; ++a) {
      if (span.contains(a)) continue;
      basis.push_back(a);
      span = subgroup_generated(g, basis);
      if (span.order() == n) break;
    }
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) expected *= p;
    if (expected != n || span.order() != n)
      throw internal_error("elementary abelian basis extraction failed");
    out.reference = FiniteGroup::cyclic(p);
    for (Elem b : basis) {
      std::vector<Elem> powers;  // b^k in order
      Elem x = g->identity();
      for (unsigned k = 0; k < p; ++k) {
        powers.push_back(x);
        x = g->mul(x, b);
      }
      Subgroup f = Subgroup::from_members(g, powers);
      std::vector<Elem> to_ref(p);
      for (unsigned k = 0; k < p; ++k) {
        const auto pos = std::lower_bound(f.members.begin(), f.members.end(), powers[k]) -
                         f.members.begin();
        to_ref[static_cast<std::size_t>(pos)] = k;
      }
      out.factors.push_back(std::move(f));
      out.factor_to_reference.push_back(std::move(to_ref));
    }
    return out;
  }

  // Non-abelian branch: a direct product of non-abelian simple groups has
  // trivial center, and its minimal normal subgroups are exactly the factors.
  if (g->center().size() != 1) return std::nullopt;

  auto classes = g->conjugacy_classes();
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  std::map<Elem, Subgroup> closure_cache;  // class representative -> normal closure
  auto closure_of = [&](Elem rep) -> const Subgroup& {
    auto it = closure_cache.find(rep);
    if (it == closure_cache.end()) it = closure_cache.emplace(rep, normal_closure(g, {rep})).first;
    return it->second;
  };

  // Shrink N to a minimal normal subgroup by re-seeding from class reps inside it.
  auto refine_to_minimal = [&](Subgroup n_sub) {
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (const auto& cls : classes) {
        if (cls.size() == 1 && cls[0] == g->identity()) continue;
        if (!n_sub.contains(cls[0])) continue;
        const Subgroup& c = closure_of(cls[0]);
        if (c.order() < n_sub.order()) {
          n_sub = c;
          shrunk = true;
          break;
        }
      }
    }
    return n_sub;
  };

  std::vector<Subgroup> accepted;
  Subgroup covered = subgroup_generated(g, {});
  std::vector<Elem> covered_gens;
  for (const auto& cls : classes) {
    if (cls.size() == 1 && cls[0] == g->identity()) continue;
    if (covered.contains(cls[0])) continue;
    Subgroup m = refine_to_minimal(closure_of(cls[0]));
    if (!is_simple_group(m)) return std::nullopt;  // a minimal normal subgroup is not simple
    bool inside_covered = true;
    for (Elem x : m.members)
      if (!covered.contains(x)) {
        inside_covered = false;
        break;
      }
    if (inside_covered) continue;  // refinement rediscovered an accepted factor
    // distinct minimal normal subgroups commute elementwise and meet trivially
    const auto m_gens = subgroup_generators(m);
    for (const auto& prev : accepted)
      for (Elem a : subgroup_generators(prev))
        for (Elem b : m_gens)
          if (g->mul(a, b) != g->mul(b, a))
            throw internal_error("minimal normal subgroups fail to commute");
    for (Elem x : m.members)
      if (x != g->identity() && covered.contains(x))
        throw internal_error("minimal normal subgroup meets the span of the previous ones");
    accepted.push_back(m);
    covered_gens.insert(covered_gens.end(), m_gens.begin(), m_gens.end());
    covered = subgroup_generated(g, covered_gens);
    if (covered.order() == n) break;
  }

  if (covered.order() != n) return std::nullopt;
  std::uint64_t prod = 1;
  for (const auto& f : accepted) prod *= f.order();
  if (prod != n) return std::nullopt;

  out.abelian = false;
  auto ref = FiniteGroup::subgroup_group(g, accepted.front().members);
  out.reference = ref;
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (i == 0) {
      std::vector<Elem> id_map(ref->order());
      for (Elem k = 0; k < id_map.size(); ++k) id_map[k] = k;
      out.factor_to_reference.push_back(std::move(id_map));
    } else {
      auto fg = FiniteGroup::subgroup_group(g, accepted[i].members);
      auto iso = find_isomorphism(fg, ref);
      if (!iso) return std::nullopt;  // simple factors of different type
      out.factor_to_reference.push_back(std::move(iso->map));
    }
  }
  out.factors = std::move(accepted);
  return out;
}

std::vector<VerbalCandidate> enumerate_verbal_candidates(GroupPtr g, bool include_word_enumeration) {
  std::vector<VerbalCandidate> out;
  const std::size_t n = g->order();
  auto admissible = [&](const Subgroup& h) { return h.order() > 1 && h.order() < n; };
  auto add = [&](Subgroup h, GroupWord w) {
    if (!admissible(h)) return;
    for (const auto& c : out)
      if (c.subgroup.same_as(h)) return;  // dedupe by value subgroup, first word wins
    out.push_back(VerbalCandidate{std::move(h), std::move(w)});
  };

  // derived subgroup = normal closure of the generator commutators
  {
    std::vector<Elem> seeds;
    for (Elem s : g->generators())
      for (Elem t : g->generators())
        seeds.push_back(g->mul(g->mul(g->inverse(s), g->inverse(t)), g->mul(s, t)));
    add(normal_closure(g, seeds), GroupWord::commutator());
  }

  // power words over the divisors of exp(G)
  const std::uint64_t exp = g->exponent();
  for (std::uint64_t d : divisors_of(exp)) {
    if (d <= 1 || d >= exp) continue;
    std::vector<Elem> values(n);
    for (Elem a = 0; a < n; ++a) {
      Elem x = g->identity(), base = a;
      std::uint64_t k = d;
      while (k) {
        if (k & 1) x = g->mul(x, base);
        base = g->mul(base, base);
        k >>= 1;
      }
      values[a] = x;
    }
    add(subgroup_generated(g, values), GroupWord::power(static_cast<unsigned>(d)));
  }

  if (include_word_enumeration) {
    // bounded two-variable word enumeration, a safety net past the standard words
    const unsigned max_len = limits().word_search_max_len;
    const unsigned arity = std::min(2u, limits().word_search_max_arity);
    std::vector<std::vector<std::pair<unsigned, int>>> words;
    std::vector<std::pair<unsigned, int>> current;
    auto gen_words = [&](auto&& self, unsigned remaining) -> void {
      if (!current.empty()) words.push_back(current);
      if (remaining == 0) return;
      for (unsigned v = 0; v < arity; ++v)
        for (int s : {1, -1}) {
          if (!current.empty() && current.back().first == v && current.back().second == -s) continue;
          current.emplace_back(v, s);
          self(self, remaining - 1);
          current.pop_back();
        }
    };
    gen_words(gen_words, max_len);
    for (auto& letters : words) {
      bool multi_var = false;
      for (const auto& [v, s] : letters)
        if (v != 0) multi_var = true;
      if (!multi_var) continue;  // single-variable words are the power words above
      GroupWord w(arity, letters);
      if (w.letters.empty()) continue;
      try {
        add(verbal_subgroup(g, w), std::move(w));
      } catch (const budget_error&) {
        break;
      }
    }
  }
  return out;
}

std::optional<VerbalCandidate> find_nontrivial_proper_verbal(GroupPtr g) {
  if (characteristic_simple_decomposition(g)) return std::nullopt;
  auto cands = enumerate_verbal_candidates(g, false);
  if (cands.empty()) cands = enumerate_verbal_candidates(g, true);
  if (cands.empty())
    throw internal_error(
        "verbal search inconsistency: the group is not characteristically simple "
        "but no nontrivial proper verbal subgroup was found within the budget");
  return cands.front();
}

}  // namespace gcadec
