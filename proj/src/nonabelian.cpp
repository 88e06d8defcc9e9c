#include "gcadec/nonabelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gcadec {

namespace {

std::string index_set(const std::vector<unsigned>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

unsigned permutation_order_of_map(const std::vector<Elem>& map) {
  std::vector<bool> seen(map.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t a = 0; a < map.size(); ++a) {
    if (seen[a]) continue;
    std::uint64_t len = 0;
    std::size_t x = a;
    while (!seen[x]) {
      seen[x] = true;
      x = map[x];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<unsigned>(ord);
}

}  // namespace

std::string render_cycles(const std::vector<std::vector<unsigned>>& cycles) {
  std::string out;
  for (const auto& c : cycles) {
    out += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(c[i] + 1);
    }
    out += ")";
  }
  return out;
}

std::variant<SimplePowerLeaf, StructuralFailure> structural_surjectivity(
    const GCA& gca, const SimpleFactorization& sf) {
  if (sf.abelian) throw input_error("structural_surjectivity expects non-abelian simple factors");
  const auto& g = *gca.group();
  const unsigned m = sf.rank();

  SimplePowerLeaf leaf{gca_from_canonical(canonicalize(gca)), sf.reference, sf.factors,
                       {},  {}, {}, {}, {}};
  const auto canon = canonicalize(gca);
  for (const auto& [off, hom] : canon.entries) {
    leaf.offsets.push_back(off);
    leaf.homs.push_back(hom);
  }

  if (leaf.homs.empty())
    return StructuralFailure{"image", "the rule is the constant-identity map"};

  // (a): every image is a product of factors, and the index sets partition
  std::vector<unsigned> owner(m, static_cast<unsigned>(-1));
  for (std::size_t i = 0; i < leaf.homs.size(); ++i) {
    const Subgroup im = image(leaf.homs[i]);
    std::vector<unsigned> ji;
    std::uint64_t expected = 1;
    for (unsigned t = 0; t < m; ++t)
      if (im.contains(sf.factors[t])) {
        ji.push_back(t);
        expected *= sf.factors[t].order();
      }
    if (expected != im.order())
      return StructuralFailure{"image", "Im(h_" + std::to_string(i + 1) + ") of order " +
                                            std::to_string(im.order()) +
                                            " is not a product of factors (contains " +
                                            index_set(ji) + ")"};
    for (unsigned t : ji) {
      if (owner[t] != static_cast<unsigned>(-1))
        return StructuralFailure{"image partition",
                                 "factor " + std::to_string(t + 1) + " lies in two images"};
      owner[t] = static_cast<unsigned>(i);
    }
    leaf.images.push_back(std::move(ji));
  }
  for (unsigned t = 0; t < m; ++t)
    if (owner[t] == static_cast<unsigned>(-1))
      return StructuralFailure{"image partition",
                               "factor " + std::to_string(t + 1) + " lies in no image"};

  // (b): every kernel is a product of factors
  for (std::size_t i = 0; i < leaf.homs.size(); ++i) {
    const Subgroup ker = kernel(leaf.homs[i]);
    std::vector<unsigned> ii;
    std::uint64_t expected = 1;
    for (unsigned t = 0; t < m; ++t)
      if (ker.contains(sf.factors[t])) {
        ii.push_back(t);
        expected *= sf.factors[t].order();
      }
    if (expected != ker.order())
      return StructuralFailure{"kernel", "Ker(h_" + std::to_string(i + 1) + ") of order " +
                                             std::to_string(ker.order()) +
                                             " is not a product of factors"};
    leaf.kernels.push_back(std::move(ii));
  }

  // (c): each factor survives exactly one kernel
  for (unsigned t = 0; t < m; ++t) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < leaf.kernels.size(); ++i)
      if (std::find(leaf.kernels[i].begin(), leaf.kernels[i].end(), t) == leaf.kernels[i].end())
        active.push_back(i);
    if (active.size() != 1)
      return StructuralFailure{"unique index", "factor " + std::to_string(t + 1) + " is outside " +
                                                   std::to_string(active.size()) + " kernels"};
  }

  // routing: the unique active entry maps each factor isomorphically onto one
  // other factor; anything else here means the factorization machinery broke.
  std::vector<bool> hit(m, false);
  for (unsigned j = 0; j < m; ++j) {
    SimplePowerLeaf::Route route;
    for (std::size_t i = 0; i < leaf.kernels.size(); ++i)
      if (std::find(leaf.kernels[i].begin(), leaf.kernels[i].end(), j) == leaf.kernels[i].end())
        route.entry = i;
    const auto& hom = leaf.homs[route.entry];
    const auto& src = sf.factors[j];
    Elem probe = g.identity();
    for (Elem x : src.members)
      if (x != g.identity()) {
        probe = x;
        break;
      }
    const Elem img = hom(probe);
    bool found = false;
    for (unsigned l = 0; l < m; ++l)
      if (sf.factors[l].contains(img) && img != g.identity()) {
        route.target = l;
        found = true;
        break;
      }
    if (!found) throw internal_error("factor image escapes all factors after the structural checks");
    const auto& dst = sf.factors[route.target];
    route.iso.resize(src.order());
    std::vector<bool> used(dst.order(), false);
    for (std::size_t k = 0; k < src.members.size(); ++k) {
      const Elem y = hom(src.members[k]);
      const auto pos = std::lower_bound(dst.members.begin(), dst.members.end(), y) - dst.members.begin();
      if (static_cast<std::size_t>(pos) >= dst.members.size() || dst.members[pos] != y)
        throw internal_error("factor is not mapped into a single factor");
      if (used[pos]) throw internal_error("factor map is not injective");
      used[pos] = true;
      route.iso[k] = static_cast<Elem>(pos);
    }
    if (hit[route.target]) throw internal_error("factor permutation is not injective");
    hit[route.target] = true;
    leaf.routes.push_back(std::move(route));
  }
  return leaf;
}

FlowData build_flow(const SimplePowerLeaf& leaf) {
  const unsigned m = static_cast<unsigned>(leaf.factors.size());
  FlowData flow;
  flow.pi.resize(m);
  for (unsigned j = 0; j < m; ++j) flow.pi[j] = leaf.routes[j].target;

  std::vector<bool> seen(m, false);
  for (unsigned j = 0; j < m; ++j) {
    if (seen[j]) continue;
    std::vector<unsigned> cycle;
    unsigned x = j;
    while (!seen[x]) {
      seen[x] = true;
      cycle.push_back(x);
      x = flow.pi[x];
    }
    flow.cycles.push_back(std::move(cycle));
  }
  flow.o = 1;
  for (const auto& c : flow.cycles) flow.o = std::lcm(flow.o, static_cast<std::uint64_t>(c.size()));

  // return automorphism per cycle: compose the routing isomorphisms once
  // around; its order as a permutation of the factor elements
  flow.alpha = 1;
  for (const auto& cycle : flow.cycles) {
    const unsigned start = cycle.front();
    std::vector<Elem> rho(leaf.factors[start].order());
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = static_cast<Elem>(k);
    unsigned j = start;
    for (std::size_t step = 0; step < cycle.size(); ++step) {
      const auto& iso = leaf.routes[j].iso;
      for (auto& v : rho) v = iso[v];
      j = leaf.routes[j].target;
    }
    if (j != start) throw internal_error("routing does not close the cycle");
    const unsigned ord = permutation_order_of_map(rho);
    flow.return_orders.push_back(ord);
    flow.alpha = std::lcm(flow.alpha, static_cast<std::uint64_t>(ord));
  }

  // displacement: with sigma_u(c)_v = c_(v+u), iterating the flow o*alpha
  // times shifts content by +alpha * sum(r_i v_i); beta is its negation so
  // that F^(o*alpha) = sigma_(-alpha*beta) holds exactly.
  const unsigned d = leaf.gca.dim();
  flow.beta.assign(d, 0);
  for (std::size_t i = 0; i < leaf.offsets.size(); ++i) {
    const auto r = static_cast<std::int64_t>(leaf.images[i].size());
    for (unsigned k = 0; k < d; ++k)
      flow.beta[k] = checked_add(flow.beta[k], checked_mul(-r, leaf.offsets[i][k]));
  }
  return flow;
}

std::vector<MinimalComponent> minimal_components(const SimplePowerLeaf& leaf, const FlowData& flow) {
  std::vector<MinimalComponent> out;
  const auto& g = leaf.gca.group();
  for (const auto& cycle : flow.cycles) {
    MinimalComponent comp;
    comp.factor_ids = cycle;
    if (cycle.size() == leaf.factors.size() && flow.cycles.size() == 1) {
      comp.leaf = leaf;
      comp.flow = flow;
      out.push_back(std::move(comp));
      continue;
    }
    // restrict the automaton to the product of the cycle's factors
    std::vector<Elem> gens;
    for (unsigned t : cycle) {
      const auto fg = subgroup_generators(leaf.factors[t]);
      gens.insert(gens.end(), fg.begin(), fg.end());
    }
    const Subgroup h = subgroup_generated(g, gens);
    GCA sub = restrict_rule(leaf.gca, h);

    // the factorization carries over with members reindexed into the subgroup
    SimpleFactorization sf;
    sf.abelian = false;
    sf.reference = leaf.reference;
    for (unsigned t : cycle) {
      std::vector<Elem> local;
      for (Elem x : leaf.factors[t].members) {
        const auto pos = std::lower_bound(h.members.begin(), h.members.end(), x) - h.members.begin();
        local.push_back(static_cast<Elem>(pos));
      }
      sf.factors.push_back(Subgroup::from_members(sub.group(), std::move(local)));
      sf.factor_to_reference.push_back({});  // not needed downstream
    }
    auto sub_leaf = structural_surjectivity(sub, sf);
    if (std::holds_alternative<StructuralFailure>(sub_leaf))
      throw internal_error("minimal component lost structural surjectivity: " +
                           std::get<StructuralFailure>(sub_leaf).detail);
    comp.leaf = std::get<SimplePowerLeaf>(std::move(sub_leaf));
    comp.flow = build_flow(comp.leaf);
    if (comp.flow.cycles.size() != 1)
      throw internal_error("minimal component flow is not a single cycle");
    out.push_back(std::move(comp));
  }
  return out;
}

NonabelianEvidence is_transitive_nonabelian(const GCA& gca, const SimpleFactorization& sf,
                                            bool verify_lemma) {
  NonabelianEvidence ev;
  auto structural = structural_surjectivity(gca, sf);
  if (std::holds_alternative<StructuralFailure>(structural)) {
    ev.surjective = false;
    ev.transitive = false;
    ev.failure = std::get<StructuralFailure>(std::move(structural));
    return ev;
  }
  const auto& leaf = std::get<SimplePowerLeaf>(structural);
  ev.surjective = true;
  ev.flow = build_flow(leaf);
  ev.transitive = true;
  for (const auto& comp : minimal_components(leaf, *ev.flow)) {
    NonabelianEvidence::ComponentReport report;
    report.factors = comp.factor_ids;
    report.o = comp.flow.o;
    report.alpha = comp.flow.alpha;
    report.beta = comp.flow.beta;
    report.alpha_beta.resize(report.beta.size());
    bool nonzero = false;
    for (std::size_t k = 0; k < report.beta.size(); ++k) {
      report.alpha_beta[k] =
          checked_mul(static_cast<std::int64_t>(report.alpha), report.beta[k]);
      nonzero |= report.alpha_beta[k] != 0;
    }
    report.transitive = nonzero;
    if (verify_lemma) {
      const GCA power = compose_power(comp.leaf.gca, comp.flow.o * comp.flow.alpha);
      Offset target(report.beta.size());
      for (std::size_t k = 0; k < target.size(); ++k) target[k] = -report.alpha_beta[k];
      if (!equals_shift(power, target))
        throw internal_error(
            "flow identity failed: F^(o*alpha) is not the expected shift; the verdict cannot be "
            "trusted");
      report.lemma_verified = true;
    }
    if (!report.transitive) ev.transitive = false;
    ev.components.push_back(std::move(report));
  }
  return ev;
}

}  // namespace gcadec
