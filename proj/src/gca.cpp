#include "gcadec/gca.hpp"

#include <algorithm>

namespace gcadec {

GCA::GCA(GroupPtr group, NeighborVector neighbors, std::vector<Endomorphism> homs)
    : group_(std::move(group)), neighbors_(std::move(neighbors)) {
  rule_.group = group_;
  rule_.homs = std::move(homs);
}

std::optional<CommutingViolation> find_commuting_violation(const GroupPtr& group,
                                                           const std::vector<Endomorphism>& homs) {
  // Images are generated by the images of the group generators, and two
  // subgroups commute elementwise iff their generators do.
  const auto& gens = group->generators();
  for (std::size_t i = 0; i < homs.size(); ++i)
    for (std::size_t j = i + 1; j < homs.size(); ++j)
      for (Elem a : gens)
        for (Elem b : gens) {
          const Elem x = homs[i](a), y = homs[j](b);
          if (group->mul(x, y) != group->mul(y, x)) return CommutingViolation{i, j, a, b};
        }
  return std::nullopt;
}

GCA make_gca(GroupPtr group, NeighborVector neighbors, std::vector<Endomorphism> homs) {
  if (neighbors.dim == 0) throw input_error("dimension must be positive");
  if (neighbors.offsets.empty()) throw input_error("neighbor vector must be nonempty");
  if (neighbors.offsets.size() != homs.size())
    throw input_error("rule arity " + std::to_string(homs.size()) + " does not match " +
                      std::to_string(neighbors.offsets.size()) + " neighbors");
  for (const auto& o : neighbors.offsets)
    if (o.size() != neighbors.dim) throw input_error("offset arity mismatch: expected dimension " +
                                                     std::to_string(neighbors.dim));
  for (const auto& h : homs)
    if (h.group().get() != group.get()) throw input_error("rule map defined on a different group");
  if (auto v = find_commuting_violation(group, homs))
    throw input_error("images of rule maps " + std::to_string(v->i + 1) + " and " +
                      std::to_string(v->j + 1) + " do not commute: witness a=" + group->label(v->a) +
                      ", b=" + group->label(v->b));
  return GCA(std::move(group), std::move(neighbors), std::move(homs));
}

Elem apply_local(const LocalRule& rule, std::span<const Elem> args) {
  const auto& g = *rule.group;
  Elem r = g.identity();
  for (std::size_t i = 0; i < rule.homs.size(); ++i) r = g.mul(r, rule.homs[i](args[i]));
  return r;
}

Elem apply_local(const GCA& gca, std::span<const Elem> args) {
  if (args.size() != gca.arity()) throw input_error("apply_local: wrong tuple length");
  const auto& g = *gca.group();
  Elem r = g.identity();
  for (std::size_t i = 0; i < args.size(); ++i) r = g.mul(r, gca.homs()[i](args[i]));
  return r;
}

std::size_t PeriodicConfig::index_of(std::span<const std::int64_t> v) const {
  std::size_t idx = 0;
  for (unsigned i = 0; i < dim; ++i) {
    std::int64_t r = v[i] % periods[i];
    if (r < 0) r += periods[i];
    idx = idx * static_cast<std::size_t>(periods[i]) + static_cast<std::size_t>(r);
  }
  return idx;
}

PeriodicConfig PeriodicConfig::constant(const GCA& gca, std::vector<std::int64_t> periods, Elem value) {
  PeriodicConfig c;
  c.dim = gca.dim();
  c.periods = std::move(periods);
  std::size_t total = 1;
  for (auto p : c.periods) total *= static_cast<std::size_t>(p);
  c.cells.assign(total, value);
  return c;
}

PeriodicConfig PeriodicConfig::random(const GCA& gca, std::vector<std::int64_t> periods,
                                      std::mt19937_64& rng) {
  PeriodicConfig c = constant(gca, std::move(periods), 0);
  std::uniform_int_distribution<Elem> dist(0, static_cast<Elem>(gca.group()->order() - 1));
  for (auto& cell : c.cells) cell = dist(rng);
  return c;
}

PeriodicConfig step(const GCA& gca, const PeriodicConfig& c) {
  PeriodicConfig out = c;
  const auto& g = *gca.group();
  const unsigned d = c.dim;
  std::vector<std::int64_t> v(d, 0), w(d, 0);
  for (std::size_t idx = 0; idx < c.cells.size(); ++idx) {
    // decode idx -> v
    std::size_t rest = idx;
    for (unsigned i = d; i-- > 0;) {
      v[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(c.periods[i]));
      rest /= static_cast<std::size_t>(c.periods[i]);
    }
    Elem r = g.identity();
    for (std::size_t k = 0; k < gca.arity(); ++k) {
      for (unsigned i = 0; i < d; ++i) w[i] = v[i] + gca.neighbors().offsets[k][i];
      r = g.mul(r, gca.homs()[k](c.at(w)));
    }
    out.cells[idx] = r;
  }
  return out;
}

PeriodicConfig shift_config(const PeriodicConfig& c, const Offset& u) {
  PeriodicConfig out = c;
  const unsigned d = c.dim;
  std::vector<std::int64_t> v(d, 0), w(d, 0);
  for (std::size_t idx = 0; idx < c.cells.size(); ++idx) {
    std::size_t rest = idx;
    for (unsigned i = d; i-- > 0;) {
      v[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(c.periods[i]));
      rest /= static_cast<std::size_t>(c.periods[i]);
    }
    for (unsigned i = 0; i < d; ++i) w[i] = v[i] + u[i];
    out.cells[idx] = c.at(w);
  }
  return out;
}

PeriodicConfig pointwise_product(const FiniteGroup& g, const PeriodicConfig& a, const PeriodicConfig& b) {
  PeriodicConfig out = a;
  for (std::size_t i = 0; i < a.cells.size(); ++i) out.cells[i] = g.mul(a.cells[i], b.cells[i]);
  return out;
}

bool CanonicalRule::operator==(const CanonicalRule& other) const {
  if (dim != other.dim || entries.size() != other.entries.size()) return false;
  auto it = other.entries.begin();
  for (const auto& [off, h] : entries) {
    if (off != it->first || !(h == it->second)) return false;
    ++it;
  }
  return true;
}

CanonicalRule canonicalize(const GCA& gca) {
  CanonicalRule canon;
  canon.group = gca.group();
  canon.dim = gca.dim();
  for (std::size_t i = 0; i < gca.arity(); ++i) {
    const auto& off = gca.neighbors().offsets[i];
    auto it = canon.entries.find(off);
    if (it == canon.entries.end())
      canon.entries.emplace(off, gca.homs()[i]);
    else
      it->second = it->second.pointwise_product(gca.homs()[i]);
  }
  for (auto it = canon.entries.begin(); it != canon.entries.end();)
    it = it->second.is_trivial() ? canon.entries.erase(it) : std::next(it);
  return canon;
}

GCA gca_from_canonical(const CanonicalRule& canon) {
  NeighborVector nv;
  nv.dim = canon.dim;
  std::vector<Endomorphism> homs;
  for (const auto& [off, h] : canon.entries) {
    nv.offsets.push_back(off);
    homs.push_back(h);
  }
  if (homs.empty()) {  // the constant-identity automaton
    nv.offsets.push_back(Offset(canon.dim, 0));
    homs.push_back(Endomorphism::trivial(canon.group));
  }
  return GCA(canon.group, std::move(nv), std::move(homs));
}

GCA compose(const GCA& g1, const GCA& g2) {
  if (g1.group().get() != g2.group().get() || g1.dim() != g2.dim())
    throw input_error("compose: mismatched group or dimension");
  const CanonicalRule c1 = canonicalize(g1), c2 = canonicalize(g2);
  CanonicalRule out;
  out.group = g1.group();
  out.dim = g1.dim();
  for (const auto& [u, h] : c1.entries)
    for (const auto& [w, k] : c2.entries) {
      Offset sum(out.dim);
      for (unsigned i = 0; i < out.dim; ++i) sum[i] = checked_add(u[i], w[i]);
      Endomorphism comp = h.after(k);
      if (comp.is_trivial()) continue;
      auto it = out.entries.find(sum);
      if (it == out.entries.end())
        out.entries.emplace(std::move(sum), std::move(comp));
      else
        it->second = it->second.pointwise_product(comp);
    }
  for (auto it = out.entries.begin(); it != out.entries.end();)
    it = it->second.is_trivial() ? out.entries.erase(it) : std::next(it);
  return gca_from_canonical(out);
}

GCA compose_power(const GCA& gca, std::uint64_t n) {
  if (n == 0) throw input_error("compose_power: exponent must be >= 1");
  GCA base = gca;
  std::optional<GCA> acc;
  while (n) {
    if (n & 1) acc = acc ? compose(*acc, base) : base;
    n >>= 1;
    if (n) base = compose(base, base);
  }
  return *acc;
}

GCA shift_gca(GroupPtr group, unsigned dim, const Offset& u) {
  if (u.size() != dim) throw input_error("shift offset has wrong dimension");
  NeighborVector nv;
  nv.dim = dim;
  nv.offsets.push_back(u);
  std::vector<Endomorphism> homs{Endomorphism::identity(group)};
  return GCA(std::move(group), std::move(nv), std::move(homs));
}

bool equals_shift(const GCA& gca, const Offset& u) {
  return canonicalize(gca) == canonicalize(shift_gca(gca.group(), gca.dim(), u));
}

GCA restrict_rule(const GCA& gca, const Subgroup& h) {
  if (h.parent.get() != gca.group().get()) throw input_error("restrict_rule: foreign subgroup");
  for (std::size_t i = 0; i < gca.arity(); ++i)
    for (Elem x : h.members)
      if (!h.contains(gca.homs()[i](x)))
        throw input_error("rule map " + std::to_string(i + 1) + " does not preserve the subgroup");
  auto sub = FiniteGroup::subgroup_group(gca.group(), h.members);
  std::vector<Endomorphism> homs;
  for (const auto& hom : gca.homs()) {
    std::vector<Elem> local(sub->order());
    for (Elem a = 0; a < local.size(); ++a) {
      const Elem img = hom(sub->to_parent(a));
      const auto pos = std::lower_bound(h.members.begin(), h.members.end(), img) - h.members.begin();
      local[a] = static_cast<Elem>(pos);
    }
    homs.push_back(Endomorphism::trusted(sub, std::move(local)));
  }
  return make_gca(std::move(sub), gca.neighbors(), std::move(homs));
}

QuotientRule quotient_rule(const GCA& gca, const Subgroup& h) {
  if (h.parent.get() != gca.group().get()) throw input_error("quotient_rule: foreign subgroup");
  for (std::size_t i = 0; i < gca.arity(); ++i)
    for (Elem x : h.members)
      if (!h.contains(gca.homs()[i](x)))
        throw input_error("rule map " + std::to_string(i + 1) + " does not preserve the subgroup");
  auto [q, proj] = quotient(gca.group(), h);
  std::vector<Endomorphism> homs;
  for (const auto& hom : gca.homs()) {
    std::vector<Elem> qmap(q->order());
    for (Elem c = 0; c < qmap.size(); ++c) qmap[c] = proj[hom(q->to_parent(c))];
    homs.push_back(Endomorphism::trusted(q, std::move(qmap)));
  }
  GCA out = make_gca(q, gca.neighbors(), std::move(homs));
  return QuotientRule{std::move(out), std::move(proj)};
}

GCA direct_product(const GCA& f1, const GCA& f2) {
  if (f1.dim() != f2.dim()) throw input_error("direct_product: dimension mismatch");
  auto prod = FiniteGroup::product({f1.group(), f2.group()});
  const std::size_t n1 = f1.group()->order();
  NeighborVector nv;
  nv.dim = f1.dim();
  std::vector<Endomorphism> homs;
  auto lift = [&](const Endomorphism& h, bool first) {
    std::vector<Elem> m(prod->order());
    for (Elem a = 0; a < m.size(); ++a) {
      const Elem a1 = static_cast<Elem>(a % n1), a2 = static_cast<Elem>(a / n1);
      const Elem b1 = first ? h(a1) : f1.group()->identity();
      const Elem b2 = first ? f2.group()->identity() : h(a2);
      m[a] = static_cast<Elem>(b1 + b2 * n1);
    }
    return Endomorphism::trusted(prod, std::move(m));
  };
  for (std::size_t i = 0; i < f1.arity(); ++i) {
    nv.offsets.push_back(f1.neighbors().offsets[i]);
    homs.push_back(lift(f1.homs()[i], true));
  }
  for (std::size_t i = 0; i < f2.arity(); ++i) {
    nv.offsets.push_back(f2.neighbors().offsets[i]);
    homs.push_back(lift(f2.homs()[i], false));
  }
  return make_gca(std::move(prod), std::move(nv), std::move(homs));
}

std::int64_t neighborhood_radius(const GCA& gca) {
  std::int64_t r = 0;
  for (const auto& o : gca.neighbors().offsets)
    for (auto x : o) r = std::max(r, x < 0 ? -x : x);
  return r;
}

}  // namespace gcadec
