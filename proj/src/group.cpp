#include "gcadec/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace gcadec {

Limits& limits() {
  static Limits instance;
  return instance;
}

std::string offset_to_string(const Offset& o) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) out << ',';
    out << o[i];
  }
  out << ')';
  return out.str();
}

// ---- backends ---------------------------------------------------------------

namespace {

class TableGroup final : public FiniteGroup {
 public:
  TableGroup(std::vector<std::vector<Elem>> table, std::vector<std::string> labels)
      : FiniteGroup(Backend::Table, table.size()), labels_(std::move(labels)) {
    flat_.resize(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b) flat_[a * order_ + b] = table[a][b];
  }

  Elem mul(Elem a, Elem b) const override { return flat_[static_cast<std::size_t>(a) * order_ + b]; }

  std::string label(Elem a) const override {
    if (a < labels_.size()) return labels_[a];
    return FiniteGroup::label(a);
  }

 private:
  std::vector<Elem> flat_;
  std::vector<std::string> labels_;
};

using Perm = std::vector<unsigned>;

Perm perm_compose(const Perm& f, const Perm& g) {  // (f*g)(x) = f(g(x))
  Perm r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

std::string perm_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? std::string("()") : out;
}

class PermGroup final : public FiniteGroup {
 public:
  PermGroup(unsigned degree, std::vector<Perm> gens, std::vector<Perm> elements,
            std::vector<Elem> gen_ids)
      : FiniteGroup(Backend::Permutation, elements.size()),
        degree_(degree),
        elements_(std::move(elements)),
        gen_ids_(std::move(gen_ids)) {
    (void)gens;
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(key(elements_[i]), static_cast<Elem>(i));
  }

  Elem mul(Elem a, Elem b) const override {
    return index_.at(key(perm_compose(elements_[a], elements_[b])));
  }

  std::string label(Elem a) const override { return perm_cycles(elements_[a]); }

  const Perm& permutation(Elem a) const { return elements_[a]; }
  const std::vector<Elem>& generator_ids() const { return gen_ids_; }

 private:
  static std::string key(const Perm& p) {
    return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(unsigned));
  }
  unsigned degree_;
  std::vector<Perm> elements_;
  std::vector<Elem> gen_ids_;
  std::unordered_map<std::string, Elem> index_;
};

class ProductGroup final : public FiniteGroup {
 public:
  explicit ProductGroup(std::vector<GroupPtr> fs) : FiniteGroup(Backend::Product, 1) {
    factors_ = std::move(fs);
    strides_.resize(factors_.size());
    std::size_t n = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      strides_[i] = n;
      n *= factors_[i]->order();
      if (n > (std::size_t{1} << 31)) throw budget_error("product group order exceeds 2^31");
    }
    order_ = n;
  }

  Elem mul(Elem a, Elem b) const override {
    Elem r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::size_t m = factors_[i]->order();
      const Elem ai = static_cast<Elem>((a / strides_[i]) % m);
      const Elem bi = static_cast<Elem>((b / strides_[i]) % m);
      r += static_cast<Elem>(factors_[i]->mul(ai, bi) * strides_[i]);
    }
    return r;
  }

  std::string label(Elem a) const override {
    std::string out = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::size_t m = factors_[i]->order();
      if (i) out += ',';
      out += factors_[i]->label(static_cast<Elem>((a / strides_[i]) % m));
    }
    return out + ")";
  }

  const std::vector<std::size_t>& strides() const { return strides_; }

 private:
  std::vector<std::size_t> strides_;
};

class SubgroupAsGroup final : public FiniteGroup {
 public:
  SubgroupAsGroup(GroupPtr parent, std::vector<Elem> members)
      : FiniteGroup(Backend::Subgroup, members.size()),
        parent_(std::move(parent)),
        members_(std::move(members)),
        to_local_(parent_->order(), kAbsent) {
    for (std::size_t i = 0; i < members_.size(); ++i) to_local_[members_[i]] = static_cast<Elem>(i);
  }

  Elem mul(Elem a, Elem b) const override {
    const Elem p = parent_->mul(members_[a], members_[b]);
    const Elem l = to_local_[p];
    if (l == kAbsent) throw internal_error("subgroup backend: product escaped the member set");
    return l;
  }

  std::string label(Elem a) const override { return parent_->label(members_[a]); }
  Elem to_parent(Elem a) const override { return members_[a]; }
  GroupPtr parent() const override { return parent_; }

 private:
  static constexpr Elem kAbsent = static_cast<Elem>(-1);
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<Elem> to_local_;
};

class QuotientAsGroup final : public FiniteGroup {
 public:
  QuotientAsGroup(GroupPtr parent, std::vector<Elem> coset_of, std::vector<Elem> reps)
      : FiniteGroup(Backend::Quotient, reps.size()),
        parent_(std::move(parent)),
        coset_of_(std::move(coset_of)),
        reps_(std::move(reps)) {}

  Elem mul(Elem a, Elem b) const override { return coset_of_[parent_->mul(reps_[a], reps_[b])]; }

  std::string label(Elem a) const override { return "[" + parent_->label(reps_[a]) + "]"; }
  Elem to_parent(Elem a) const override { return reps_[a]; }
  GroupPtr parent() const override { return parent_; }
  const std::vector<Elem>& coset_of() const { return coset_of_; }

 private:
  GroupPtr parent_;
  std::vector<Elem> coset_of_;  // parent id -> coset id
  std::vector<Elem> reps_;      // coset id -> least parent member
};

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Elem> gens;
  std::vector<bool> in_closure(n, false);
  in_closure[g.identity()] = true;
  std::size_t closure_size = 1;
  for (Elem cand = 0; cand < n && closure_size < n; ++cand) {
    if (in_closure[cand]) continue;
    gens.push_back(cand);
    // grow the closure with the new generator
    std::vector<Elem> frontier;
    for (Elem x = 0; x < n; ++x)
      if (in_closure[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem x : frontier) {
        for (Elem s : gens) {
          const Elem y = g.mul(x, s);
          if (!in_closure[y]) {
            in_closure[y] = true;
            ++closure_size;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace

void FiniteGroup::finish_init(std::string name) {
  name_ = std::move(name);
  const std::size_t n = order_;
  // identity: unique e with e*e = e and e*x = x for a probe x
  bool found = false;
  for (Elem e = 0; e < n; ++e) {
    if (mul(e, e) != e) continue;
    bool ok = true;
    for (Elem x = 0; x < std::min<std::size_t>(n, 8); ++x)
      if (mul(e, x) != x || mul(x, e) != x) {
        ok = false;
        break;
      }
    if (ok) {
      identity_ = e;
      found = true;
      break;
    }
  }
  if (!found) throw input_error("group has no identity element");

  inverse_.assign(n, identity_);
  std::vector<bool> has_inv(n, false);
  for (Elem a = 0; a < n; ++a) {
    if (has_inv[a]) continue;
    bool ok = false;
    for (Elem b = 0; b < n; ++b) {
      if (mul(a, b) == identity_) {
        if (mul(b, a) != identity_) throw input_error("one-sided inverse: not a group");
        inverse_[a] = b;
        inverse_[b] = a;
        has_inv[a] = has_inv[b] = true;
        ok = true;
        break;
      }
    }
    if (!ok) throw input_error("element " + std::to_string(a) + " has no inverse");
  }

  if (backend_ == Backend::Product) {
    // embedded factor generators
    const auto* pg = static_cast<const ProductGroup*>(this);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (Elem s : factors_[i]->generators())
        generators_.push_back(static_cast<Elem>(s * pg->strides()[i]));
  } else if (backend_ == Backend::Permutation) {
    generators_ = static_cast<const PermGroup*>(this)->generator_ids();
  } else {
    generators_ = greedy_generators(*this);
  }
}

std::string FiniteGroup::label(Elem a) const { return std::to_string(a); }

bool FiniteGroup::is_abelian() const {
  if (abelian_cache_ < 0) {
    bool ab = true;
    for (Elem s : generators_) {
      for (Elem t : generators_)
        if (mul(s, t) != mul(t, s)) {
          ab = false;
          break;
        }
      if (!ab) break;
    }
    abelian_cache_ = ab ? 1 : 0;
  }
  return abelian_cache_ == 1;
}

unsigned FiniteGroup::element_order(Elem a) const {
  unsigned k = 1;
  Elem x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::uint64_t FiniteGroup::exponent() const {
  if (backend_ == Backend::Product) {
    std::uint64_t e = 1;
    for (const auto& f : factors_) e = std::lcm(e, f->exponent());
    return e;
  }
  std::uint64_t e = 1;
  for (Elem a = 0; a < order_; ++a) e = std::lcm(e, static_cast<std::uint64_t>(element_order(a)));
  return e;
}

std::vector<Elem> FiniteGroup::center() const {
  std::vector<Elem> z;
  for (Elem a = 0; a < order_; ++a) {
    bool central = true;
    for (Elem s : generators_)
      if (mul(a, s) != mul(s, a)) {
        central = false;
        break;
      }
    if (central) z.push_back(a);
  }
  return z;
}

std::vector<std::vector<Elem>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<Elem>> classes;
  std::vector<bool> seen(order_, false);
  std::vector<Elem> ginv(generators_.size());
  for (std::size_t i = 0; i < generators_.size(); ++i) ginv[i] = inverse(generators_[i]);
  for (Elem a = 0; a < order_; ++a) {
    if (seen[a]) continue;
    std::vector<Elem> cls{a};
    seen[a] = true;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      const Elem x = cls[head];
      for (std::size_t i = 0; i < generators_.size(); ++i) {
        const Elem y = mul(mul(generators_[i], x), ginv[i]);
        if (!seen[y]) {
          seen[y] = true;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Elem FiniteGroup::encode_tuple(std::span<const Elem> parts) const {
  if (backend_ != Backend::Product) throw input_error("encode_tuple: not a product group");
  const auto* pg = static_cast<const ProductGroup*>(this);
  if (parts.size() != factors_.size()) throw input_error("encode_tuple: arity mismatch");
  Elem r = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] >= factors_[i]->order()) throw input_error("encode_tuple: component out of range");
    r += static_cast<Elem>(parts[i] * pg->strides()[i]);
  }
  return r;
}

std::vector<Elem> FiniteGroup::decode_tuple(Elem a) const {
  if (backend_ != Backend::Product) throw input_error("decode_tuple: not a product group");
  const auto* pg = static_cast<const ProductGroup*>(this);
  std::vector<Elem> parts(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    parts[i] = static_cast<Elem>((a / pg->strides()[i]) % factors_[i]->order());
  return parts;
}

// ---- factories ----------------------------------------------------------------

GroupPtr FiniteGroup::from_table(std::vector<std::vector<Elem>> table, std::vector<std::string> labels,
                                 std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw input_error("empty multiplication table");
  if (n > limits().scaled(limits().table_backend_max))
    throw budget_error("table backend limited to order " +
                       std::to_string(limits().scaled(limits().table_backend_max)));
  for (const auto& row : table) {
    if (row.size() != n) throw input_error("multiplication table is not square");
    for (Elem v : row)
      if (v >= n) throw input_error("multiplication table entry out of range");
  }
  // Latin square: rows and columns are permutations (needed for inverses).
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen_row[table[a][b]]) throw input_error("row " + std::to_string(a) + " repeats a value");
      seen_row[table[a][b]] = true;
      if (seen_col[table[b][a]]) throw input_error("column " + std::to_string(a) + " repeats a value");
      seen_col[table[b][a]] = true;
    }
  }
  if (n <= limits().scaled(limits().assoc_check_max)) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw input_error("non-associative table: (" + std::to_string(a) + "*" + std::to_string(b) +
                              ")*" + std::to_string(c) + " != " + std::to_string(a) + "*(" +
                              std::to_string(b) + "*" + std::to_string(c) + ")");
  }
  auto g = std::make_shared<TableGroup>(std::move(table), std::move(labels));
  g->finish_init(std::move(name));
  return g;
}

GroupPtr FiniteGroup::from_permutations(unsigned degree, std::vector<std::vector<unsigned>> generators,
                                        std::string name) {
  if (degree == 0) throw input_error("permutation degree must be positive");
  for (const auto& p : generators) {
    if (p.size() != degree) throw input_error("permutation generator has wrong degree");
    std::vector<bool> seen(degree, false);
    for (unsigned v : p) {
      if (v >= degree || seen[v]) throw input_error("generator is not a permutation");
      seen[v] = true;
    }
  }
  // closure under composition, BFS from the identity
  Perm id(degree);
  for (unsigned i = 0; i < degree; ++i) id[i] = i;
  std::vector<Perm> elements{id};
  std::map<Perm, Elem> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      Perm q = perm_compose(elements[head], s);
      if (index.emplace(q, static_cast<Elem>(elements.size())).second) elements.push_back(std::move(q));
    }
    if (elements.size() > (std::size_t{1} << 24)) throw budget_error("permutation group closure too large");
  }
  std::vector<Elem> gen_ids;
  for (const auto& s : generators) gen_ids.push_back(index.at(s));
  auto g = std::make_shared<PermGroup>(degree, std::move(generators), std::move(elements),
                                       std::move(gen_ids));
  g->finish_init(std::move(name));
  return g;
}

GroupPtr FiniteGroup::product(std::vector<GroupPtr> factor_groups) {
  if (factor_groups.empty()) throw input_error("product of zero groups");
  std::string name;
  for (std::size_t i = 0; i < factor_groups.size(); ++i) {
    if (i) name += " x ";
    name += factor_groups[i]->name();
  }
  auto g = std::make_shared<ProductGroup>(std::move(factor_groups));
  g->finish_init(std::move(name));
  return g;
}

GroupPtr FiniteGroup::subgroup_group(GroupPtr parent_group, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  auto g = std::make_shared<SubgroupAsGroup>(parent_group, members);
  g->finish_init(parent_group->name() + " subgroup(" + std::to_string(members.size()) + ")");
  return g;
}

std::pair<GroupPtr, std::vector<Elem>> FiniteGroup::quotient_group(GroupPtr g,
                                                                   const std::vector<Elem>& normal_members) {
  const std::size_t n = g->order();
  std::vector<Elem> coset_of(n, static_cast<Elem>(-1));
  std::vector<Elem> reps;
  for (Elem a = 0; a < n; ++a) {
    if (coset_of[a] != static_cast<Elem>(-1)) continue;
    const Elem cid = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (Elem h : normal_members) coset_of[g->mul(a, h)] = cid;
    if (coset_of[a] != cid) throw internal_error("coset enumeration failed; subgroup not closed?");
  }
  auto q = std::make_shared<QuotientAsGroup>(g, coset_of, reps);
  q->finish_init(g->name() + "/" + "N" + std::to_string(normal_members.size()));
  return {q, static_cast<const QuotientAsGroup*>(q.get())->coset_of()};
}

GroupPtr FiniteGroup::cyclic(unsigned n) {
  if (n == 0) throw input_error("cyclic group order must be positive");
  if (n <= limits().scaled(limits().table_backend_max)) {
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table(std::move(t), {}, "Z/" + std::to_string(n));
  }
  std::vector<unsigned> cycle(n);
  for (unsigned i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations(n, {cycle}, "Z/" + std::to_string(n));
}

GroupPtr FiniteGroup::symmetric(unsigned n) {
  if (n == 0) throw input_error("symmetric degree must be positive");
  if (n == 1) return cyclic(1);
  std::vector<unsigned> cycle(n), swap01(n);
  for (unsigned i = 0; i < n; ++i) {
    cycle[i] = (i + 1) % n;
    swap01[i] = i;
  }
  std::swap(swap01[0], swap01[1]);
  return from_permutations(n, {cycle, swap01}, "S" + std::to_string(n));
}

GroupPtr FiniteGroup::alternating(unsigned n) {
  if (n < 3) return cyclic(1);
  std::vector<unsigned> three(n), big(n);
  for (unsigned i = 0; i < n; ++i) three[i] = big[i] = i;
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  if (n % 2 == 1) {  // n-cycle is even
    for (unsigned i = 0; i < n; ++i) big[i] = (i + 1) % n;
  } else {  // (n-1)-cycle on 1..n-1 is even
    for (unsigned i = 1; i < n; ++i) big[i] = 1 + (i % (n - 1));
  }
  return from_permutations(n, {three, big}, "A" + std::to_string(n));
}

GroupPtr FiniteGroup::dihedral(unsigned n) {
  if (n < 3) throw input_error("dihedral requires n >= 3");
  std::vector<unsigned> rot(n), refl(n);
  for (unsigned i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return from_permutations(n, {rot, refl}, "D" + std::to_string(n));
}

GroupPtr FiniteGroup::quaternion8() {
  // elements 1,-1,i,-i,j,-j,k,-k
  const char* names[8] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto base = [](Elem a) -> Elem { return a >> 1; };  // 0:1, 1:i, 2:j, 3:k
  auto sign = [](Elem a) -> bool { return a & 1u; };
  // quaternion unit products: table over {1,i,j,k} with result sign
  static const Elem prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const bool psign[4][4] = {{false, false, false, false},
                                   {false, true, false, true},
                                   {false, true, true, false},
                                   {false, false, true, true}};
  // psign[a][b]: i*i=-1, i*j=k, i*k=-j, j*i=-k, j*j=-1, j*k=i, k*i=j, k*j=-i, k*k=-1
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) {
      Elem unit = prod[base(a)][base(b)];
      bool s = psign[base(a)][base(b)] ^ sign(a) ^ sign(b);
      t[a][b] = static_cast<Elem>((unit << 1) | (s ? 1 : 0));
    }
  std::vector<std::string> labels(names, names + 8);
  return from_table(std::move(t), std::move(labels), "Q8");
}

GroupPtr FiniteGroup::sl2_5() {
  // 2x2 matrices over F5 with determinant 1
  struct Mat {
    unsigned a, b, c, d;
    bool operator<(const Mat& o) const {
      return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
    }
  };
  std::vector<Mat> mats;
  for (unsigned a = 0; a < 5; ++a)
    for (unsigned b = 0; b < 5; ++b)
      for (unsigned c = 0; c < 5; ++c)
        for (unsigned d = 0; d < 5; ++d)
          if ((a * d % 5 + 5 - b * c % 5) % 5 == 1) mats.push_back({a, b, c, d});
  std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, Elem> index;
  for (std::size_t i = 0; i < mats.size(); ++i)
    index[{mats[i].a, mats[i].b, mats[i].c, mats[i].d}] = static_cast<Elem>(i);
  const std::size_t n = mats.size();
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat& m = mats[i];
    labels[i] = "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) +
                "," + std::to_string(m.d) + "]]";
    for (std::size_t j = 0; j < n; ++j) {
      const Mat& k = mats[j];
      Mat r{(m.a * k.a + m.b * k.c) % 5, (m.a * k.b + m.b * k.d) % 5, (m.c * k.a + m.d * k.c) % 5,
            (m.c * k.b + m.d * k.d) % 5};
      t[i][j] = index.at({r.a, r.b, r.c, r.d});
    }
  }
  return from_table(std::move(t), std::move(labels), "SL(2,5)");
}

// ---- Subgroup ----------------------------------------------------------------

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s;
  s.mask.assign(parent->order(), false);
  for (Elem a : members) s.mask[a] = true;
  s.parent = std::move(parent);
  s.members = std::move(members);
  return s;
}

bool Subgroup::contains(const Subgroup& other) const {
  for (Elem a : other.members)
    if (!mask[a]) return false;
  return true;
}

bool Subgroup::same_as(const Subgroup& other) const { return members == other.members; }

// ---- Endomorphism --------------------------------------------------------------

std::optional<HomViolation> find_hom_violation(const FiniteGroup& g, const std::vector<Elem>& images) {
  const std::size_t n = g.order();
  if (images.size() != n) throw input_error("endomorphism map is not total");
  for (Elem v : images)
    if (v >= n) throw input_error("endomorphism image out of range");
  if (n <= limits().scaled(limits().table_backend_max) && n * n <= 4200000) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return HomViolation{a, b};
    return std::nullopt;
  }
  // map(a*s) = map(a)*map(s) for all a and generators s implies the full
  // property by induction on generator words.
  if (images[g.identity()] != g.identity()) return HomViolation{g.identity(), g.identity()};
  for (Elem a = 0; a < n; ++a)
    for (Elem s : g.generators())
      if (images[g.mul(a, s)] != g.mul(images[a], images[s])) return HomViolation{a, s};
  return std::nullopt;
}

Endomorphism Endomorphism::checked(GroupPtr g, std::vector<Elem> images) {
  if (auto v = find_hom_violation(*g, images)) {
    throw input_error("not a homomorphism: map(" + g->label(v->a) + "*" + g->label(v->b) + ") != map(" +
                      g->label(v->a) + ")*map(" + g->label(v->b) + ")");
  }
  return Endomorphism(std::move(g), std::move(images));
}

Endomorphism Endomorphism::trusted(GroupPtr g, std::vector<Elem> images) {
  return Endomorphism(std::move(g), std::move(images));
}

Endomorphism Endomorphism::identity(GroupPtr g) {
  std::vector<Elem> m(g->order());
  for (Elem a = 0; a < m.size(); ++a) m[a] = a;
  return Endomorphism(std::move(g), std::move(m));
}

Endomorphism Endomorphism::trivial(GroupPtr g) {
  std::vector<Elem> m(g->order(), g->identity());
  return Endomorphism(std::move(g), std::move(m));
}

Endomorphism Endomorphism::power(GroupPtr g, std::uint64_t n) {
  std::vector<Elem> m(g->order());
  for (Elem a = 0; a < m.size(); ++a) {
    Elem x = g->identity(), base = a;
    std::uint64_t k = n;
    while (k) {
      if (k & 1) x = g->mul(x, base);
      base = g->mul(base, base);
      k >>= 1;
    }
    m[a] = x;
  }
  return checked(std::move(g), std::move(m));
}

Endomorphism Endomorphism::conjugation(GroupPtr g, Elem by) {
  if (by >= g->order()) throw input_error("conjugation element out of range");
  std::vector<Elem> m(g->order());
  const Elem inv = g->inverse(by);
  for (Elem a = 0; a < m.size(); ++a) m[a] = g->mul(g->mul(by, a), inv);
  return Endomorphism(std::move(g), std::move(m));  // conjugation is always an automorphism
}

Endomorphism Endomorphism::from_generator_images(GroupPtr g, const std::vector<Elem>& images) {
  const auto& gens = g->generators();
  if (images.size() != gens.size())
    throw input_error("expected " + std::to_string(gens.size()) + " generator images, got " +
                      std::to_string(images.size()));
  const std::size_t n = g->order();
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> m(n, kUnset);
  m[g->identity()] = g->identity();
  std::vector<Elem> frontier{g->identity()};
  std::size_t assigned = 1;
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem a : frontier) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Elem b = g->mul(a, gens[i]);
        if (m[b] == kUnset) {
          m[b] = g->mul(m[a], images[i]);
          ++assigned;
          next.push_back(b);
        }
      }
    }
    frontier = std::move(next);
  }
  if (assigned != n) throw internal_error("generator closure did not reach the whole group");
  return checked(std::move(g), std::move(m));
}

bool Endomorphism::is_identity() const {
  for (Elem a = 0; a < map_.size(); ++a)
    if (map_[a] != a) return false;
  return true;
}

bool Endomorphism::is_trivial() const {
  const Elem e = group_->identity();
  for (Elem v : map_)
    if (v != e) return false;
  return true;
}

Endomorphism Endomorphism::after(const Endomorphism& g) const {
  std::vector<Elem> m(map_.size());
  for (Elem a = 0; a < m.size(); ++a) m[a] = map_[g.map_[a]];
  return Endomorphism(group_, std::move(m));
}

Endomorphism Endomorphism::pointwise_product(const Endomorphism& other) const {
  std::vector<Elem> m(map_.size());
  for (Elem a = 0; a < m.size(); ++a) m[a] = group_->mul(map_[a], other.map_[a]);
  return Endomorphism(group_, std::move(m));
}

bool Endomorphism::is_bijective() const {
  std::vector<bool> seen(map_.size(), false);
  for (Elem v : map_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

unsigned Endomorphism::order_as_automorphism() const {
  if (!is_bijective()) throw input_error("order_as_automorphism: map is not bijective");
  // order of the map as a permutation of G: lcm of cycle lengths
  std::vector<bool> seen(map_.size(), false);
  std::uint64_t ord = 1;
  for (Elem a = 0; a < map_.size(); ++a) {
    if (seen[a]) continue;
    std::uint64_t len = 0;
    Elem x = a;
    while (!seen[x]) {
      seen[x] = true;
      x = map_[x];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<unsigned>(ord);
}

unsigned automorphism_order(const Endomorphism& h) { return h.order_as_automorphism(); }

// ---- GroupWord -----------------------------------------------------------------

GroupWord::GroupWord(unsigned ar, std::vector<std::pair<unsigned, int>> raw) : arity(ar) {
  if (arity == 0) throw input_error("word arity must be >= 1");
  for (auto& [var, sgn] : raw) {
    if (var >= arity) throw input_error("word letter variable out of range");
    if (sgn != 1 && sgn != -1) throw input_error("word letter exponent must be +-1");
    if (!letters.empty() && letters.back().first == var && letters.back().second == -sgn)
      letters.pop_back();  // free reduction
    else
      letters.emplace_back(var, sgn);
  }
}

Elem GroupWord::eval(const FiniteGroup& g, std::span<const Elem> args) const {
  Elem r = g.identity();
  for (const auto& [var, sgn] : letters) {
    const Elem x = sgn > 0 ? args[var] : g.inverse(args[var]);
    r = g.mul(r, x);
  }
  return r;
}

std::string GroupWord::render() const {
  if (letters.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const auto count = static_cast<long long>(j - i) * letters[i].second;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(letters[i].first + 1);
    if (count != 1) out += "^" + std::to_string(count);
    i = j;
  }
  return out;
}

GroupWord GroupWord::commutator() {
  return GroupWord(2, {{0, -1}, {1, -1}, {0, 1}, {1, 1}});
}

GroupWord GroupWord::power(unsigned n) {
  std::vector<std::pair<unsigned, int>> l(n, {0, 1});
  return GroupWord(1, std::move(l));
}

GroupWord GroupWord::variable() { return GroupWord(1, {{0, 1}}); }

// ---- subgroup machinery -----------------------------------------------------------

Subgroup image(const Endomorphism& h) {
  std::vector<bool> mask(h.group()->order(), false);
  std::vector<Elem> members;
  for (Elem v : h.table())
    if (!mask[v]) {
      mask[v] = true;
      members.push_back(v);
    }
  std::sort(members.begin(), members.end());
  Subgroup s;
  s.parent = h.group();
  s.members = std::move(members);
  s.mask = std::move(mask);
  return s;
}

Subgroup kernel(const Endomorphism& h) {
  const Elem e = h.group()->identity();
  std::vector<Elem> members;
  for (Elem a = 0; a < h.group()->order(); ++a)
    if (h(a) == e) members.push_back(a);
  return Subgroup::from_members(h.group(), std::move(members));
}

Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens) {
  std::vector<bool> mask(g->order(), false);
  std::vector<Elem> members{g->identity()};
  mask[g->identity()] = true;
  std::vector<Elem> use;
  for (Elem s : gens)
    if (!mask[s]) {
      mask[s] = true;
      members.push_back(s);
      use.push_back(s);
    }
  // right-multiplication closure; inverses appear automatically in a finite group
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Elem s : use) {
      const Elem y = g->mul(members[head], s);
      if (!mask[y]) {
        mask[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  Subgroup out;
  out.parent = std::move(g);
  out.members = std::move(members);
  out.mask = std::move(mask);
  return out;
}

std::vector<Elem> subgroup_generators(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<Elem> gens;
  std::vector<bool> in_closure(g.order(), false);
  in_closure[g.identity()] = true;
  std::size_t size = 1;
  for (Elem cand : h.members) {
    if (in_closure[cand]) continue;
    gens.push_back(cand);
    std::vector<Elem> frontier;
    for (Elem m : h.members)
      if (in_closure[m]) frontier.push_back(m);
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem x : frontier)
        for (Elem s : gens) {
          const Elem y = g.mul(x, s);
          if (!in_closure[y]) {
            in_closure[y] = true;
            ++size;
            next.push_back(y);
          }
        }
      frontier = std::move(next);
    }
    if (size == h.members.size()) break;
  }
  return gens;
}

Subgroup normal_closure(GroupPtr g, const std::vector<Elem>& seed) {
  std::vector<Elem> gens = seed;
  Subgroup n = subgroup_generated(g, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> add;
    for (Elem x : gens)
      for (Elem s : g->generators()) {
        const Elem y = g->conj(s, x);
        if (!n.contains(y)) add.push_back(y);
      }
    if (!add.empty()) {
      gens.insert(gens.end(), add.begin(), add.end());
      n = subgroup_generated(g, gens);
      grew = true;
    }
  }
  return n;
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  for (Elem s : g.generators())
    for (Elem x : subgroup_generators(h))
      if (!h.contains(g.conj(s, x))) return false;
  return true;
}

Subgroup verbal_subgroup(GroupPtr g, const GroupWord& w) {
  const std::size_t n = g->order();
  std::uint64_t tuples = 1;
  for (unsigned i = 0; i < w.arity; ++i) {
    tuples *= n;
    if (tuples > limits().scaled64(limits().word_tuple_budget))
      throw budget_error("verbal subgroup: |G|^arity exceeds the enumeration budget");
  }
  std::vector<bool> value_seen(n, false);
  std::vector<Elem> values;
  std::vector<Elem> args(w.arity, 0);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < w.arity; ++i) {
      args[i] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    const Elem v = w.eval(*g, args);
    if (!value_seen[v]) {
      value_seen[v] = true;
      values.push_back(v);
    }
  }
  return subgroup_generated(std::move(g), values);
}

}  // namespace gcadec
