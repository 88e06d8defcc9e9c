#include "gcadec/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace gcadec {

namespace {

unsigned mod_pow(unsigned base, unsigned long long e, unsigned p) {
  unsigned long long r = 1, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

unsigned mod_inverse(unsigned a, unsigned p) {
  if (a % p == 0) throw internal_error("division by zero in F_p");
  return mod_pow(a % p, p - 2, p);  // p prime
}

}  // namespace

// ---- LaurentPoly ------------------------------------------------------------

void LaurentPoly::check_compatible(const LaurentPoly& other) const {
  if (p_ != other.p_ || vars_ != other.vars_)
    throw input_error("polynomial modulus/variable-count mismatch");
}

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [m, c] = *terms_.begin();
  if (c != 1) return false;
  for (auto e : m)
    if (e != 0) return false;
  return true;
}

bool LaurentPoly::operator==(const LaurentPoly& other) const {
  return p_ == other.p_ && vars_ == other.vars_ && terms_ == other.terms_;
}

void LaurentPoly::add_term(Monomial m, long long coeff) {
  if (m.size() != vars_) throw input_error("monomial arity mismatch");
  long long c = coeff % static_cast<long long>(p_);
  if (c < 0) c += p_;
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), static_cast<unsigned>(c));
  } else {
    it->second = (it->second + static_cast<unsigned>(c)) % p_;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  check_compatible(other);
  LaurentPoly r = *this;
  for (const auto& [m, c] : other.terms_) r.add_term(m, c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(p_, vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, p_ - c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const { return *this + (-other); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
  check_compatible(other);
  LaurentPoly r(p_, vars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : other.terms_) {
      Monomial m(vars_);
      for (unsigned i = 0; i < vars_; ++i) m[i] = checked_add(m1[i], m2[i]);
      r.add_term(std::move(m), static_cast<long long>(c1) * c2);
    }
  return r;
}

std::int64_t LaurentPoly::min_exponent(unsigned var) const {
  std::int64_t m = 0;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    (void)c;
    if (first || mono[var] < m) m = mono[var];
    first = false;
  }
  return m;
}

std::int64_t LaurentPoly::max_exponent(unsigned var) const {
  std::int64_t m = 0;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    (void)c;
    if (first || mono[var] > m) m = mono[var];
    first = false;
  }
  return m;
}

LaurentPoly LaurentPoly::unit_normalized() const {
  if (terms_.empty()) return *this;
  Monomial shift(vars_, 0);
  bool needed = false;
  for (unsigned v = 0; v < vars_; ++v) {
    const auto lo = min_exponent(v);
    if (lo < 0) {
      shift[v] = -lo;
      needed = true;
    }
  }
  if (!needed) return *this;
  LaurentPoly r(p_, vars_);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars_);
    for (unsigned i = 0; i < vars_; ++i) n[i] = checked_add(m[i], shift[i]);
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

LaurentPoly LaurentPoly::monomial_content_removed() const {
  if (terms_.empty()) return *this;
  Monomial shift(vars_, 0);
  for (unsigned v = 0; v < vars_; ++v) shift[v] = -min_exponent(v);
  LaurentPoly r(p_, vars_);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars_);
    for (unsigned i = 0; i < vars_; ++i) n[i] = checked_add(m[i], shift[i]);
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

std::string LaurentPoly::render(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  auto var_name = [&](unsigned i) {
    if (i < var_names.size()) return var_names[i];
    return "x" + std::to_string(i + 1);
  };
  std::string out;
  // render in descending monomial order so constants come last
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    std::string mono;
    for (unsigned i = 0; i < vars_; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(i);
      if (m[i] != 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += std::to_string(c);
    else if (c == 1)
      out += mono;
    else
      out += std::to_string(c) + "*" + mono;
  }
  return out;
}

LaurentPoly LaurentPoly::constant(unsigned p, unsigned vars, long long value) {
  LaurentPoly r(p, vars);
  r.add_term(Monomial(vars, 0), value);
  return r;
}

LaurentPoly LaurentPoly::monomial(unsigned p, unsigned vars, Monomial m, long long coeff) {
  LaurentPoly r(p, vars);
  r.add_term(std::move(m), coeff);
  return r;
}

LaurentPoly LaurentPoly::variable(unsigned p, unsigned vars, unsigned index, std::int64_t power) {
  Monomial m(vars, 0);
  m.at(index) = power;
  return monomial(p, vars, std::move(m));
}

LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw internal_error("exact_divide: zero divisor");
  if (num.is_zero()) return LaurentPoly::zero(num.modulus(), num.vars());
  const unsigned p = num.modulus(), vars = num.vars();
  // num = n * x^mn and den = d * x^md with n, d ordinary; the quotient picks
  // up the shift x^(mn - md).
  Monomial shift(vars, 0);
  for (unsigned v = 0; v < vars; ++v) shift[v] = num.min_exponent(v) - den.min_exponent(v);
  const LaurentPoly n = num.monomial_content_removed();
  const LaurentPoly d = den.monomial_content_removed();

  LaurentPoly q(p, vars);
  LaurentPoly r = n;
  const auto& dlead = *d.terms().rbegin();
  const unsigned dlead_inv = mod_inverse(dlead.second, p);
  while (!r.is_zero()) {
    const auto& rlead = *r.terms().rbegin();
    Monomial m(vars);
    for (unsigned i = 0; i < vars; ++i) {
      m[i] = rlead.first[i] - dlead.first[i];
      if (m[i] < 0) throw internal_error("exact_divide: division is not exact");
    }
    const unsigned c = static_cast<unsigned>(static_cast<unsigned long long>(rlead.second) * dlead_inv %
                                             p);
    LaurentPoly term = LaurentPoly::monomial(p, vars, m, c);
    q = q + term;
    r = r - term * d;
  }
  // undo the normalization shifts
  LaurentPoly unit(p, vars);
  unit.add_term(shift, 1);
  return q * unit;
}

// ---- PolyMatrix --------------------------------------------------------------

PolyMatrix::PolyMatrix(unsigned n, unsigned p, unsigned vars)
    : n_(n), p_(p), vars_(vars), entries_(static_cast<std::size_t>(n) * n, LaurentPoly(p, vars)) {}

PolyMatrix PolyMatrix::identity(unsigned n, unsigned p, unsigned vars) {
  PolyMatrix m(n, p, vars);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(p, vars, 1);
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (n_ != other.n_) throw input_error("matrix size mismatch");
  PolyMatrix r(n_, p_, vars_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      LaurentPoly acc(p_, vars_);
      for (unsigned k = 0; k < n_; ++k) acc = acc + at(i, k) * other.at(k, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (n_ != other.n_) throw input_error("matrix size mismatch");
  PolyMatrix r(n_, p_, vars_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) r.at(i, j) = at(i, j) + other.at(i, j);
  return r;
}

namespace {

LaurentPoly det_cofactor(const PolyMatrix& m, std::vector<unsigned> rows, std::vector<unsigned> cols) {
  const unsigned p = m.modulus(), vars = m.vars();
  if (rows.empty()) return LaurentPoly::constant(p, vars, 1);
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  LaurentPoly acc(p, vars);
  std::vector<unsigned> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const LaurentPoly& pivot = m.at(rows[0], cols[j]);
    if (pivot.is_zero()) continue;
    std::vector<unsigned> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    LaurentPoly minor = det_cofactor(m, sub_rows, sub_cols);
    LaurentPoly contrib = pivot * minor;
    acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

LaurentPoly det_bareiss(PolyMatrix m) {
  const unsigned n = m.size(), p = m.modulus(), vars = m.vars();
  // clear Laurent units row by row; det scales by the product of the units
  Monomial total_shift(vars, 0);
  for (unsigned i = 0; i < n; ++i) {
    Monomial row_shift(vars, 0);
    for (unsigned v = 0; v < vars; ++v) {
      std::int64_t lo = 0;
      for (unsigned j = 0; j < n; ++j)
        if (!m.at(i, j).is_zero()) lo = std::min(lo, m.at(i, j).min_exponent(v));
      row_shift[v] = -lo;
    }
    bool needed = false;
    for (auto s : row_shift) needed |= s != 0;
    if (needed) {
      LaurentPoly unit(p, vars);
      unit.add_term(row_shift, 1);
      for (unsigned j = 0; j < n; ++j) m.at(i, j) = m.at(i, j) * unit;
      for (unsigned v = 0; v < vars; ++v) total_shift[v] += row_shift[v];
    }
  }
  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(p, vars, 1);
  for (unsigned k = 0; k + 1 < n; ++k) {
    unsigned pivot = k;
    while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return LaurentPoly::zero(p, vars);
    if (pivot != k) {
      for (unsigned j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
      negate = !negate;
    }
    for (unsigned i = k + 1; i < n; ++i) {
      for (unsigned j = k + 1; j < n; ++j)
        m.at(i, j) = exact_divide(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
      m.at(i, k) = LaurentPoly::zero(p, vars);
    }
    prev = m.at(k, k);
  }
  LaurentPoly det = m.at(n - 1, n - 1);
  if (negate) det = -det;
  // undo the unit clearing
  Monomial back(vars);
  for (unsigned v = 0; v < vars; ++v) back[v] = -total_shift[v];
  LaurentPoly unit(p, vars);
  unit.add_term(back, 1);
  return det * unit;
}

}  // namespace

LaurentPoly determinant(const PolyMatrix& m) {
  const unsigned n = m.size();
  if (n == 0) return LaurentPoly::constant(m.modulus(), m.vars(), 1);
  if (n <= 4) {
    std::vector<unsigned> idx(n);
    for (unsigned i = 0; i < n; ++i) idx[i] = i;
    return det_cofactor(m, idx, idx);
  }
  return det_bareiss(m);
}

// ---- TPoly ---------------------------------------------------------------------

LaurentPoly TPoly::coeff(unsigned i) const {
  if (i >= coeffs_.size()) return LaurentPoly(p_, vars_);
  return coeffs_[i];
}

void TPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void TPoly::set_coeff(unsigned i, LaurentPoly c) {
  if (coeffs_.size() <= i) coeffs_.resize(i + 1, LaurentPoly(p_, vars_));
  coeffs_[i] = std::move(c);
  trim();
}

bool TPoly::operator==(const TPoly& other) const {
  return p_ == other.p_ && vars_ == other.vars_ && coeffs_ == other.coeffs_;
}

TPoly TPoly::operator+(const TPoly& other) const {
  TPoly r(p_, vars_);
  r.coeffs_.resize(std::max(coeffs_.size(), other.coeffs_.size()), LaurentPoly(p_, vars_));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    LaurentPoly c(p_, vars_);
    if (i < coeffs_.size()) c = c + coeffs_[i];
    if (i < other.coeffs_.size()) c = c + other.coeffs_[i];
    r.coeffs_[i] = std::move(c);
  }
  r.trim();
  return r;
}

TPoly TPoly::operator-(const TPoly& other) const {
  TPoly neg = other.scaled(LaurentPoly::constant(p_, vars_, -1));
  return *this + neg;
}

TPoly TPoly::operator*(const TPoly& other) const {
  TPoly r(p_, vars_);
  if (is_zero() || other.is_zero()) return r;
  r.coeffs_.assign(coeffs_.size() + other.coeffs_.size() - 1, LaurentPoly(p_, vars_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * other.coeffs_[j];
  r.trim();
  return r;
}

TPoly TPoly::scaled(const LaurentPoly& c) const {
  TPoly r(p_, vars_);
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& ci : coeffs_) r.coeffs_.push_back(ci * c);
  r.trim();
  return r;
}

TPoly TPoly::t_power_minus_one(unsigned p, unsigned vars, std::uint64_t q) {
  TPoly r(p, vars);
  r.set_coeff(static_cast<unsigned>(q), LaurentPoly::constant(p, vars, 1));
  r.set_coeff(0, r.coeff(0) - LaurentPoly::constant(p, vars, 1));
  return r;
}

TPoly TPoly::from_coeffs(unsigned p, unsigned vars, std::vector<LaurentPoly> coeffs) {
  TPoly r(p, vars);
  r.coeffs_ = std::move(coeffs);
  r.trim();
  return r;
}

std::string TPoly::render(const std::vector<std::string>& var_names) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.render(var_names);
    const bool needs_parens = c.terms().size() > 1;
    if (i == 0) {
      out += needs_parens ? "(" + cs + ")" : cs;
    } else {
      std::string tpart = i == 1 ? "t" : "t^" + std::to_string(i);
      if (c.is_one())
        out += tpart;
      else
        out += (needs_parens ? "(" + cs + ")" : cs) + "*" + tpart;
    }
  }
  return out;
}

// ---- char poly -------------------------------------------------------------------

TPoly char_poly(const PolyMatrix& m) {
  const unsigned n = m.size(), p = m.modulus(), vars = m.vars();
  // work in vars+1 variables with t as the last one
  PolyMatrix ext(n, p, vars + 1);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      LaurentPoly e(p, vars + 1);
      for (const auto& [mono, c] : m.at(i, j).terms()) {
        Monomial em = mono;
        em.push_back(0);
        e.add_term(std::move(em), static_cast<long long>(p) - c);  // -m_ij
      }
      if (i == j) {
        Monomial t(vars + 1, 0);
        t.back() = 1;
        e.add_term(std::move(t), 1);
      }
      ext.at(i, j) = std::move(e);
    }
  const LaurentPoly det = determinant(ext);
  TPoly chi(p, vars);
  std::vector<LaurentPoly> coeffs(n + 1, LaurentPoly(p, vars));
  for (const auto& [mono, c] : det.terms()) {
    const auto tdeg = mono.back();
    if (tdeg < 0 || tdeg > n) throw internal_error("characteristic polynomial degree out of range");
    Monomial base(mono.begin(), mono.end() - 1);
    coeffs[static_cast<std::size_t>(tdeg)].add_term(std::move(base), c);
  }
  chi = TPoly::from_coeffs(p, vars, std::move(coeffs));
  if (chi.degree() != static_cast<int>(n) || !chi.is_monic())
    throw internal_error("characteristic polynomial is not monic of degree n");
  return chi;
}

PolyMatrix substitute(const TPoly& chi, const PolyMatrix& m) {
  const unsigned n = m.size(), p = m.modulus(), vars = m.vars();
  PolyMatrix acc(n, p, vars);
  PolyMatrix mpow = PolyMatrix::identity(n, p, vars);
  for (int i = 0; i <= chi.degree(); ++i) {
    const LaurentPoly& c = chi.coeff(static_cast<unsigned>(i));
    if (!c.is_zero()) {
      PolyMatrix scaled(n, p, vars);
      for (unsigned r = 0; r < n; ++r)
        for (unsigned s = 0; s < n; ++s) scaled.at(r, s) = mpow.at(r, s) * c;
      acc = acc + scaled;
    }
    if (i < chi.degree()) mpow = mpow * m;
  }
  return acc;
}

// ---- gcd / resultant ------------------------------------------------------------

namespace {

LaurentPoly poly_pow(const LaurentPoly& base, unsigned e) {
  LaurentPoly r = LaurentPoly::constant(base.modulus(), base.vars(), 1);
  for (unsigned i = 0; i < e; ++i) r = r * base;
  return r;
}

/// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B.
TPoly prem(const TPoly& a, const TPoly& b) {
  const unsigned p = a.modulus(), vars = a.vars();
  const LaurentPoly d = b.leading();
  TPoly r = a;
  int e = a.degree() - b.degree() + 1;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const LaurentPoly lcr = r.leading();
    TPoly shifted(p, vars);
    shifted.set_coeff(static_cast<unsigned>(r.degree() - b.degree()),
                      LaurentPoly::constant(p, vars, 1));
    r = r.scaled(d) - (b * shifted).scaled(lcr);
    --e;
  }
  if (e > 0) r = r.scaled(poly_pow(d, static_cast<unsigned>(e)));
  return r;
}

TPoly divide_coeffs(const TPoly& a, const LaurentPoly& d) {
  std::vector<LaurentPoly> coeffs;
  coeffs.reserve(static_cast<std::size_t>(a.degree() + 1));
  for (int i = 0; i <= a.degree(); ++i) coeffs.push_back(exact_divide(a.coeff(static_cast<unsigned>(i)), d));
  return TPoly::from_coeffs(a.modulus(), a.vars(), std::move(coeffs));
}

/// Normalize a common-factor witness: strip the overall monomial content.
TPoly strip_monomial_content(const TPoly& a) {
  if (a.is_zero()) return a;
  const unsigned vars = a.vars();
  Monomial shift(vars, 0);
  for (unsigned v = 0; v < vars; ++v) {
    std::int64_t lo = 0;
    bool first = true;
    for (int i = 0; i <= a.degree(); ++i) {
      const auto& c = a.coeff(static_cast<unsigned>(i));
      if (c.is_zero()) continue;
      const auto m = c.min_exponent(v);
      if (first || m < lo) lo = m;
      first = false;
    }
    shift[v] = -lo;
  }
  LaurentPoly unit(a.modulus(), vars);
  unit.add_term(shift, 1);
  return a.scaled(unit);
}

}  // namespace

TPoly subresultant_gcd(TPoly a, TPoly b) {
  const unsigned p = a.modulus(), vars = a.vars();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  LaurentPoly g = LaurentPoly::constant(p, vars, 1);
  LaurentPoly h = g;
  while (true) {
    const int delta = a.degree() - b.degree();
    TPoly r = prem(a, b);
    if (r.is_zero()) return b;
    if (b.degree() == 0) return b;  // nonzero constant-in-t gcd
    const LaurentPoly divisor = g * poly_pow(h, static_cast<unsigned>(delta));
    a = b;
    b = divide_coeffs(r, divisor);
    g = a.leading();
    if (delta >= 1) h = exact_divide(poly_pow(g, static_cast<unsigned>(delta)),
                                     poly_pow(h, static_cast<unsigned>(delta - 1)));
  }
}

LaurentPoly resultant(const TPoly& a, const TPoly& b) {
  const unsigned p = a.modulus(), vars = a.vars();
  const int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return LaurentPoly::zero(p, vars);
  if (m == 0) return poly_pow(a.coeff(0), static_cast<unsigned>(n));
  if (n == 0) return poly_pow(b.coeff(0), static_cast<unsigned>(m));
  const unsigned size = static_cast<unsigned>(m + n);
  PolyMatrix syl(size, p, vars);
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) syl.at(static_cast<unsigned>(row), static_cast<unsigned>(row + k)) =
        a.coeff(static_cast<unsigned>(m - k));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      syl.at(static_cast<unsigned>(n + row), static_cast<unsigned>(row + k)) =
          b.coeff(static_cast<unsigned>(n - k));
  return determinant(syl);
}

CoprimeResult coprime_with_cyclic(const TPoly& chi, std::uint64_t q) {
  if (!chi.is_monic()) throw input_error("coprime_with_cyclic expects a monic polynomial in t");
  if (q == 0) throw input_error("coprime_with_cyclic: q must be positive");
  if (q > limits().scaled64(limits().coprime_q_max))
    throw budget_error("leaf too large: q = " + std::to_string(q) + " exceeds the gcd budget");
  const unsigned p = chi.modulus(), vars = chi.vars();

  // Convention: clear Laurent units before any gcd/resultant work. Units do
  // not affect coprimality over the fraction field.
  TPoly a = strip_monomial_content(chi);
  const TPoly cyc = TPoly::t_power_minus_one(p, vars, q);

  CoprimeResult out;
  const TPoly g = subresultant_gcd(a, cyc);
  out.coprime = g.degree() == 0;
  if (!out.coprime) out.witness = strip_monomial_content(g);

  // Independent route: the Sylvester resultant vanishes iff the gcd is
  // nontrivial. Cross-checked unconditionally at manageable sizes.
  if (q <= 128) {
    out.resultant = resultant(a, cyc);
    const bool coprime_res = !out.resultant.is_zero();
    if (coprime_res != out.coprime)
      throw internal_error("gcd and resultant routes disagree in coprime_with_cyclic");
  } else {
    out.resultant = LaurentPoly::zero(p, vars);
  }
  return out;
}

// ---- parsing -----------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Number, Var, T, Plus, Minus, Times, Caret, LParen, RParen, End } kind;
  long long value = 0;   // Number
  unsigned var_index = 0;  // Var
};

class Lexer {
 public:
  Lexer(const std::string& text, unsigned vars) : text_(text), vars_(vars) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End};
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      tok_ = {Token::Number, std::stoll(text_.substr(pos_, end - pos_))};
      pos_ = end;
      return;
    }
    if (c == 'x') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == pos_ + 1) throw input_error("polynomial parse error: bare 'x'");
      const unsigned idx = static_cast<unsigned>(std::stoul(text_.substr(pos_ + 1, end - pos_ - 1)));
      if (idx == 0 || idx > vars_) throw input_error("polynomial parse error: variable x" +
                                                     std::to_string(idx) + " out of range");
      tok_ = {Token::Var, 0, idx - 1};
      pos_ = end;
      return;
    }
    if (c == 't') {
      tok_ = {Token::T};
      ++pos_;
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_ = {Token::Plus}; return;
      case '-': tok_ = {Token::Minus}; return;
      case '*': tok_ = {Token::Times}; return;
      case '^': tok_ = {Token::Caret}; return;
      case '(': tok_ = {Token::LParen}; return;
      case ')': tok_ = {Token::RParen}; return;
      default: throw input_error(std::string("polynomial parse error: unexpected '") + c + "'");
    }
  }
  const std::string& text_;
  unsigned vars_;
  std::size_t pos_ = 0;
  Token tok_{Token::End};
};

// Parses into a TPoly (LaurentPoly = TPoly of t-degree 0).
class PolyParser {
 public:
  PolyParser(const std::string& text, unsigned p, unsigned vars)
      : lex_(text, vars), p_(p), vars_(vars) {}

  TPoly parse() {
    TPoly r = parse_expr();
    if (lex_.peek().kind != Token::End) throw input_error("polynomial parse error: trailing input");
    return r;
  }

 private:
  TPoly one() const {
    TPoly r(p_, vars_);
    r.set_coeff(0, LaurentPoly::constant(p_, vars_, 1));
    return r;
  }

  TPoly parse_expr() {
    TPoly acc = parse_term();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      const bool minus = lex_.next().kind == Token::Minus;
      TPoly rhs = parse_term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  TPoly parse_term() {
    TPoly acc = parse_factor();
    while (lex_.peek().kind == Token::Times) {
      lex_.next();
      acc = acc * parse_factor();
    }
    return acc;
  }

  TPoly parse_factor() {
    bool negate = false;
    while (lex_.peek().kind == Token::Minus) {
      lex_.next();
      negate = !negate;
    }
    TPoly base = parse_atom();
    if (lex_.peek().kind == Token::Caret) {
      lex_.next();
      long long e = parse_signed_int();
      if (e < 0) {
        // negative powers only make sense for single Laurent monomials
        const LaurentPoly c0 = base.coeff(0);
        if (base.degree() != 0 || c0.terms().size() != 1)
          throw input_error("polynomial parse error: negative power of a non-monomial");
        const auto& [mono, c] = *c0.terms().begin();
        if (c != 1) throw input_error("polynomial parse error: negative power of a scaled monomial");
        Monomial m(vars_, 0);
        for (unsigned i = 0; i < vars_; ++i) m[i] = checked_mul(mono[i], e);
        TPoly r(p_, vars_);
        r.set_coeff(0, LaurentPoly::monomial(p_, vars_, std::move(m)));
        base = r;
      } else {
        TPoly acc = one();
        for (long long i = 0; i < e; ++i) acc = acc * base;
        base = acc;
      }
    }
    if (negate) base = base.scaled(LaurentPoly::constant(p_, vars_, -1));
    return base;
  }

  long long parse_signed_int() {
    bool neg = false;
    while (lex_.peek().kind == Token::Minus) {
      lex_.next();
      neg = !neg;
    }
    if (lex_.peek().kind != Token::Number) throw input_error("polynomial parse error: expected integer");
    const long long v = lex_.next().value;
    return neg ? -v : v;
  }

  TPoly parse_atom() {
    const Token t = lex_.next();
    switch (t.kind) {
      case Token::Number: {
        TPoly r(p_, vars_);
        r.set_coeff(0, LaurentPoly::constant(p_, vars_, t.value));
        return r;
      }
      case Token::Var: {
        TPoly r(p_, vars_);
        r.set_coeff(0, LaurentPoly::variable(p_, vars_, t.var_index));
        return r;
      }
      case Token::T: {
        TPoly r(p_, vars_);
        r.set_coeff(1, LaurentPoly::constant(p_, vars_, 1));
        return r;
      }
      case Token::LParen: {
        TPoly r = parse_expr();
        if (lex_.next().kind != Token::RParen) throw input_error("polynomial parse error: expected ')'");
        return r;
      }
      default:
        throw input_error("polynomial parse error: unexpected token");
    }
  }

  Lexer lex_;
  unsigned p_, vars_;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, unsigned p, unsigned vars) {
  TPoly t = PolyParser(text, p, vars).parse();
  if (t.degree() > 0) throw input_error("expected a polynomial without t");
  return t.is_zero() ? LaurentPoly::zero(p, vars) : t.coeff(0);
}

TPoly parse_tpoly(const std::string& text, unsigned p, unsigned vars) {
  return PolyParser(text, p, vars).parse();
}

}  // namespace gcadec
