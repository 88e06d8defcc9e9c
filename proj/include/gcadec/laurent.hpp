#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcadec/common.hpp"

namespace gcadec {

/// Exponent vector of a monomial; negative entries are allowed.
using Monomial = std::vector<std::int64_t>;

/// Multivariate Laurent polynomial over F_p. Canonical: no zero coefficients,
/// one entry per monomial, so equal polynomials have identical term maps.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(unsigned p, unsigned vars) : p_(p), vars_(vars) {}

  unsigned modulus() const { return p_; }
  unsigned vars() const { return vars_; }
  const std::map<Monomial, unsigned>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool operator==(const LaurentPoly& other) const;

  LaurentPoly operator+(const LaurentPoly& other) const;
  LaurentPoly operator-() const;
  LaurentPoly operator-(const LaurentPoly& other) const;
  LaurentPoly operator*(const LaurentPoly& other) const;

  /// Total degree of the monomial of largest variable-0 exponent... not
  /// meaningful for Laurent; helpers below use explicit extremes instead.
  std::int64_t min_exponent(unsigned var) const;
  std::int64_t max_exponent(unsigned var) const;

  /// Multiplies by the minimal monomial making all exponents nonnegative
  /// (a unit of the Laurent ring); identity on ordinary polynomials.
  LaurentPoly unit_normalized() const;
  /// Divides out the largest common monomial factor.
  LaurentPoly monomial_content_removed() const;

  std::string render(const std::vector<std::string>& var_names = {}) const;

  static LaurentPoly zero(unsigned p, unsigned vars) { return LaurentPoly(p, vars); }
  static LaurentPoly constant(unsigned p, unsigned vars, long long value);
  static LaurentPoly monomial(unsigned p, unsigned vars, Monomial m, long long coeff = 1);
  static LaurentPoly variable(unsigned p, unsigned vars, unsigned index, std::int64_t power = 1);

  void add_term(Monomial m, long long coeff);  // accumulating, canonicalizing

 private:
  void check_compatible(const LaurentPoly& other) const;
  unsigned p_ = 2;
  unsigned vars_ = 0;
  std::map<Monomial, unsigned> terms_;
};

/// Square matrix of Laurent polynomials sharing (p, vars).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(unsigned n, unsigned p, unsigned vars);

  unsigned size() const { return n_; }
  unsigned modulus() const { return p_; }
  unsigned vars() const { return vars_; }
  LaurentPoly& at(unsigned i, unsigned j) { return entries_[i * n_ + j]; }
  const LaurentPoly& at(unsigned i, unsigned j) const { return entries_[i * n_ + j]; }

  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  bool operator==(const PolyMatrix& other) const { return entries_ == other.entries_; }

  static PolyMatrix identity(unsigned n, unsigned p, unsigned vars);

 private:
  unsigned n_ = 0, p_ = 2, vars_ = 0;
  std::vector<LaurentPoly> entries_;
};

/// Exact determinant: cofactor expansion for n <= 4, fraction-free elimination
/// (after clearing Laurent units) above.
LaurentPoly determinant(const PolyMatrix& m);

/// Polynomial in a distinguished indeterminate t with LaurentPoly
/// coefficients; coefficient i multiplies t^i.
class TPoly {
 public:
  TPoly() = default;
  TPoly(unsigned p, unsigned vars) : p_(p), vars_(vars) {}

  unsigned modulus() const { return p_; }
  unsigned vars() const { return vars_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  LaurentPoly coeff(unsigned i) const;
  const LaurentPoly& leading() const { return coeffs_.back(); }
  const std::vector<LaurentPoly>& coeffs() const { return coeffs_; }
  bool is_monic() const { return !is_zero() && leading().is_one(); }
  bool operator==(const TPoly& other) const;

  TPoly operator+(const TPoly& other) const;
  TPoly operator-(const TPoly& other) const;
  TPoly operator*(const TPoly& other) const;
  TPoly scaled(const LaurentPoly& c) const;

  void set_coeff(unsigned i, LaurentPoly c);
  std::string render(const std::vector<std::string>& var_names = {}) const;

  static TPoly t_power_minus_one(unsigned p, unsigned vars, std::uint64_t q);  // t^q - 1
  static TPoly from_coeffs(unsigned p, unsigned vars, std::vector<LaurentPoly> coeffs);

 private:
  void trim();
  unsigned p_ = 2;
  unsigned vars_ = 0;
  std::vector<LaurentPoly> coeffs_;
};

/// det(tI - M), monic of degree n, collected by t-degree.
TPoly char_poly(const PolyMatrix& m);

/// Substitute the matrix into the polynomial (for the Cayley-Hamilton check).
PolyMatrix substitute(const TPoly& chi, const PolyMatrix& m);

/// Decision of gcd(chi(t), t^q - 1) = 1 over the fraction field F_p(x_1..x_d).
struct CoprimeResult {
  bool coprime = true;
  /// Nontrivial common factor (up to content) when not coprime.
  std::optional<TPoly> witness;
  /// Res_t(chi, t^q - 1) from the independent Sylvester route.
  LaurentPoly resultant;
};
/// Runs both the subresultant remainder sequence and the Sylvester-resultant
/// route; throws internal_error if they disagree, budget_error for huge q.
CoprimeResult coprime_with_cyclic(const TPoly& chi, std::uint64_t q);

/// Subresultant PRS gcd over F_p(x)[t]; returns a gcd up to content.
TPoly subresultant_gcd(TPoly a, TPoly b);
/// Sylvester-matrix resultant of two t-polynomials.
LaurentPoly resultant(const TPoly& a, const TPoly& b);

/// Exact division (throws internal_error if not exact).
LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den);

/// Round-trip parsers for the textual rendering used in certificates.
LaurentPoly parse_laurent(const std::string& text, unsigned p, unsigned vars);
TPoly parse_tpoly(const std::string& text, unsigned p, unsigned vars);

}  // namespace gcadec
