#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcadec {

/// Element of a finite group, identified by its index in the group's enumeration.
using Elem = std::uint32_t;

/// A point of the d-dimensional integer lattice (a neighbor offset, shift vector, ...).
using Offset = std::vector<std::int64_t>;

/// Bad or infeasible input. CLI exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration limit was exceeded. CLI exit code 2.
class budget_error : public input_error {
 public:
  explicit budget_error(const std::string& what) : input_error(what) {}
};

/// A cross-check that must hold by theory failed; the verdict cannot be
/// trusted. CLI exit code 3, never a silent answer.
class internal_error : public std::runtime_error {
 public:
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration budgets. All are multiplied by `scale`, which the CLI sets
/// from the GCADEC_BUDGET environment variable.
struct Limits {
  double scale = 1.0;

  std::size_t table_backend_max = 2000;   // max order for a dense Cayley table
  std::size_t assoc_check_max = 256;      // exhaustive associativity check cutoff
  std::size_t endo_enum_max_order = 24;   // End(G) enumeration cutoff
  std::uint64_t word_tuple_budget = 50000000;  // |G|^arity cap for word evaluation
  unsigned word_search_max_len = 8;       // fallback verbal word search length
  unsigned word_search_max_arity = 2;
  std::uint64_t coprime_q_max = 4096;     // cap on q in gcd(chi, t^q - 1)
  std::uint64_t oracle_assign_budget = 4000000;  // backtracking assignment cap
  std::uint64_t iso_attempt_budget = 2000000;    // isomorphism backtracking cap

  std::size_t scaled(std::size_t v) const {
    double s = static_cast<double>(v) * scale;
    return s < 1.0 ? std::size_t{1} : static_cast<std::size_t>(s);
  }
  std::uint64_t scaled64(std::uint64_t v) const {
    double s = static_cast<double>(v) * scale;
    return s < 1.0 ? std::uint64_t{1} : static_cast<std::uint64_t>(s);
  }
};

/// Process-wide budget knobs.
Limits& limits();

std::string offset_to_string(const Offset& o);

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw input_error("integer overflow in offset/exponent arithmetic");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw input_error("integer overflow in offset/exponent arithmetic");
  return r;
}

}  // namespace gcadec
