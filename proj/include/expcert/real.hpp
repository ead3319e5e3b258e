#ifndef EXPCERT_REAL_HPP
#define EXPCERT_REAL_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <mpfr.h>

#include "expcert/numth.hpp"

namespace expcert {

/// Owning wrapper around an mpfr_t.
class Float {
 public:
  explicit Float(mpfr_prec_t bits = 128);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Decimal rendering rounded in the given direction.
  std::string str(mpfr_rnd_t rnd = MPFR_RNDN, int digits = 25) const;
  /// Exact dyadic value of a finite float.
  Rational to_rational() const;

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] guaranteed to contain the true value.
struct CertifiedReal {
  Float lo;
  Float hi;
  unsigned long precision_bits = 0;

  bool contains(const Rational& q) const;
  Float width() const;
  std::string str() const;
};

/// An interval straddles a domain boundary; retry at higher precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The expression is outside its domain at every precision (log of a
/// non-positive number, division by zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A required comparison could not be separated within the precision cap.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrecisionSchedule {
  unsigned long start_bits = 128;
  unsigned long cap_bits = 65536;
};

/// Immutable real-valued expression. Evaluates to certified intervals at any
/// precision and keeps an exact rational value when one is known.
class Real {
 public:
  Real();  // zero
  Real(long v);  // NOLINT(google-explicit-constructor)
  Real(const BigInt& v);  // NOLINT(google-explicit-constructor)
  Real(const Rational& v);  // NOLINT(google-explicit-constructor)

  /// Exact value of a decimal literal such as "7531.1" or "26e10".
  static Real decimal(const std::string& literal);
  static Real pi();
  static Real e();

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend Real log(const Real& x);
  friend Real exp(const Real& x);
  friend Real sqrt(const Real& x);
  /// x^y as exp(y log x), or exactly when x and y are exact and y is a small integer.
  friend Real pow(const Real& x, const Real& y);
  friend Real max(const Real& a, const Real& b);
  friend Real min(const Real& a, const Real& b);

  std::optional<Rational> exact() const;
  /// Argument of a top-level log whose argument is exact.
  std::optional<Rational> exact_log_argument() const;

  CertifiedReal evaluate(unsigned long bits) const;
  std::string str() const;

  struct Node;

 private:
  explicit Real(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real pow(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Interval for log x with width <= 2^(1-bits) * max(1, |log x|).
CertifiedReal certified_log(const Rational& x, unsigned long bits);

/// log A / log B; exact when A and B are powers of a common base.
Real log_ratio(const BigInt& a, const BigInt& b);

enum class Ordering { Less, Equal, Greater, Indeterminate };
std::string to_string(Ordering o);

struct Comparison {
  Ordering result = Ordering::Indeterminate;
  std::string lhs_expr;
  std::string rhs_expr;
  std::string lhs_interval;
  std::string rhs_interval;
  unsigned long precision_bits = 0;
  bool exact_path = false;
};

/// Decides lhs vs rhs. Exact values are compared exactly; logs of exact
/// arguments compare their arguments; otherwise intervals are evaluated from
/// schedule.start_bits, doubling up to schedule.cap_bits.
Comparison certified_compare(const Real& lhs, const Real& rhs,
                             const PrecisionSchedule& schedule = {});

bool certainly_less(const Real& lhs, const Real& rhs, const PrecisionSchedule& schedule = {});
bool certainly_greater(const Real& lhs, const Real& rhs,
                       const PrecisionSchedule& schedule = {});

/// Largest integer N with N < v (strict) or N <= v, computed from a certified
/// upper endpoint. Always >= the true answer.
BigInt upper_integer(const Real& v, bool strict, const PrecisionSchedule& schedule = {});
/// Smallest integer N with N > v (strict) or N >= v. Always <= the true answer.
BigInt lower_integer(const Real& v, bool strict, const PrecisionSchedule& schedule = {});

/// Evaluates v at increasing precision until the interval width drops below
/// 2^-target_bits relative, returning the narrowest interval reached.
CertifiedReal evaluate_to(const Real& v, unsigned long target_bits,
                          const PrecisionSchedule& schedule = {});

}  // namespace expcert

#endif  // EXPCERT_REAL_HPP
