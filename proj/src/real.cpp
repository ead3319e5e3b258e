#include "expcert/real.hpp"

#include <algorithm>
#include <cctype>

namespace expcert {

// ---------------------------------------------------------------- Float

Float::Float(mpfr_prec_t bits) { mpfr_init2(value_, bits); }

Float::Float(const Float& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

std::string Float::str(mpfr_rnd_t rnd, int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*e", digits, rnd, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Rational Float::to_rational() const {
  if (!mpfr_number_p(value_)) throw std::domain_error("to_rational: non-finite value");
  BigInt mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  Rational out(mant);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return out;
}

bool CertifiedReal::contains(const Rational& q) const {
  return mpfr_cmp_q(lo.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), q.get_mpq_t()) >= 0;
}

Float CertifiedReal::width() const {
  Float w(std::max<mpfr_prec_t>(precision_bits, MPFR_PREC_MIN));
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  return w;
}

std::string CertifiedReal::str() const {
  return "[" + lo.str(MPFR_RNDD, 20) + ", " + hi.str(MPFR_RNDU, 20) + "]";
}

// ---------------------------------------------------------------- nodes

struct Real::Node {
  enum class Kind { Const, Add, Sub, Mul, Div, Neg, Log, Exp, Sqrt, Pow, Pi, E, Max, Min };
  Kind kind = Kind::Const;
  Rational value;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::optional<Rational> exact;
};

namespace {

using Node = Real::Node;
using Kind = Real::Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

constexpr unsigned long kExactPowBitLimit = 1UL << 20;

NodePtr make_const(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = q;
  n->value.canonicalize();
  n->exact = n->value;
  return n;
}

NodePtr make(Kind k, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

struct Interval {
  Float lo;
  Float hi;
};

Interval point(const Rational& q, mpfr_prec_t p) {
  Interval r{Float(p), Float(p)};
  mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

void check_finite(const Interval& v) {
  if (!mpfr_number_p(v.lo.get()) || !mpfr_number_p(v.hi.get())) {
    throw std::overflow_error("certified evaluation left the finite float range");
  }
}

Interval multiply(const Interval& x, const Interval& y, mpfr_prec_t p) {
  Float cand_lo(p);
  Float cand_hi(p);
  Interval r{Float(p), Float(p)};
  bool first = true;
  for (const Float* u : {&x.lo, &x.hi}) {
    for (const Float* v : {&y.lo, &y.hi}) {
      mpfr_mul(cand_lo.get(), u->get(), v->get(), MPFR_RNDD);
      mpfr_mul(cand_hi.get(), u->get(), v->get(), MPFR_RNDU);
      if (first || mpfr_less_p(cand_lo.get(), r.lo.get())) mpfr_set(r.lo.get(), cand_lo.get(), MPFR_RNDD);
      if (first || mpfr_greater_p(cand_hi.get(), r.hi.get())) mpfr_set(r.hi.get(), cand_hi.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval divide(const Interval& x, const Interval& y, mpfr_prec_t p) {
  if (mpfr_sgn(y.lo.get()) <= 0 && mpfr_sgn(y.hi.get()) >= 0) {
    if (mpfr_zero_p(y.lo.get()) && mpfr_zero_p(y.hi.get())) throw DomainError("division by zero");
    throw PrecisionError("divisor interval contains zero");
  }
  Float cand_lo(p);
  Float cand_hi(p);
  Interval r{Float(p), Float(p)};
  bool first = true;
  for (const Float* u : {&x.lo, &x.hi}) {
    for (const Float* v : {&y.lo, &y.hi}) {
      mpfr_div(cand_lo.get(), u->get(), v->get(), MPFR_RNDD);
      mpfr_div(cand_hi.get(), u->get(), v->get(), MPFR_RNDU);
      if (first || mpfr_less_p(cand_lo.get(), r.lo.get())) mpfr_set(r.lo.get(), cand_lo.get(), MPFR_RNDD);
      if (first || mpfr_greater_p(cand_hi.get(), r.hi.get())) mpfr_set(r.hi.get(), cand_hi.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval interval_log(const Interval& x, mpfr_prec_t p) {
  if (mpfr_sgn(x.hi.get()) <= 0) throw DomainError("log of a non-positive value");
  if (mpfr_sgn(x.lo.get()) <= 0) throw PrecisionError("log argument interval reaches zero");
  Interval r{Float(p), Float(p)};
  mpfr_log(r.lo.get(), x.lo.get(), MPFR_RNDD);
  mpfr_log(r.hi.get(), x.hi.get(), MPFR_RNDU);
  return r;
}

Interval interval_exp(const Interval& x, mpfr_prec_t p) {
  Interval r{Float(p), Float(p)};
  mpfr_exp(r.lo.get(), x.lo.get(), MPFR_RNDD);
  mpfr_exp(r.hi.get(), x.hi.get(), MPFR_RNDU);
  return r;
}

Interval eval(const Node& n, mpfr_prec_t p) {
  if (n.exact) return point(*n.exact, p);
  Interval r{Float(p), Float(p)};
  switch (n.kind) {
    case Kind::Const:
      return point(n.value, p);
    case Kind::Pi:
      mpfr_const_pi(r.lo.get(), MPFR_RNDD);
      mpfr_const_pi(r.hi.get(), MPFR_RNDU);
      return r;
    case Kind::E: {
      Float one(p);
      mpfr_set_ui(one.get(), 1, MPFR_RNDN);
      mpfr_exp(r.lo.get(), one.get(), MPFR_RNDD);
      mpfr_exp(r.hi.get(), one.get(), MPFR_RNDU);
      return r;
    }
    case Kind::Add: {
      const Interval x = eval(*n.a, p);
      const Interval y = eval(*n.b, p);
      mpfr_add(r.lo.get(), x.lo.get(), y.lo.get(), MPFR_RNDD);
      mpfr_add(r.hi.get(), x.hi.get(), y.hi.get(), MPFR_RNDU);
      break;
    }
    case Kind::Sub: {
      const Interval x = eval(*n.a, p);
      const Interval y = eval(*n.b, p);
      mpfr_sub(r.lo.get(), x.lo.get(), y.hi.get(), MPFR_RNDD);
      mpfr_sub(r.hi.get(), x.hi.get(), y.lo.get(), MPFR_RNDU);
      break;
    }
    case Kind::Neg: {
      const Interval x = eval(*n.a, p);
      mpfr_neg(r.lo.get(), x.hi.get(), MPFR_RNDD);
      mpfr_neg(r.hi.get(), x.lo.get(), MPFR_RNDU);
      break;
    }
    case Kind::Mul:
      r = multiply(eval(*n.a, p), eval(*n.b, p), p);
      break;
    case Kind::Div:
      r = divide(eval(*n.a, p), eval(*n.b, p), p);
      break;
    case Kind::Log:
      r = interval_log(eval(*n.a, p), p);
      break;
    case Kind::Exp:
      r = interval_exp(eval(*n.a, p), p);
      break;
    case Kind::Sqrt: {
      const Interval x = eval(*n.a, p);
      if (mpfr_sgn(x.hi.get()) < 0) throw DomainError("sqrt of a negative value");
      if (mpfr_sgn(x.lo.get()) < 0) throw PrecisionError("sqrt argument interval crosses zero");
      mpfr_sqrt(r.lo.get(), x.lo.get(), MPFR_RNDD);
      mpfr_sqrt(r.hi.get(), x.hi.get(), MPFR_RNDU);
      break;
    }
    case Kind::Pow:
      r = interval_exp(multiply(eval(*n.b, p), interval_log(eval(*n.a, p), p), p), p);
      break;
    case Kind::Max: {
      const Interval x = eval(*n.a, p);
      const Interval y = eval(*n.b, p);
      mpfr_max(r.lo.get(), x.lo.get(), y.lo.get(), MPFR_RNDD);
      mpfr_max(r.hi.get(), x.hi.get(), y.hi.get(), MPFR_RNDU);
      break;
    }
    case Kind::Min: {
      const Interval x = eval(*n.a, p);
      const Interval y = eval(*n.b, p);
      mpfr_min(r.lo.get(), x.lo.get(), y.lo.get(), MPFR_RNDD);
      mpfr_min(r.hi.get(), x.hi.get(), y.hi.get(), MPFR_RNDU);
      break;
    }
  }
  check_finite(r);
  return r;
}

std::string render(const Node& n) {
  switch (n.kind) {
    case Kind::Const:
      return n.value.get_den() == 1 ? n.value.get_num().get_str() : n.value.get_str();
    case Kind::Pi:
      return "pi";
    case Kind::E:
      return "e";
    case Kind::Add:
      return "(" + render(*n.a) + " + " + render(*n.b) + ")";
    case Kind::Sub:
      return "(" + render(*n.a) + " - " + render(*n.b) + ")";
    case Kind::Mul:
      return "(" + render(*n.a) + " * " + render(*n.b) + ")";
    case Kind::Div:
      return "(" + render(*n.a) + " / " + render(*n.b) + ")";
    case Kind::Neg:
      return "-" + render(*n.a);
    case Kind::Log:
      return "log(" + render(*n.a) + ")";
    case Kind::Exp:
      return "exp(" + render(*n.a) + ")";
    case Kind::Sqrt:
      return "sqrt(" + render(*n.a) + ")";
    case Kind::Pow:
      return "pow(" + render(*n.a) + ", " + render(*n.b) + ")";
    case Kind::Max:
      return "max(" + render(*n.a) + ", " + render(*n.b) + ")";
    case Kind::Min:
      return "min(" + render(*n.a) + ", " + render(*n.b) + ")";
  }
  return "?";
}

std::optional<Rational> exact_pow(const Rational& x, const Rational& y) {
  if (y.get_den() != 1 || !y.get_num().fits_slong_p()) return std::nullopt;
  const long k = y.get_num().get_si();
  if (k < 0 && x == 0) return std::nullopt;
  const unsigned long mag = static_cast<unsigned long>(k < 0 ? -k : k);
  const std::size_t bits = mpz_sizeinbase(x.get_num().get_mpz_t(), 2) +
                           mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
  if (mag > 0 && bits * mag > kExactPowBitLimit) return std::nullopt;
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), mag);
  Rational out = k < 0 ? Rational(den, num) : Rational(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Real

Real::Real() : node_(make_const(Rational(0))) {}
Real::Real(long v) : node_(make_const(Rational(v))) {}
Real::Real(const BigInt& v) : node_(make_const(Rational(v))) {}
Real::Real(const Rational& v) : node_(make_const(v)) {}

Real Real::decimal(const std::string& literal) {
  std::string mant = literal;
  long exp10 = 0;
  const auto epos = literal.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = literal.substr(0, epos);
    exp10 = std::stol(literal.substr(epos + 1));
  }
  bool negative = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::string digits;
  bool after_point = false;
  for (char ch : mant) {
    if (ch == '.' && !after_point) {
      after_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("not a decimal literal: " + literal);
    }
    digits.push_back(ch);
    if (after_point) --exp10;
  }
  if (digits.empty()) throw std::invalid_argument("not a decimal literal: " + literal);
  Rational q{BigInt(digits, 10)};
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0) {
    q *= scale;
  } else {
    q /= scale;
  }
  if (negative) q = -q;
  return Real(q);
}

Real Real::pi() { return Real(make(Kind::Pi, nullptr)); }
Real Real::e() { return Real(make(Kind::E, nullptr)); }

Real operator+(const Real& a, const Real& b) {
  if (a.node_->exact && b.node_->exact) return Real(*a.node_->exact + *b.node_->exact);
  return Real(make(Kind::Add, a.node_, b.node_));
}

Real operator-(const Real& a, const Real& b) {
  if (a.node_->exact && b.node_->exact) return Real(*a.node_->exact - *b.node_->exact);
  return Real(make(Kind::Sub, a.node_, b.node_));
}

Real operator*(const Real& a, const Real& b) {
  if (a.node_->exact && b.node_->exact) return Real(*a.node_->exact * *b.node_->exact);
  return Real(make(Kind::Mul, a.node_, b.node_));
}

Real operator/(const Real& a, const Real& b) {
  if (b.node_->exact && *b.node_->exact == 0) throw DomainError("division by zero");
  if (a.node_->exact && b.node_->exact) return Real(*a.node_->exact / *b.node_->exact);
  return Real(make(Kind::Div, a.node_, b.node_));
}

Real operator-(const Real& a) {
  if (a.node_->exact) return Real(Rational(-*a.node_->exact));
  return Real(make(Kind::Neg, a.node_));
}

Real log(const Real& x) {
  if (x.node_->exact) {
    if (*x.node_->exact <= 0) throw DomainError("log of a non-positive value");
    if (*x.node_->exact == 1) return Real(0L);
  }
  return Real(make(Kind::Log, x.node_));
}

Real exp(const Real& x) {
  if (x.node_->exact && *x.node_->exact == 0) return Real(1L);
  return Real(make(Kind::Exp, x.node_));
}

Real sqrt(const Real& x) {
  if (x.node_->exact) {
    const Rational& q = *x.node_->exact;
    if (q < 0) throw DomainError("sqrt of a negative value");
    if (mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
        mpz_perfect_square_p(q.get_den().get_mpz_t())) {
      return Real(Rational(::sqrt(q.get_num()), ::sqrt(q.get_den())));
    }
  }
  return Real(make(Kind::Sqrt, x.node_));
}

Real pow(const Real& x, const Real& y) {
  if (x.node_->exact && y.node_->exact) {
    if (auto q = exact_pow(*x.node_->exact, *y.node_->exact)) return Real(*q);
  }
  if (x.node_->exact && *x.node_->exact <= 0) throw DomainError("pow with non-positive base");
  return Real(make(Kind::Pow, x.node_, y.node_));
}

Real max(const Real& a, const Real& b) {
  if (a.node_->exact && b.node_->exact) return Real(std::max(*a.node_->exact, *b.node_->exact));
  return Real(make(Kind::Max, a.node_, b.node_));
}

Real min(const Real& a, const Real& b) {
  if (a.node_->exact && b.node_->exact) return Real(std::min(*a.node_->exact, *b.node_->exact));
  return Real(make(Kind::Min, a.node_, b.node_));
}

std::optional<Rational> Real::exact() const { return node_->exact; }

std::optional<Rational> Real::exact_log_argument() const {
  if (node_->kind == Kind::Log && node_->a->exact) return node_->a->exact;
  return std::nullopt;
}

CertifiedReal Real::evaluate(unsigned long bits) const {
  const auto p = static_cast<mpfr_prec_t>(std::max<unsigned long>(bits, MPFR_PREC_MIN));
  Interval v = eval(*node_, p);
  return CertifiedReal{std::move(v.lo), std::move(v.hi), bits};
}

std::string Real::str() const { return render(*node_); }

// ---------------------------------------------------------------- helpers

CertifiedReal certified_log(const Rational& x, unsigned long bits) {
  if (x <= 0) throw DomainError("certified_log: argument must be positive");
  CertifiedReal out = log(Real(x)).evaluate(bits + 4);
  out.precision_bits = bits;
  return out;
}

Real log_ratio(const BigInt& a, const BigInt& b) {
  const PerfectPower pa = perfect_power_root(a);
  const PerfectPower pb = perfect_power_root(b);
  if (pa.base == pb.base && pa.base > 1) return Real(Rational(BigInt(pa.exponent), BigInt(pb.exponent)));
  return log(Real(a)) / log(Real(b));
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less:
      return "Less";
    case Ordering::Equal:
      return "Equal";
    case Ordering::Greater:
      return "Greater";
    case Ordering::Indeterminate:
      return "Indeterminate";
  }
  return "?";
}

namespace {

Ordering order_of(int cmp) {
  return cmp < 0 ? Ordering::Less : (cmp > 0 ? Ordering::Greater : Ordering::Equal);
}

}  // namespace

Comparison certified_compare(const Real& lhs, const Real& rhs, const PrecisionSchedule& schedule) {
  Comparison out;
  out.lhs_expr = lhs.str();
  out.rhs_expr = rhs.str();
  const auto lx = lhs.exact();
  const auto rx = rhs.exact();
  if (lx && rx) {
    out.result = order_of(cmp(*lx, *rx));
    out.exact_path = true;
    out.lhs_interval = lx->get_str();
    out.rhs_interval = rx->get_str();
    return out;
  }
  const auto la = lhs.exact_log_argument();
  const auto ra = rhs.exact_log_argument();
  if (la && ra) {
    out.result = order_of(cmp(*la, *ra));
    out.exact_path = true;
    out.lhs_interval = "log(" + la->get_str() + ")";
    out.rhs_interval = "log(" + ra->get_str() + ")";
    return out;
  }
  for (unsigned long bits = schedule.start_bits; bits <= schedule.cap_bits; bits *= 2) {
    out.precision_bits = bits;
    try {
      const CertifiedReal l = lhs.evaluate(bits);
      const CertifiedReal r = rhs.evaluate(bits);
      out.lhs_interval = l.str();
      out.rhs_interval = r.str();
      if (mpfr_less_p(l.hi.get(), r.lo.get())) {
        out.result = Ordering::Less;
        return out;
      }
      if (mpfr_greater_p(l.lo.get(), r.hi.get())) {
        out.result = Ordering::Greater;
        return out;
      }
    } catch (const PrecisionError&) {
      // escalate
    }
  }
  out.result = Ordering::Indeterminate;
  return out;
}

bool certainly_less(const Real& lhs, const Real& rhs, const PrecisionSchedule& schedule) {
  return certified_compare(lhs, rhs, schedule).result == Ordering::Less;
}

bool certainly_greater(const Real& lhs, const Real& rhs, const PrecisionSchedule& schedule) {
  return certified_compare(lhs, rhs, schedule).result == Ordering::Greater;
}

namespace {

BigInt floor_of(const Float& f) {
  BigInt z;
  Float t(f.precision());
  mpfr_floor(t.get(), f.get());
  mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
  return z;
}

BigInt ceil_of(const Float& f) {
  BigInt z;
  Float t(f.precision());
  mpfr_ceil(t.get(), f.get());
  mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
  return z;
}

BigInt floor_q(const Rational& q) {
  BigInt z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return z;
}

BigInt ceil_q(const Rational& q) {
  BigInt z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return z;
}

// Narrowest interval reached before the two floors agree or the cap is hit.
CertifiedReal settle(const Real& v, const PrecisionSchedule& schedule) {
  std::optional<CertifiedReal> best;
  for (unsigned long bits = schedule.start_bits; bits <= schedule.cap_bits; bits *= 2) {
    try {
      CertifiedReal iv = v.evaluate(bits);
      const bool settled = floor_of(iv.lo) == floor_of(iv.hi);
      best = std::move(iv);
      if (settled) break;
    } catch (const PrecisionError&) {
    }
  }
  if (!best) throw PrecisionError("cannot evaluate " + v.str() + " within the precision cap");
  return std::move(*best);
}

}  // namespace

BigInt upper_integer(const Real& v, bool strict, const PrecisionSchedule& schedule) {
  if (auto q = v.exact()) return strict ? BigInt(ceil_q(*q) - 1) : floor_q(*q);
  const CertifiedReal iv = settle(v, schedule);
  return strict ? BigInt(ceil_of(iv.hi) - 1) : floor_of(iv.hi);
}

BigInt lower_integer(const Real& v, bool strict, const PrecisionSchedule& schedule) {
  if (auto q = v.exact()) return strict ? BigInt(floor_q(*q) + 1) : ceil_q(*q);
  const CertifiedReal iv = settle(v, schedule);
  return strict ? BigInt(floor_of(iv.lo) + 1) : ceil_of(iv.lo);
}

CertifiedReal evaluate_to(const Real& v, unsigned long target_bits, const PrecisionSchedule& schedule) {
  std::optional<CertifiedReal> best;
  for (unsigned long bits = std::max(schedule.start_bits, target_bits + 8); bits <= schedule.cap_bits;
       bits *= 2) {
    try {
      CertifiedReal iv = v.evaluate(bits);
      Float mag(static_cast<mpfr_prec_t>(bits));
      mpfr_abs(mag.get(), iv.hi.get(), MPFR_RNDU);
      if (mpfr_cmp_ui(mag.get(), 1) < 0) mpfr_set_ui(mag.get(), 1, MPFR_RNDU);
      mpfr_div_2ui(mag.get(), mag.get(), target_bits, MPFR_RNDD);
      const bool narrow = mpfr_lessequal_p(iv.width().get(), mag.get());
      best = std::move(iv);
      if (narrow) break;
    } catch (const PrecisionError&) {
    }
  }
  if (!best) throw PrecisionError("cannot evaluate " + v.str() + " within the precision cap");
  return std::move(*best);
}

}  // namespace expcert
