#ifndef XSIEVE_RIGNUM_HPP
#define XSIEVE_RIGNUM_HPP

// Extended-range directed-rounding reals.
//
// XReal stores a number as (sign, log|value|) with the log magnitude held in
// an MPFR float, so magnitudes up to exp(1e300) and down to exp(-1e300) are
// representable at full working precision.  Every operation rounds the
// *value* (not the log) in the direction given by the operand's mode, so a
// chain of up-mode operations on exact inputs yields a rigorous upper bound
// of the exact result as long as each step is monotone increasing in its
// operands.  Subtraction and division are anti-monotone in their second
// operand; the public XReal API therefore demands the subtrahend/divisor be
// tagged with the opposite mode, and neg()/inv() flip the tag.
//
// XInterval = (lo down-rounded, hi up-rounded) automates that discipline:
// interval results contain the exact value whenever the inputs do, for any
// mix of signs.  The sieve-constant tower is evaluated in XInterval and the
// published "up-mode" constants are the hi endpoints.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace xsieve {

enum class Round { Down, Up, Nearest };

constexpr Round anti(Round r) {
  return r == Round::Up ? Round::Down : (r == Round::Down ? Round::Up : Round::Nearest);
}

struct Prec {
  mpfr_prec_t bits;
  static Prec decimal_digits(int d);
  int approx_digits() const;
};

// RAII mpfr_t; copies preserve precision and value exactly.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec);
  Mpfr(const Mpfr& o);
  Mpfr(Mpfr&& o) noexcept;
  Mpfr& operator=(const Mpfr& o);
  Mpfr& operator=(Mpfr&& o) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

// Widens the thread's MPFR exponent range once so exp/log of log-magnitudes
// never hit the default 2^30 exponent cap.
void ensure_mpfr_range();

class XReal;

namespace detail {
XReal make_xreal(int sign, Mpfr logmag, Round mode);
}

class XReal {
 public:
  // value 0 in the given mode
  XReal(Prec p, Round m);

  static XReal zero(Prec p, Round m) { return XReal(p, m); }
  static XReal from_long(long v, Prec p, Round m);
  static XReal from_mpz(const mpz_class& v, Prec p, Round m);
  static XReal from_mpq(const mpq_class& v, Prec p, Round m);
  // exact decimal string, e.g. "2.52" or "-0.5" (kept as an exact rational)
  static XReal from_decimal(const std::string& s, Prec p, Round m);
  // number with the given exact integer natural-log magnitude, sign +1
  static XReal from_log_mpz(const mpz_class& logmag, Prec p, Round m);
  // number whose natural log is the given rational
  static XReal from_log_mpq(const mpq_class& logmag, Prec p, Round m);

  int sign() const { return sign_; }
  Round mode() const { return mode_; }
  Prec prec() const { return Prec{logmag_.prec()}; }
  bool is_zero() const { return sign_ == 0; }
  mpfr_srcptr logmag() const;  // requires sign != 0

  XReal with_mode(Round m) const;  // retag (representation unchanged)

  // natural log of |value| as double (for display/grids; -inf when zero)
  double log_approx() const;
  // value as double when in range (|log| <~ 700), else +/-inf
  double to_double() const;
  // log10 of magnitude, round-to-nearest decimal string
  std::string log10_string(int digits = 20) const;
  // plain decimal when the magnitude fits, else mantissa*e+exp form
  std::string to_string(int digits = 20) const;

  friend std::strong_ordering cmp(const XReal& a, const XReal& b);

 private:
  XReal(int s, Mpfr l, Round m) : sign_(s), logmag_(std::move(l)), mode_(m) {}
  int sign_;
  Mpfr logmag_;
  Round mode_;

  friend class XInterval;
  friend XReal detail::make_xreal(int, Mpfr, Round);
  friend XReal add_dir(const XReal&, const XReal&, Round);
  friend XReal mul_dir(const XReal&, const XReal&, Round);
  friend XReal pow_dir(const XReal&, const mpq_class&, Round);
  friend XReal exp_dir(const XReal&, Round);
  friend XReal log_dir(const XReal&, Round);
  friend XReal neg(const XReal&);
  friend XReal inv(const XReal&);
};

// Direction-explicit kernels: operands are treated as exact representations
// and the result value is correctly rounded toward `dir`.
XReal add_dir(const XReal& a, const XReal& b, Round dir);
XReal mul_dir(const XReal& a, const XReal& b, Round dir);
XReal pow_dir(const XReal& base, const mpq_class& e, Round dir);  // base > 0
XReal exp_dir(const XReal& x, Round dir);
XReal log_dir(const XReal& x, Round dir);  // x > 0

// Mode-checked arithmetic. add/mul/max/min require equal modes; sub and div
// require the second operand in the opposite mode (see header comment).
XReal add(const XReal& a, const XReal& b);
XReal sub(const XReal& a, const XReal& b);
XReal mul(const XReal& a, const XReal& b);
XReal div(const XReal& a, const XReal& b);
XReal neg(const XReal& x);  // flips mode
XReal inv(const XReal& x);  // flips mode
XReal pow_q(const XReal& base, const mpq_class& e);  // flips mode when e < 0
XReal exp_(const XReal& x);
XReal log_(const XReal& x);
XReal max_(const XReal& a, const XReal& b);
XReal min_(const XReal& a, const XReal& b);

// exact comparison of represented values
std::strong_ordering cmp(const XReal& a, const XReal& b);

enum class Trilean { False, True, Indeterminate };

class XInterval {
 public:
  XInterval(XReal lo, XReal hi);

  static XInterval point_long(long v, Prec p);
  static XInterval point_mpz(const mpz_class& v, Prec p);
  static XInterval point_mpq(const mpq_class& v, Prec p);
  static XInterval point_decimal(const std::string& s, Prec p);
  static XInterval from_log_mpz(const mpz_class& logmag, Prec p);
  static XInterval from_log_mpq(const mpq_class& logmag, Prec p);
  static XInterval zero(Prec p);
  static XInterval one(Prec p) { return point_long(1, p); }

  static XInterval pi(Prec p);
  static XInterval euler_gamma(Prec p);
  static XInterval log2(Prec p);

  const XReal& lo() const { return lo_; }
  const XReal& hi() const { return hi_; }
  Prec prec() const { return lo_.prec(); }

  bool is_point_zero() const { return lo_.is_zero() && hi_.is_zero(); }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool strictly_positive() const { return lo_.sign() > 0; }
  bool strictly_negative() const { return hi_.sign() < 0; }

  // hi/lo - 1 as a double (meaningful for strictly positive intervals)
  double relative_width() const;
  std::string to_string(int digits = 20) const;

 private:
  XReal lo_;  // Round::Down
  XReal hi_;  // Round::Up
};

XInterval operator+(const XInterval& a, const XInterval& b);
XInterval operator-(const XInterval& a, const XInterval& b);
XInterval operator*(const XInterval& a, const XInterval& b);
XInterval operator/(const XInterval& a, const XInterval& b);  // 0 not in b
XInterval neg(const XInterval& a);
XInterval inv(const XInterval& a);
XInterval exp_(const XInterval& a);
XInterval log_(const XInterval& a);  // a strictly positive
XInterval pow_q(const XInterval& base, const mpq_class& e);  // base > 0
XInterval pow_i(const XInterval& base, long e);
XInterval sqrt_(const XInterval& a);
XInterval abs_(const XInterval& a);
XInterval max_(const XInterval& a, const XInterval& b);
XInterval min_(const XInterval& a, const XInterval& b);
XInterval hull(const XInterval& a, const XInterval& b);
// [max(lo), min(hi)]; valid when both enclose the same value (throws when disjoint)
XInterval intersect(const XInterval& a, const XInterval& b);

// widen an interval additively/symmetrically by a nonnegative amount
XInterval widen(const XInterval& a, const XInterval& pad);

// rigorous comparisons: True/False only when the intervals decide the
// relation for every pair of contained values
Trilean lt(const XInterval& a, const XInterval& b);
Trilean gt(const XInterval& a, const XInterval& b);
bool contains(const XInterval& a, const XInterval& inner);
bool contains_mpq(const XInterval& a, const mpq_class& v);

// Bridge from plain MPFR accumulators (used by prime sweeps that add millions
// of terms): converts a *value* held in an mpfr_t into the log-magnitude
// representation, rounding the value toward `dir`.
XReal xreal_from_mpfr_value(mpfr_srcptr v, Prec p, Round dir);
// lo/hi are value-space endpoints already rounded down/up by the caller
XInterval interval_from_mpfr_values(mpfr_srcptr lo, mpfr_srcptr hi, Prec p);

// convenience scalars
XInterval operator+(const XInterval& a, long b);
XInterval operator+(long a, const XInterval& b);
XInterval operator-(const XInterval& a, long b);
XInterval operator-(long a, const XInterval& b);
XInterval operator*(const XInterval& a, long b);
XInterval operator*(long a, const XInterval& b);
XInterval operator/(const XInterval& a, long b);
XInterval operator/(long a, const XInterval& b);

}  // namespace xsieve

#endif
