#include "xsieve/rignum.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace xsieve {

namespace {

// MPFR rounding direction that moves the *value* sign*exp(logmag) toward
// `dir` when applied to logmag.
mpfr_rnd_t lograd(Round dir, int sign) {
  if (dir == Round::Nearest) return MPFR_RNDN;
  bool up = (dir == Round::Up);
  if (sign < 0) up = !up;
  return up ? MPFR_RNDU : MPFR_RNDD;
}

mpfr_rnd_t raw(Round dir) {
  return dir == Round::Up ? MPFR_RNDU : (dir == Round::Down ? MPFR_RNDD : MPFR_RNDN);
}

[[noreturn]] void mode_mismatch(const char* op) {
  throw std::logic_error(std::string("XReal mode mismatch in ") + op);
}

}  // namespace

void ensure_mpfr_range() {
  thread_local bool done = [] {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    return true;
  }();
  (void)done;
}

Prec Prec::decimal_digits(int d) {
  if (d < 2) throw std::invalid_argument("precision below 2 digits");
  return Prec{static_cast<mpfr_prec_t>(std::ceil(d * 3.3219280948873626) + 16)};
}

int Prec::approx_digits() const {
  return static_cast<int>((bits - 16) / 3.3219280948873626);
}

Mpfr::Mpfr(mpfr_prec_t prec) {
  ensure_mpfr_range();
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& o) {
  ensure_mpfr_range();
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
}

Mpfr::Mpfr(Mpfr&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

XReal::XReal(Prec p, Round m) : sign_(0), logmag_(p.bits), mode_(m) {}

mpfr_srcptr XReal::logmag() const {
  if (sign_ == 0) throw std::logic_error("logmag of zero XReal");
  return logmag_.get();
}

XReal XReal::with_mode(Round m) const {
  XReal r = *this;
  r.mode_ = m;
  return r;
}

namespace detail {
XReal make_xreal(int sign, Mpfr logmag, Round mode) {
  return XReal(sign, std::move(logmag), mode);
}
}  // namespace detail

XReal XReal::from_long(long v, Prec p, Round m) {
  return from_mpz(mpz_class(v), p, m);
}

XReal XReal::from_mpz(const mpz_class& v, Prec p, Round m) {
  if (v == 0) return zero(p, m);
  int s = sgn(v);
  mpz_class a = abs(v);
  Mpfr t(p.bits);
  mpfr_rnd_t r = lograd(m, s);
  mpfr_set_z(t.get(), a.get_mpz_t(), r);
  Mpfr l(p.bits);
  mpfr_log(l.get(), t.get(), r);
  return XReal(s, std::move(l), m);
}

XReal XReal::from_mpq(const mpq_class& v, Prec p, Round m) {
  if (v == 0) return zero(p, m);
  int s = sgn(v);
  mpq_class a = abs(v);
  Mpfr t(p.bits);
  mpfr_rnd_t r = lograd(m, s);
  mpfr_set_q(t.get(), a.get_mpq_t(), r);
  Mpfr l(p.bits);
  mpfr_log(l.get(), t.get(), r);
  return XReal(s, std::move(l), m);
}

XReal XReal::from_decimal(const std::string& s, Prec p, Round m) {
  // [+-]?digits[.digits][eE[+-]digits], parsed into an exact rational
  size_t i = 0;
  bool negv = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negv = (s[i++] == '-');
  std::string digits;
  long frac = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac;
      any = true;
    }
  }
  long expo = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool nege = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) nege = (s[i++] == '-');
    if (i >= s.size()) throw std::invalid_argument("bad decimal literal: " + s);
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      expo = expo * 10 + (s[i++] - '0');
    if (nege) expo = -expo;
  }
  if (!any || i != s.size()) throw std::invalid_argument("bad decimal literal: " + s);
  mpz_class num(digits.empty() ? "0" : digits);
  if (negv) num = -num;
  mpq_class q(num);
  long pow10 = expo - frac;
  mpz_class ten = 10;
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(pow10)));
  if (pow10 >= 0)
    q *= mpq_class(scale);
  else
    q /= mpq_class(scale);
  q.canonicalize();
  return from_mpq(q, p, m);
}

XReal XReal::from_log_mpz(const mpz_class& logmag, Prec p, Round m) {
  Mpfr l(p.bits);
  mpfr_set_z(l.get(), logmag.get_mpz_t(), lograd(m, +1));
  return XReal(+1, std::move(l), m);
}

XReal XReal::from_log_mpq(const mpq_class& logmag, Prec p, Round m) {
  Mpfr l(p.bits);
  mpfr_set_q(l.get(), logmag.get_mpq_t(), lograd(m, +1));
  return XReal(+1, std::move(l), m);
}

double XReal::log_approx() const {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return mpfr_get_d(logmag_.get(), MPFR_RNDN);
}

double XReal::to_double() const {
  if (sign_ == 0) return 0.0;
  double l = log_approx();
  return sign_ * std::exp(l);
}

std::string XReal::log10_string(int digits) const {
  if (sign_ == 0) return "-inf";
  Mpfr l10(logmag_.prec());
  Mpfr ln10(logmag_.prec());
  mpfr_set_ui(ln10.get(), 10, MPFR_RNDN);
  mpfr_log(ln10.get(), ln10.get(), MPFR_RNDN);
  mpfr_div(l10.get(), logmag_.get(), ln10.get(), MPFR_RNDN);
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, l10.get());
  return std::string(buf.data());
}

std::string XReal::to_string(int digits) const {
  if (sign_ == 0) return "0";
  double l = log_approx();
  if (std::fabs(l) < 2000.0) {
    Mpfr v(logmag_.prec());
    mpfr_exp(v.get(), logmag_.get(), MPFR_RNDN);
    if (sign_ < 0) mpfr_neg(v.get(), v.get(), MPFR_RNDN);
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v.get());
    return std::string(buf.data());
  }
  std::string s = sign_ < 0 ? "-exp(" : "exp(";
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, logmag_.get());
  return s + buf.data() + ")";
}

std::strong_ordering cmp(const XReal& a, const XReal& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::strong_ordering::equal;
  int c = mpfr_cmp(a.logmag_.get(), b.logmag_.get());
  if (a.sign_ < 0) c = -c;
  return c <=> 0;
}

namespace {

mpfr_prec_t join_prec(const XReal& a, const XReal& b) {
  return std::max(a.prec().bits, b.prec().bits);
}

}  // namespace

XReal add_dir(const XReal& a, const XReal& b, Round dir) {
  mpfr_prec_t prec = join_prec(a, b);
  if (a.sign_ == 0 && b.sign_ == 0) return XReal(Prec{prec}, dir);
  if (a.sign_ == 0 || b.sign_ == 0) {
    const XReal& nz = a.sign_ == 0 ? b : a;
    Mpfr l(prec);
    mpfr_set(l.get(), nz.logmag_.get(), lograd(dir, nz.sign_));
    return XReal(nz.sign_, std::move(l), dir);
  }
  if (a.sign_ == b.sign_) {
    // log(e^x + e^y) = max + log1p(e^(min-max)); every step increasing
    int s = a.sign_;
    mpfr_rnd_t r = lograd(dir, s);
    mpfr_srcptr la = a.logmag_.get();
    mpfr_srcptr lb = b.logmag_.get();
    if (mpfr_cmp(la, lb) < 0) std::swap(la, lb);
    Mpfr d(prec), res(prec);
    mpfr_sub(d.get(), lb, la, r);
    mpfr_exp(d.get(), d.get(), r);
    mpfr_log1p(d.get(), d.get(), r);
    mpfr_add(res.get(), la, d.get(), r);
    return XReal(s, std::move(res), dir);
  }
  // opposite signs: |result| = |larger| - |smaller|
  int c = mpfr_cmp(a.logmag_.get(), b.logmag_.get());
  if (c == 0) return XReal(Prec{prec}, dir);  // exact cancellation
  const XReal& big = c > 0 ? a : b;
  const XReal& small = c > 0 ? b : a;
  int s = big.sign_;
  mpfr_rnd_t r = lograd(dir, s);
  mpfr_rnd_t ranti = lograd(anti(dir), s);
  // res = l_big + log1p(-e^(l_small - l_big)); decreasing in the inner d
  Mpfr d(prec), res(prec);
  mpfr_sub(d.get(), small.logmag_.get(), big.logmag_.get(), ranti);
  mpfr_exp(d.get(), d.get(), ranti);
  mpfr_neg(d.get(), d.get(), MPFR_RNDN);  // exact
  mpfr_log1p(d.get(), d.get(), r);
  if (mpfr_inf_p(d.get())) return XReal(Prec{prec}, dir);  // collapsed toward 0: valid bound
  mpfr_add(res.get(), big.logmag_.get(), d.get(), r);
  return XReal(s, std::move(res), dir);
}

XReal mul_dir(const XReal& a, const XReal& b, Round dir) {
  mpfr_prec_t prec = join_prec(a, b);
  if (a.sign_ == 0 || b.sign_ == 0) return XReal(Prec{prec}, dir);
  int s = a.sign_ * b.sign_;
  Mpfr res(prec);
  mpfr_add(res.get(), a.logmag_.get(), b.logmag_.get(), lograd(dir, s));
  return XReal(s, std::move(res), dir);
}

XReal pow_dir(const XReal& base, const mpq_class& e, Round dir) {
  if (base.sign_ <= 0) throw std::domain_error("pow of non-positive XReal");
  mpfr_prec_t prec = base.prec().bits;
  if (e == 0) return XReal::from_long(1, Prec{prec}, dir);
  Mpfr res(prec);
  mpfr_mul_q(res.get(), base.logmag_.get(), e.get_mpq_t(), lograd(dir, +1));
  return XReal(+1, std::move(res), dir);
}

XReal exp_dir(const XReal& x, Round dir) {
  mpfr_prec_t prec = x.prec().bits;
  if (x.sign_ == 0) return XReal::from_long(1, Prec{prec}, dir);
  Mpfr res(prec);
  if (x.sign_ > 0) {
    mpfr_exp(res.get(), x.logmag_.get(), raw(dir));
  } else {
    mpfr_exp(res.get(), x.logmag_.get(), raw(anti(dir)));
    mpfr_neg(res.get(), res.get(), MPFR_RNDN);
  }
  if (mpfr_inf_p(res.get()))
    throw std::range_error("exp: log-magnitude exceeds representable range");
  return XReal(+1, std::move(res), dir);
}

XReal log_dir(const XReal& x, Round dir) {
  if (x.sign_ <= 0) throw std::domain_error("log of non-positive XReal");
  mpfr_prec_t prec = x.prec().bits;
  if (mpfr_zero_p(x.logmag_.get())) return XReal(Prec{prec}, dir);  // log 1 = 0
  int s = mpfr_sgn(x.logmag_.get());
  Mpfr t(prec), res(prec);
  mpfr_abs(t.get(), x.logmag_.get(), MPFR_RNDN);  // exact
  mpfr_log(res.get(), t.get(), lograd(dir, s));
  return XReal(s, std::move(res), dir);
}

XReal neg(const XReal& x) {
  XReal r = x;
  r.sign_ = -r.sign_;
  r.mode_ = anti(r.mode_);
  return r;
}

XReal inv(const XReal& x) {
  if (x.sign_ == 0) throw std::domain_error("inv of zero XReal");
  XReal r = x;
  mpfr_neg(r.logmag_.get(), r.logmag_.get(), MPFR_RNDN);  // exact
  r.mode_ = anti(r.mode_);
  return r;
}

XReal add(const XReal& a, const XReal& b) {
  if (a.mode() != b.mode()) mode_mismatch("add");
  return add_dir(a, b, a.mode());
}

XReal sub(const XReal& a, const XReal& b) {
  if (b.mode() != anti(a.mode())) mode_mismatch("sub (subtrahend must carry the opposite mode)");
  XReal nb = neg(b);
  return add_dir(a, nb, a.mode());
}

XReal mul(const XReal& a, const XReal& b) {
  if (a.mode() != b.mode()) mode_mismatch("mul");
  return mul_dir(a, b, a.mode());
}

XReal div(const XReal& a, const XReal& b) {
  if (b.mode() != anti(a.mode())) mode_mismatch("div (divisor must carry the opposite mode)");
  XReal ib = inv(b);
  return mul_dir(a, ib, a.mode());
}

XReal pow_q(const XReal& base, const mpq_class& e) {
  Round m = e >= 0 ? base.mode() : anti(base.mode());
  return pow_dir(base, e, m);
}

XReal exp_(const XReal& x) { return exp_dir(x, x.mode()); }

XReal log_(const XReal& x) { return log_dir(x, x.mode()); }

XReal max_(const XReal& a, const XReal& b) {
  if (a.mode() != b.mode()) mode_mismatch("max");
  return cmp(a, b) >= 0 ? a : b;
}

XReal min_(const XReal& a, const XReal& b) {
  if (a.mode() != b.mode()) mode_mismatch("min");
  return cmp(a, b) <= 0 ? a : b;
}

XInterval::XInterval(XReal lo, XReal hi)
    : lo_(lo.with_mode(Round::Down)), hi_(hi.with_mode(Round::Up)) {
  if (cmp(lo_, hi_) > 0) throw std::logic_error("XInterval endpoints out of order");
}

XInterval XInterval::zero(Prec p) {
  return XInterval(XReal::zero(p, Round::Down), XReal::zero(p, Round::Up));
}

XInterval XInterval::point_long(long v, Prec p) { return point_mpz(mpz_class(v), p); }

XInterval XInterval::point_mpz(const mpz_class& v, Prec p) {
  return XInterval(XReal::from_mpz(v, p, Round::Down), XReal::from_mpz(v, p, Round::Up));
}

XInterval XInterval::point_mpq(const mpq_class& v, Prec p) {
  return XInterval(XReal::from_mpq(v, p, Round::Down), XReal::from_mpq(v, p, Round::Up));
}

XInterval XInterval::point_decimal(const std::string& s, Prec p) {
  return XInterval(XReal::from_decimal(s, p, Round::Down), XReal::from_decimal(s, p, Round::Up));
}

XInterval XInterval::from_log_mpz(const mpz_class& l, Prec p) {
  return XInterval(XReal::from_log_mpz(l, p, Round::Down), XReal::from_log_mpz(l, p, Round::Up));
}

XInterval XInterval::from_log_mpq(const mpq_class& l, Prec p) {
  return XInterval(XReal::from_log_mpq(l, p, Round::Down), XReal::from_log_mpq(l, p, Round::Up));
}

namespace {

using ConstFn = int (*)(mpfr_ptr, mpfr_rnd_t);

// positive constant: value computed directed, then logged in the same
// direction (log is increasing, so value direction = logmag direction)
XInterval make_const(ConstFn fn, Prec p) {
  auto endpoint = [&](Round dir) {
    Mpfr t(p.bits);
    fn(t.get(), raw(dir));
    Mpfr l(p.bits);
    mpfr_log(l.get(), t.get(), raw(dir));
    return detail::make_xreal(+1, std::move(l), dir);
  };
  return XInterval(endpoint(Round::Down), endpoint(Round::Up));
}

}  // namespace

XInterval XInterval::pi(Prec p) { return make_const(mpfr_const_pi, p); }
XInterval XInterval::euler_gamma(Prec p) { return make_const(mpfr_const_euler, p); }
XInterval XInterval::log2(Prec p) { return make_const(mpfr_const_log2, p); }

double XInterval::relative_width() const {
  if (!strictly_positive()) return std::numeric_limits<double>::quiet_NaN();
  return std::expm1(hi_.log_approx() - lo_.log_approx());
}

std::string XInterval::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

XInterval operator+(const XInterval& a, const XInterval& b) {
  return XInterval(add_dir(a.lo(), b.lo(), Round::Down), add_dir(a.hi(), b.hi(), Round::Up));
}

XInterval neg(const XInterval& a) {
  XReal nl = neg(a.hi());
  XReal nh = neg(a.lo());
  return XInterval(std::move(nl), std::move(nh));
}

XInterval operator-(const XInterval& a, const XInterval& b) { return a + neg(b); }

XInterval operator*(const XInterval& a, const XInterval& b) {
  const XReal* as[2] = {&a.lo(), &a.hi()};
  const XReal* bs[2] = {&b.lo(), &b.hi()};
  XReal lo = mul_dir(*as[0], *bs[0], Round::Down);
  XReal hi = mul_dir(*as[0], *bs[0], Round::Up);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      XReal cl = mul_dir(*as[i], *bs[j], Round::Down);
      XReal ch = mul_dir(*as[i], *bs[j], Round::Up);
      if (cmp(cl, lo) < 0) lo = cl;
      if (cmp(ch, hi) > 0) hi = ch;
    }
  return XInterval(std::move(lo), std::move(hi));
}

XInterval inv(const XInterval& a) {
  if (a.contains_zero()) throw std::domain_error("inv of interval containing zero");
  return XInterval(inv(a.hi()), inv(a.lo()));
}

XInterval operator/(const XInterval& a, const XInterval& b) { return a * inv(b); }

XInterval exp_(const XInterval& a) {
  return XInterval(exp_dir(a.lo(), Round::Down), exp_dir(a.hi(), Round::Up));
}

XInterval log_(const XInterval& a) {
  if (!a.strictly_positive()) throw std::domain_error("log of non-positive interval");
  return XInterval(log_dir(a.lo(), Round::Down), log_dir(a.hi(), Round::Up));
}

XInterval pow_q(const XInterval& base, const mpq_class& e) {
  if (e == 0) return XInterval::point_long(1, base.prec());
  if (!base.strictly_positive()) throw std::domain_error("pow of non-positive interval");
  if (e > 0)
    return XInterval(pow_dir(base.lo(), e, Round::Down), pow_dir(base.hi(), e, Round::Up));
  return XInterval(pow_dir(base.hi(), e, Round::Down), pow_dir(base.lo(), e, Round::Up));
}

XInterval pow_i(const XInterval& base, long e) { return pow_q(base, mpq_class(e)); }

XInterval sqrt_(const XInterval& a) { return pow_q(a, mpq_class(1, 2)); }

XInterval abs_(const XInterval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return neg(a);
  XReal m = max_(neg(a.lo()).with_mode(Round::Up), a.hi());
  return XInterval(XReal::zero(a.prec(), Round::Down), std::move(m));
}

XInterval max_(const XInterval& a, const XInterval& b) {
  return XInterval(max_(a.lo(), b.lo()), max_(a.hi(), b.hi()));
}

XInterval min_(const XInterval& a, const XInterval& b) {
  return XInterval(min_(a.lo(), b.lo()), min_(a.hi(), b.hi()));
}

XInterval hull(const XInterval& a, const XInterval& b) {
  return XInterval(min_(a.lo(), b.lo()), max_(a.hi(), b.hi()));
}

XInterval intersect(const XInterval& a, const XInterval& b) {
  XReal lo = max_(a.lo(), b.lo());
  XReal hi = min_(a.hi(), b.hi());
  if (cmp(lo, hi) > 0) throw std::logic_error("intersect of disjoint intervals");
  return XInterval(std::move(lo), std::move(hi));
}

XInterval widen(const XInterval& a, const XInterval& pad) {
  if (pad.lo().sign() < 0) throw std::invalid_argument("widen with negative pad");
  XInterval sym(neg(pad.hi()), pad.hi());
  return a + sym;
}

Trilean lt(const XInterval& a, const XInterval& b) {
  if (cmp(a.hi(), b.lo()) < 0) return Trilean::True;
  if (cmp(a.lo(), b.hi()) >= 0) return Trilean::False;
  return Trilean::Indeterminate;
}

Trilean gt(const XInterval& a, const XInterval& b) { return lt(b, a); }

bool contains(const XInterval& a, const XInterval& inner) {
  return cmp(a.lo(), inner.lo()) <= 0 && cmp(inner.hi(), a.hi()) <= 0;
}

bool contains_mpq(const XInterval& a, const mpq_class& v) {
  // tighter-precision point so endpoint comparisons decide containment
  Prec p{a.prec().bits + 64};
  XInterval pt = XInterval::point_mpq(v, p);
  return cmp(a.lo(), pt.lo()) <= 0 && cmp(pt.hi(), a.hi()) <= 0;
}

XReal xreal_from_mpfr_value(mpfr_srcptr v, Prec p, Round dir) {
  if (mpfr_zero_p(v)) return XReal::zero(p, dir);
  if (mpfr_nan_p(v) || mpfr_inf_p(v)) throw std::domain_error("non-finite mpfr value");
  int s = mpfr_sgn(v);
  Mpfr t(p.bits), l(p.bits);
  mpfr_abs(t.get(), v, MPFR_RNDN);  // exact
  mpfr_log(l.get(), t.get(), lograd(dir, s));
  return detail::make_xreal(s, std::move(l), dir);
}

XInterval interval_from_mpfr_values(mpfr_srcptr lo, mpfr_srcptr hi, Prec p) {
  return XInterval(xreal_from_mpfr_value(lo, p, Round::Down),
                   xreal_from_mpfr_value(hi, p, Round::Up));
}

XInterval operator+(const XInterval& a, long b) { return a + XInterval::point_long(b, a.prec()); }
XInterval operator+(long a, const XInterval& b) { return XInterval::point_long(a, b.prec()) + b; }
XInterval operator*(long a, const XInterval& b) { return b * a; }
XInterval operator-(const XInterval& a, long b) { return a - XInterval::point_long(b, a.prec()); }
XInterval operator-(long a, const XInterval& b) { return XInterval::point_long(a, b.prec()) - b; }
XInterval operator*(const XInterval& a, long b) { return a * XInterval::point_long(b, a.prec()); }
XInterval operator/(const XInterval& a, long b) { return a / XInterval::point_long(b, a.prec()); }
XInterval operator/(long a, const XInterval& b) { return XInterval::point_long(a, b.prec()) / b; }

}  // namespace xsieve
