#include "xsieve/sievebounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace xsieve {

namespace {

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

XReal xreal_at_prec(const XReal& x, Prec p) {
  if (x.is_zero()) return XReal::zero(p, x.mode());
  Mpfr l(p.bits);
  mpfr_set(l.get(), x.logmag(), MPFR_RNDN);  // exact for widening precision
  return detail::make_xreal(x.sign(), std::move(l), x.mode());
}

XInterval at_prec(const XInterval& a, Prec p) {
  return XInterval(xreal_at_prec(a.lo(), p), xreal_at_prec(a.hi(), p));
}

// e^{kappa gamma} Gamma(kappa + 1)
XInterval gamma_factor(long kappa, Prec p) {
  XInterval eg = exp_(XInterval::euler_gamma(p) * kappa);
  return eg * XInterval::point_mpz(factorial(kappa), p);
}

}  // namespace

SieveParams SieveParams::at_prec(Prec p) const {
  return SieveParams(kappa, a1, xsieve::at_prec(a2, p), lambda, k0);
}

XInterval m1(const XInterval& log_sqrt_xd, const SieveParams& sp) {
  Prec p = sp.prec();
  const XInterval& a2 = sp.a2;
  XInterval q = a2 / log_sqrt_xd;
  return a2 * (XInterval::log2(p) * sp.kappa + q + (q * sp.a1) * (q + sp.kappa));
}

XInterval m1_at_sqrt2(const SieveParams& sp) {
  return m1(XInterval::log2(sp.prec()) / 2, sp);
}

XInterval m0(const XInterval& log_w, const SieveParams& sp) {
  Prec p = sp.prec();
  const XInterval& a2 = sp.a2;
  XInterval a1a2 = a2 * sp.a1;
  XInterval q = a1a2 / log_w;  // A1 A2 / log w, must stay below 1
  if (lt(q, XInterval::one(p)) != Trilean::True)
    throw std::domain_error("m0: below convergence threshold (log w <= A1 A2)");
  XInterval a2w = a2 / log_w;
  // max{A2/log w + (A1 A2/log w)(kappa + A2/log w), L/log w}; L = A2 here
  XInterval head = max_(a2w + q * (a2w + sp.kappa), a2w);
  XInterval t2 = (3L * XInterval::point_long(sp.kappa, p)) / (log_w * log_w * 2);
  // kappa log(w/(w-1)) = -kappa log(1 - e^{-log w})
  XInterval invw = exp_(neg(log_w));
  XInterval t3 = neg(log_(1 - invw)) * sp.kappa;
  // truncated series sum_{k=2}^{k0} q^{k-2}/k + q^{k0-1}/((k0+1)(1-q))
  XInterval series = XInterval::zero(p);
  XInterval qpow = XInterval::one(p);  // q^{k-2}
  for (long k = 2; k <= sp.k0; ++k) {
    series = series + qpow / k;
    qpow = qpow * q;
  }
  series = series + qpow / ((1 - q) * (sp.k0 + 1));  // qpow = q^{k0-1} after the loop
  XInterval t4 = (a2 * (sp.a1 * sp.a1) / log_w) * (a2w + sp.kappa) * series;
  return head + t2 + t3 + t4;
}

XInterval m0_hat(const XInterval& log_z, const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval m0z = m0(log_z, sp);
  XInterval bracket =
      pow_i(1 + inv(log_z * log_z), sp.kappa) * (1 + m0z * exp_(m0z)) - 1;
  return log_z * bracket;
}

XInterval m2(const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval l2 = XInterval::log2(p);
  XInterval u = sp.a2 / l2;
  return exp_(u * (1 + sp.a1 * sp.kappa + u * sp.a1)) / pow_i(l2, sp.kappa);
}

XInterval m4(const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval e = exp_(XInterval::one(p));
  return e * (2 * sp.kappa) + sp.a2 * e / XInterval::log2(p) + XInterval::log2(p);
}

XInterval m3(const XInterval& log_z, const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval l2 = XInterval::log2(p);
  XInterval u = sp.a2 / l2;
  XInterval lam = XInterval::point_mpq(sp.lambda, p);
  XInterval elam = exp_(lam);
  XInterval expo = u * (1 + sp.a1 * sp.kappa + u * sp.a1) + sp.a2 / l2 - lam +
                   (XInterval::point_mpq(mpq_class(2 * sp.kappa) / sp.lambda, p) +
                    sp.a2 / log_z) *
                       elam;
  return 1 + pow_i(m4(sp), sp.kappa) * exp_(expo) * 2;
}

XInterval r_of(const XInterval& log_z, const SieveParams& sp) {
  return (sp.a2 + m1_at_sqrt2(sp)) / log_z;
}

XInterval m7(const XInterval& log_z, const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval r = r_of(log_z, sp);
  if (lt(r, XInterval::one(p)) != Trilean::True)
    throw std::domain_error("m7: r(z) >= 1");
  return (exp_(r * (sp.kappa + 1) / (1 - r)) - 1) / log_z;
}

XInterval m6(const XInterval& log_z, const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval r = r_of(log_z, sp);
  if (lt(r, XInterval::one(p)) != Trilean::True)
    throw std::domain_error("m6: r(z) >= 1");
  XInterval m7z = m7(log_z, sp);
  XInterval rr = r / (1 - r);
  return rr * log_z + m7z + m7z * rr;
}

M5Result m5(const XInterval& log_z, const SieveParams& sp) {
  Prec p = sp.prec();
  XInterval branch_gamma =
      log_z * (m3(log_z, sp) / gamma_factor(sp.kappa, p) * (1 + m0_hat(log_z, sp) / log_z) - 1);
  XInterval m6z = m6(log_z, sp);
  XInterval branch_r = m6z / (1 + m6z / log_z);
  return {min_(branch_gamma, branch_r), branch_gamma, branch_r};
}

XInterval log_z0_of(const XInterval& log_x, const XInterval& loglog_x, const SieveParams& sp) {
  return (log_x - loglog_x * (4 * sp.kappa + 1)) / 2;
}

SieveConstants sieve_tower(const mpq_class& log_x, const SieveParams& sp) {
  Prec p = sp.prec();
  if (log_x <= 1) throw std::domain_error("sieve_tower: need log X > 1");
  SieveConstants out(p);
  XInterval lx = XInterval::point_mpq(log_x, p);
  XInterval llx = log_(lx);
  out.log_z0 = log_z0_of(lx, llx, sp);
  if (!out.log_z0.strictly_positive()) throw std::domain_error("sieve_tower: z0 <= 1");
  XInterval denom = 1 - llx * (4 * sp.kappa + 1) / lx;
  if (gt(denom, XInterval::zero(p)) != Trilean::True)
    throw std::domain_error("sieve_tower: (4 kappa + 1) loglog X / log X >= 1");
  out.m1_sqrt2 = m1_at_sqrt2(sp);
  out.m2 = m2(sp);
  out.m4 = m4(sp);
  out.r_z0 = r_of(out.log_z0, sp);
  out.m3_z0 = m3(out.log_z0, sp);
  out.m0_z0 = m0(out.log_z0, sp);
  out.m0_hat_z0 = m0_hat(out.log_z0, sp);
  out.m7 = m7(out.log_z0, sp);
  out.m6 = m6(out.log_z0, sp);
  M5Result m5r = m5(out.log_z0, sp);
  out.m5 = m5r.value;
  out.m5_branch_gamma = m5r.branch_gamma;
  out.m5_branch_r = m5r.branch_r;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(4 * sp.kappa));
  mpq_class inv_pow(1, pw);
  inv_pow.canonicalize();
  out.m8 = out.m5 * 2 / denom + XInterval::point_mpq(inv_pow, p) * pow_i(out.m2, 4) /
                                    gamma_factor(sp.kappa, p) *
                                    (1 + out.m0_hat_z0 / out.log_z0);
  out.m9 = XInterval::point_long(4 * sp.kappa + 1, p) / denom;
  return out;
}

ConditionReport check_conditions(const mpq_class& log_x, const SieveParams& sp0,
                                 bool auto_double) {
  auto attempt = [&](const SieveParams& sp, int doublings) {
    Prec p = sp.prec();
    ConditionReport rep(p);
    rep.precision_doublings = doublings;
    if (log_x <= 1) {
      for (auto& c : rep.clauses) {
        c.holds = Trilean::False;
        c.note = "log X <= 1";
      }
      return rep;
    }
    XInterval lx = XInterval::point_mpq(log_x, p);
    XInterval llx = log_(lx);
    rep.log_z0 = log_z0_of(lx, llx, sp);

    auto& c1 = rep.clauses[0];
    c1.left = rep.log_z0;
    c1.right = max_(XInterval::log2(p), sp.a2 * sp.a1);
    c1.holds = gt(c1.left, c1.right);

    auto& c2 = rep.clauses[1];
    auto& c4 = rep.clauses[3];
    if (rep.log_z0.strictly_positive()) {
      XInterval r = r_of(rep.log_z0, sp);
      c2.left = r;
      c2.right = XInterval::one(p);
      c2.holds = lt(c2.left, c2.right);
      if (c2.holds == Trilean::True) {
        c4.left = abs_(r * (sp.kappa + 1) / (1 - r));
        c4.right = XInterval::one(p);
        c4.holds = lt(c4.left, c4.right);
      } else {
        c4.holds = Trilean::False;
        c4.note = "r(z0) not certified < 1";
      }
    } else {
      c2.holds = Trilean::False;
      c2.note = "z0 <= 1";
      c4.holds = Trilean::False;
      c4.note = "z0 <= 1";
    }

    auto& c3 = rep.clauses[2];
    if (c1.holds == Trilean::True) {
      c3.left = m0_hat(rep.log_z0, sp);
      c3.right = rep.log_z0;
      c3.holds = lt(c3.left, c3.right);
    } else {
      c3.holds = Trilean::False;
      c3.note = "m0 not evaluable (z0 <= e^{A1 A2})";
    }

    rep.pass = true;
    rep.indeterminate = false;
    for (const auto& c : rep.clauses) {
      if (c.holds != Trilean::True) rep.pass = false;
      if (c.holds == Trilean::Indeterminate) rep.indeterminate = true;
    }
    return rep;
  };

  ConditionReport rep = attempt(sp0, 0);
  if (rep.indeterminate && auto_double) {
    SieveParams wide = sp0.at_prec(Prec{2 * sp0.prec().bits});
    rep = attempt(wide, 1);
  }
  return rep;
}

MinimalX find_minimal_x(const SieveParams& sp, const GridOptions& grid) {
  MinimalX out;
  int h = grid.b0_step_hundredths;
  if (h != 10 && h != 1) throw std::invalid_argument("b0 step must be 0.1 or 0.01");
  auto log_x_at = [&](int j, int b1) {
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(b1));
    mpq_class v(mpz_class(j) * ten, mpz_class(100));
    v.canonicalize();
    return v;
  };
  int j_max = (1000 / h - 1) * h;  // largest b0 below 10
  for (int b1 = grid.b1_min; b1 <= grid.b1_max && !out.found; ++b1) {
    // the decade is hopeless if its largest point fails
    if (!check_conditions(log_x_at(j_max, b1), sp).pass) continue;
    for (int j = h; j <= j_max; j += h) {
      mpq_class lx = log_x_at(j, b1);
      ConditionReport rep = check_conditions(lx, sp);
      if (rep.pass) {
        out.found = true;
        out.log_x = lx;
        out.b0_hundredths = j;
        out.b1 = b1;
        out.report = std::move(rep);
        break;
      }
    }
  }
  if (!out.found) {
    out.diagnostics = "no grid point passed the conditions up to b1 = " +
                      std::to_string(grid.b1_max);
    return out;
  }
  // grid-minimality witness
  if (out.b0_hundredths > h) {
    ConditionReport prev = check_conditions(log_x_at(out.b0_hundredths - h, out.b1), sp);
    out.prev_point_fails = !prev.pass;
  } else {
    out.prev_point_fails = true;  // previous point is exp(0) = 1
  }
  // persistence along X^{1.5^j}
  out.ladder_ok = true;
  mpq_class lx = out.log_x;
  for (int i = 0; i < grid.ladder_points; ++i) {
    lx *= mpq_class(3, 2);
    lx.canonicalize();
    ConditionReport rep = check_conditions(lx, sp);
    if (!rep.pass) {
      out.ladder_ok = false;
      out.diagnostics = "conditions fail on the ladder at log X = " + lx.get_str();
      break;
    }
  }
  return out;
}

namespace {

// the additive max{n : F(n) < sqrt X} bound of one factor
XInterval m_f_of_factor(const IntPolynomial& f, const XInterval& log_x, Prec p) {
  int d = f.degree();
  if (d >= 2) {
    XInterval xpow = exp_(log_x / (2 * (static_cast<long>(d) - 1)));
    mpq_class s(0);
    for (int j = 0; j < d; ++j) s += mpq_class(abs(f.coeff(j))) / mpq_class(f.lc());
    s.canonicalize();
    return max_(xpow, XInterval::point_mpq(s, p));
  }
  // linear factor: n < (sqrt X - a0)/a1, the direct count
  XInterval sqrtx = exp_(log_x / 2);
  XInterval cnt = (sqrtx - XInterval::point_mpz(f.coeff(0), p)) /
                  XInterval::point_mpz(f.lc(), p);
  return max_(cnt, XInterval::zero(p));
}

XInterval m_f_of_system(const PolySystem& sys, const XInterval& log_x, Prec p) {
  XInterval out = m_f_of_factor(sys.factors[0], log_x, p);
  for (size_t i = 1; i < sys.factors.size(); ++i)
    out = max_(out, m_f_of_factor(sys.factors[i], log_x, p));
  return out;
}

}  // namespace

TauG1 tau_g1(const PolySystem& sys, const LfResult& lfres, const mpq_class& log_x) {
  if (sys.g() != 1) throw std::invalid_argument("tau_g1: single-polynomial systems only");
  Prec p = lfres.value.prec();
  // lambda = 2 throughout: c0(x) = m10(x0, 2)
  SieveParams sp(1, sys.deg_f() + 1, lfres.value, mpq_class(2));
  TauG1 out(p);
  out.tower = sieve_tower(log_x, sp);
  XInterval lx = XInterval::point_mpq(log_x, p);
  XInterval llx = log_(lx);
  out.c0 = out.tower.m9 + out.tower.m8 / llx + out.tower.m8 * out.tower.m9 / lx;
  out.m_f_x = m_f_of_system(sys, lx, p);
  const XInterval& L = lfres.value;
  out.c1 = exp_(L * 2 * (L + 2)) * out.m_f_x * exp_(neg(lx)) * lx;
  out.c1_generic = exp_(L * sp.a1 * (L + (1 + sp.kappa))) * out.m_f_x * exp_(neg(lx)) * lx;
  out.c2 = out.c0 * (1 + out.c1 / 2) + out.c1 * lx / (llx * 2);
  out.log_tau = log_(out.c2);
  return out;
}

ShiftedTau tau_shifted(const PolySystem& base_sys, const PolySystem& ext_sys,
                       const LfResult& ext_lf, const mpq_class& log_x) {
  Prec p = ext_lf.value.prec();
  long g = base_sys.g();
  const IntPolynomial& f = base_sys.product;
  mpz_class f0 = f.eval(0);
  // theo:generalp precondition: rho_F(p) < p - 1 whenever p ∤ F(0); only
  // p <= deg F + 1 can violate it
  for (long q = 2; q <= base_sys.deg_f() + 1; ++q) {
    bool prime = true;
    for (long r = 2; r * r <= q; ++r)
      if (q % r == 0) prime = false;
    if (!prime) continue;
    if (mpz_divisible_ui_p(f0.get_mpz_t(), static_cast<unsigned long>(q))) continue;
    if (rho(f, static_cast<std::uint64_t>(q)) >= static_cast<std::uint64_t>(q) - 1)
      throw std::domain_error("shifted pipeline: rho_F(p) >= p - 1 at p = " + std::to_string(q));
  }
  SieveParams sp(g + 1, base_sys.deg_f() + 2, ext_lf.value, mpq_class(2 * g));
  ShiftedTau out(sp);
  out.tower = sieve_tower(log_x, sp);
  XInterval lx = XInterval::point_mpq(log_x, p);
  XInterval llx = log_(lx);
  XInterval ratio = out.tower.m9 * llx / lx;
  out.m11 = out.tower.m9 * 2 + out.tower.m9 * out.tower.m9 * llx / lx +
            (out.tower.m8 / llx) * (1 + ratio * 2 + ratio * ratio);
  out.log_m11 = log_(out.m11);
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(g + 1));
  out.leading = pow2 * factorial(g + 1);
  (void)ext_sys;
  return out;
}

BoundReport assemble_bound(const PolySystem& sys, const LfResult& lfres, const mpq_class& log_x,
                           std::uint64_t euler_cutoff) {
  Prec p = lfres.value.prec();
  long g = sys.g();
  SieveParams sp = SieveParams::defaults(g, sys.deg_f() + 1, lfres.value);
  BoundReport out(p);
  out.regime = lfres.regime;
  out.log_x = log_x;
  out.system = to_string(sys.product);
  out.conditions = check_conditions(log_x, sp);
  if (!out.conditions.pass)
    throw std::domain_error("assemble_bound: conditions do not pass at the given X");
  out.tower = sieve_tower(log_x, sp);
  XInterval lx = XInterval::point_mpq(log_x, p);
  XInterval llx = log_(lx);
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(g));
  out.leading_coefficient = XInterval::point_mpz(pow2 * factorial(g), p) *
                            (1 + out.tower.m8 / lx) *
                            pow_i(1 + out.tower.m9 * llx / lx, g);
  out.m_f_additive = m_f_of_system(sys, lx, p);
  if (g == 1) out.tau = tau_g1(sys, lfres, log_x);
  out.euler = singular_series(sys, g, euler_cutoff, p);
  if (!sys.all_proven_irreducible)
    out.warnings.push_back(
        "irreducibility not certified for every factor; bounds valid under the user's assertion");
  if (!out.euler.caveat.empty()) out.warnings.push_back("euler product: " + out.euler.caveat);
  return out;
}

}  // namespace xsieve
