#include "xsieve/paperconst.hpp"

#include <algorithm>
#include <stdexcept>

namespace xsieve {

namespace {

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// lambda_K(d), d >= 2, both printed branches (split at d = 13)
XInterval lambda_k_value(int d, Prec p) {
  XInterval pi = XInterval::pi(p);
  long dl = d;
  if (d <= 13) {
    // (d+1)^{(d-1)/(2d)} (5/8 + pi/2 - 1/d + 3/(8d^2))^{1/2}
    //   * exp(d(2.27 + 4d/(d-1) + 0.01/d^2 + 1/(500 d^6)))
    XInterval head = pow_q(XInterval::point_long(dl + 1, p), mpq_class(dl - 1, 2 * dl));
    mpq_class rat = mpq_class(5, 8) - mpq_class(1, dl) + mpq_class(3, 8 * dl * dl);
    XInterval mid = sqrt_(XInterval::point_mpq(rat, p) + pi / 2);
    mpq_class e = mpq_class(227, 100) + mpq_class(4 * dl, dl - 1) + mpq_class(1, 100 * dl * dl);
    mpz_class d6;
    mpz_ui_pow_ui(d6.get_mpz_t(), static_cast<unsigned long>(dl), 6);
    e += mpq_class(mpz_class(1), 500 * d6);
    e *= dl;
    e.canonicalize();
    return head * mid * exp_(XInterval::point_mpq(e, p));
  }
  // (d+1)^{d - 1/2 - 1/(2d)} (5/8 + pi/2 + 1/d + 3/(8d^2))^{1/2} e^{4.13d + 0.02/d}
  mpq_class expo = mpq_class(dl) - mpq_class(1, 2) - mpq_class(1, 2 * dl);
  expo.canonicalize();
  XInterval head = pow_q(XInterval::point_long(dl + 1, p), expo);
  mpq_class rat = mpq_class(5, 8) + mpq_class(1, dl) + mpq_class(3, 8 * dl * dl);
  XInterval mid = sqrt_(XInterval::point_mpq(rat, p) + pi / 2);
  mpq_class e = mpq_class(413 * dl, 100) + mpq_class(1, 50 * dl);
  e.canonicalize();
  return head * mid * exp_(XInterval::point_mpq(e, p));
}

}  // namespace

QfConstants qf(const IntPolynomial& f, Regime regime, MertensCache& mertens,
               const mpq_class& lambda_k_scale) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("qf: need degree >= 1");
  Prec p = mertens.prec();
  int d = f.degree();
  long dl = d;
  QfConstants out(p);
  out.d = d;
  out.regime = regime;
  DiscriminantData dd = discriminant(f);
  out.weighted_disc = dd.weighted_disc;
  if (d >= 2 && dd.weighted_disc <= 1)
    throw std::domain_error("qf: weighted discriminant <= 1 at degree >= 2");

  // mfrak(d) = (pi/4)^d d^{2d} / (d!)^2
  mpz_class d2d, fact2;
  mpz_ui_pow_ui(d2d.get_mpz_t(), static_cast<unsigned long>(dl), static_cast<unsigned long>(2 * dl));
  fact2 = factorial(dl) * factorial(dl);
  out.mfrak = pow_i(XInterval::pi(p) / 4, dl) * XInterval::point_mpq(mpq_class(d2d, fact2), p);

  out.mbar_c = mertens.mbar(abs(f.lc()));
  out.mbar_sqrt_d = mertens.mbar(dd.sqrt_weighted_floor);

  XInterval log_wd = (dd.weighted_disc == 1)
                         ? XInterval::zero(p)
                         : log_(XInterval::point_mpz(dd.weighted_disc, p));

  if (regime == Regime::Grh) {
    // Q_F = d(Mbar(|c|) + Mbar(sqrt(D)) + 10.79) + log 2 + 4.73 log D
    out.nagell_part =
        (out.mbar_c + out.mbar_sqrt_d + XInterval::point_decimal("10.79", p)) * dl +
        XInterval::log2(p) + XInterval::point_decimal("4.73", p) * log_wd;
    out.q = out.nagell_part;
    return out;
  }

  // unconditional: Q_F = d(Mbar(|c|) + Mbar(sqrt(D)) + 2.52) + 1 + Lambda_F C_F sqrt(D)
  out.nagell_part =
      (out.mbar_c + out.mbar_sqrt_d + XInterval::point_decimal("2.52", p)) * dl + 1;
  if (d >= 2) {
    out.lambda_k = lambda_k_value(d, p) * XInterval::point_mpq(lambda_k_scale, p);
    // Lambda_F = 0.54(3d-1) lambda_K / ((d-1)^2 (log mfrak)^{d-1})
    //            * d^{3/2} d! D^{1/(d+1)} (log D)^{d-1}
    XInterval log_mfrak = log_(out.mfrak);
    mpq_class front(54 * (3 * dl - 1), 100 * (dl - 1) * (dl - 1));
    front.canonicalize();
    out.lambda_f = XInterval::point_mpq(front, p) * out.lambda_k / pow_i(log_mfrak, dl - 1) *
                   pow_q(XInterval::point_long(dl, p), mpq_class(3, 2)) *
                   XInterval::point_mpz(factorial(dl), p) *
                   pow_q(XInterval::point_mpz(dd.weighted_disc, p), mpq_class(1, dl + 1)) *
                   pow_i(log_wd, dl - 1);
    // C_F = 1.38 (d+1)^2/(d-1) + 1.52 d(d+1) + 111.26 d, an exact rational
    mpq_class cf = mpq_class(138 * (dl + 1) * (dl + 1), 100 * (dl - 1)) +
                   mpq_class(152 * dl * (dl + 1), 100) + mpq_class(11126 * dl, 100);
    cf.canonicalize();
    out.c_f = XInterval::point_mpq(cf, p);
    out.lambda_part =
        out.lambda_f * out.c_f * sqrt_(XInterval::point_mpz(dd.weighted_disc, p));
  }
  out.q = out.nagell_part + out.lambda_part;
  return out;
}

PolySystem make_system(std::vector<IntPolynomial> factors, long irred_budget) {
  if (factors.empty()) throw std::invalid_argument("empty system");
  PolySystem sys;
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.is_zero() || f.degree() < 1)
      throw std::invalid_argument("system factors must have degree >= 1");
    if (f.lc() <= 0)
      throw std::invalid_argument("factor '" + to_string(f) + "' has non-positive leading coefficient");
    for (size_t j = 0; j < i; ++j)
      if (factors[j] == f)
        throw std::invalid_argument("repeated factor '" + to_string(f) + "'");
    auto cert = irreducibility_certificate(f, irred_budget);
    if (cert.status == IrredStatus::DisprovenReducible)
      throw std::invalid_argument("factor '" + to_string(f) + "' is reducible: " + cert.detail);
    if (cert.status != IrredStatus::Proven) sys.all_proven_irreducible = false;
    sys.certificates.push_back(std::move(cert));
  }
  sys.product = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) sys.product = mul_poly(sys.product, factors[i]);
  sys.factors = std::move(factors);
  if (auto bad = fixed_divisor_check(sys.product))
    throw std::invalid_argument("system has fixed prime divisor " + bad->get_str());
  sys.product_disc = discriminant(sys.product);
  return sys;
}

LfResult lf(const PolySystem& sys, Regime regime, MertensCache& mertens,
            const mpq_class& lambda_k_scale) {
  Prec p = mertens.prec();
  LfResult out(p);
  out.regime = regime;
  out.log_m_f = sys.product_disc.log_m_f(p);
  for (const auto& f : sys.factors)
    out.factor_q.push_back(qf(f, regime, mertens, lambda_k_scale));
  long g = sys.g();
  long head = std::max(g, static_cast<long>(sys.deg_f()) - 1);
  if (g >= 2) {
    XInterval maxq = out.factor_q[0].q;
    for (const auto& qc : out.factor_q) maxq = max_(maxq, qc.q);
    out.value = (out.log_m_f * head + maxq * g) * 2;
  } else {
    head = std::max(1L, static_cast<long>(sys.deg_f()) - 1);
    out.value = max_(out.log_m_f * head, out.factor_q[0].q) * 2;
  }
  return out;
}

XInterval lf_empirical_residual(const PolySystem& sys, std::uint64_t w, std::uint64_t z,
                                Prec prec) {
  if (w < 2 || w > z || z > 100000000ull)
    throw std::invalid_argument("lf_empirical_residual: need 2 <= w <= z <= 1e8");
  const IntPolynomial& f = sys.product;
  auto term = [&](std::uint64_t q, mpfr_ptr out, mpfr_rnd_t rnd) {
    std::uint64_t r = rho(f, q);
    mpfr_log_ui(out, static_cast<unsigned long>(q), rnd);
    mpfr_mul_ui(out, out, static_cast<unsigned long>(r), rnd);
    mpfr_div_ui(out, out, static_cast<unsigned long>(q), rnd);
  };
  auto sums = prime_prefix_sums({w, z}, prec, term);
  XInterval window = sums[1] - sums[0];
  XInterval glog =
      log_(XInterval::point_mpq(mpq_class(static_cast<unsigned long>(z),
                                          static_cast<unsigned long>(w)), prec)) *
      static_cast<long>(sys.g());
  return abs_(window - glog);
}

}  // namespace xsieve
