#include "xsieve/eulerprod.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace xsieve {

ProductInterval singular_series(const PolySystem& sys, long kappa, std::uint64_t p_cutoff,
                                Prec prec, bool shifted_rho) {
  if (p_cutoff > 1000000000ull) throw std::invalid_argument("singular_series: cutoff above 1e9");
  long deg = sys.deg_f() + (shifted_rho ? 1 : 0);
  if (p_cutoff < 2 * static_cast<std::uint64_t>(deg + kappa) + 2)
    throw std::invalid_argument("singular_series: cutoff too small for the quadratic tail");
  ProductInterval out(prec);
  out.cutoff = p_cutoff;
  out.method = "direct+quadratic-tail";
  ensure_mpfr_range();

  mpz_class f0 = shifted_rho ? sys.product.eval(0) : mpz_class(0);

  Mpfr lo(prec.bits), hi(prec.bits), t(prec.bits);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  // per prime: log((p-w)/p) - kappa log((p-1)/p), each endpoint directed
  auto accumulate = [&](std::uint64_t p) {
    std::uint64_t w = rho(sys.product, p);
    if (shifted_rho && !mpz_divisible_ui_p(f0.get_mpz_t(), static_cast<unsigned long>(p))) w += 1;
    if (w >= p)
      throw std::domain_error("singular_series: omega(p) >= p at p = " + std::to_string(p));
    auto side = [&](mpfr_ptr acc, mpfr_rnd_t rnd, mpfr_rnd_t anti_rnd) {
      if (w > 0) {
        mpfr_log_ui(t.get(), static_cast<unsigned long>(p - w), rnd);
        mpfr_add(acc, acc, t.get(), rnd);
        mpfr_log_ui(t.get(), static_cast<unsigned long>(p), anti_rnd);
        mpfr_sub(acc, acc, t.get(), rnd);
      }
      mpfr_log_ui(t.get(), static_cast<unsigned long>(p - 1), anti_rnd);
      mpfr_mul_si(t.get(), t.get(), kappa, anti_rnd);
      mpfr_sub(acc, acc, t.get(), rnd);
      mpfr_log_ui(t.get(), static_cast<unsigned long>(p), rnd);
      mpfr_mul_si(t.get(), t.get(), kappa, rnd);
      mpfr_add(acc, acc, t.get(), rnd);
    };
    side(lo.get(), MPFR_RNDD, MPFR_RNDU);
    side(hi.get(), MPFR_RNDU, MPFR_RNDD);
  };
  for_each_prime(2, p_cutoff, accumulate);

  XInterval log_partial = interval_from_mpfr_values(lo.get(), hi.get(), prec);
  // quadratic tail: |curvature terms| <= (deg + kappa)^2 / p^2, summed via
  // sum_{p>P} 1/p^2 < 1/(P-1)
  mpq_class c((deg + kappa) * (deg + kappa), 1);
  mpq_class tail = c / mpq_class(static_cast<unsigned long>(p_cutoff - 1));
  tail.canonicalize();
  out.log_value = widen(log_partial, XInterval::point_mpq(tail, prec));
  out.value = exp_(out.log_value);

  // first-order tail sum (kappa - omega(p))/p is identically zero past the
  // bad primes when every factor is linear and omega matches kappa there
  bool all_linear = true;
  for (const auto& f : sys.factors)
    if (f.degree() != 1) all_linear = false;
  mpz_class bad = sys.product_disc.abs_disc;
  for (const auto& f : sys.factors) bad = std::max(bad, mpz_class(abs(f.lc())));
  if (shifted_rho) bad = std::max(bad, mpz_class(abs(sys.product.eval(0))));
  long omega_tail = sys.g() + (shifted_rho ? 1 : 0);
  bool rigorous = all_linear && kappa == omega_tail &&
                  mpz_class(static_cast<unsigned long>(p_cutoff)) > bad;
  if (!rigorous)
    out.caveat =
        "first-order tail sum (kappa - omega(p))/p beyond the cutoff is assumed negligible; "
        "no desk-scale rigorous bound without character-sum input";
  return out;
}

namespace {

std::vector<int> moebius_upto(int n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<char> comp(n + 1, 0);
  std::vector<int> primes;
  for (int i = 2; i <= n; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (int p : primes) {
      long long ip = static_cast<long long>(i) * p;
      if (ip > n) break;
      comp[ip] = 1;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = -mu[i];
    }
  }
  return mu;
}

mpq_class pow2_inv(unsigned long e) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, e);
  mpq_class q(1, d);
  q.canonicalize();
  return q;
}

// prime zeta P(k) = sum_{n>=1} mu(n)/n log zeta(nk), truncated with an
// explicit pad; zeta correctly rounded by MPFR
XInterval prime_zeta(int k, Prec prec, XInterval& pad_accum, const mpq_class& coeff) {
  int n_terms = std::max(3, (140 + k - 1) / k);
  static thread_local std::vector<int> mu = moebius_upto(256);
  if (n_terms >= static_cast<int>(mu.size())) mu = moebius_upto(2 * n_terms);
  XInterval acc = XInterval::zero(prec);
  for (int n = 1; n <= n_terms; ++n) {
    if (mu[n] == 0) continue;
    unsigned long m = static_cast<unsigned long>(n) * static_cast<unsigned long>(k);
    Mpfr zlo(prec.bits), zhi(prec.bits);
    mpfr_zeta_ui(zlo.get(), m, MPFR_RNDD);
    mpfr_zeta_ui(zhi.get(), m, MPFR_RNDU);
    XInterval z = interval_from_mpfr_values(zlo.get(), zhi.get(), prec);
    XInterval term = log_(z) / n;
    acc = (mu[n] > 0) ? acc + term : acc - term;
  }
  // |tail| <= 4.6 * 2^{-(n_terms+1)k} / (n_terms+1), scaled by this k's coefficient
  mpq_class p = mpq_class(46, 10) * pow2_inv(static_cast<unsigned long>((n_terms + 1) * k)) /
                mpq_class(n_terms + 1);
  p *= coeff;
  p.canonicalize();
  pad_accum = pad_accum + XInterval::point_mpq(p, prec);
  return acc;
}

}  // namespace

ProductInterval twin_constant_accelerated(int digits, Prec prec) {
  if (digits > 30) throw std::invalid_argument("twin constant: digits beyond implemented range");
  Prec work{std::max(prec.bits, Prec::decimal_digits(digits + 12).bits)};
  const int K = 200;
  XInterval log_acc = XInterval::zero(work);
  XInterval pad = XInterval::zero(work);
  mpz_class two_k = 2;  // 2^k
  mpz_class three_k = 3;
  for (int k = 2; k <= K; ++k) {
    two_k *= 2;
    three_k *= 3;
    mpq_class coeff(two_k - 2, k);
    coeff.canonicalize();
    XInterval pk = prime_zeta(k, work, pad, coeff);
    XInterval body = pk - XInterval::point_mpq(pow2_inv(static_cast<unsigned long>(k)), work);
    // a priori P(k) - 2^{-k} = sum_{p>=3} p^{-k} in [3^{-k}, 4*3^{-k}]; keeps the
    // 2^k/k coefficient from amplifying once the computed body is rounding noise
    mpq_class lo3(1, three_k), hi3(4, three_k);
    lo3.canonicalize();
    hi3.canonicalize();
    body = intersect(body, XInterval(XReal::from_mpq(lo3, work, Round::Down),
                                     XReal::from_mpq(hi3, work, Round::Up)));
    log_acc = log_acc + XInterval::point_mpq(coeff, work) * body;
  }
  // truncation of the k-sum: sum_{k>K} (2^k/k) * 4 * 3^{-k} <= (12/K)(2/3)^{K+1}
  mpq_class twothirds(2, 3);
  mpz_class n2, d3;
  mpz_ui_pow_ui(n2.get_mpz_t(), 2, K + 1);
  mpz_ui_pow_ui(d3.get_mpz_t(), 3, K + 1);
  mpq_class ktail = mpq_class(12, K) * mpq_class(n2, d3);
  ktail.canonicalize();
  pad = pad + XInterval::point_mpq(ktail, work);

  ProductInterval out(prec);
  out.method = "prime-zeta";
  out.cutoff = 0;
  out.log_value = widen(neg(log_acc), pad);
  out.value = exp_(out.log_value);
  return out;
}

ProductInterval twin_constant_direct(std::uint64_t p_cutoff, Prec prec) {
  if (p_cutoff < 5) throw std::invalid_argument("twin_constant_direct: cutoff too small");
  ProductInterval out(prec);
  out.method = "direct+quadratic-tail";
  out.cutoff = p_cutoff;
  ensure_mpfr_range();
  Mpfr lo(prec.bits), hi(prec.bits), t(prec.bits);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  // log(1 - 1/(p-1)^2) = log p + log(p-2) - 2 log(p-1)
  auto side = [&](mpfr_ptr acc, std::uint64_t p, mpfr_rnd_t rnd, mpfr_rnd_t anti) {
    mpfr_log_ui(t.get(), static_cast<unsigned long>(p), rnd);
    mpfr_add(acc, acc, t.get(), rnd);
    mpfr_log_ui(t.get(), static_cast<unsigned long>(p - 2), rnd);
    mpfr_add(acc, acc, t.get(), rnd);
    mpfr_log_ui(t.get(), static_cast<unsigned long>(p - 1), anti);
    mpfr_mul_ui(t.get(), t.get(), 2, anti);
    mpfr_sub(acc, acc, t.get(), rnd);
  };
  for_each_prime(3, p_cutoff, [&](std::uint64_t p) {
    side(lo.get(), p, MPFR_RNDD, MPFR_RNDU);
    side(hi.get(), p, MPFR_RNDU, MPFR_RNDD);
  });
  XInterval log_partial = interval_from_mpfr_values(lo.get(), hi.get(), prec);
  // |sum_{p>P} log(1-1/(p-1)^2)| <= 2 sum_{m >= P-1} 1/m^2 <= 2/(P-2)
  mpq_class tail(2, static_cast<unsigned long>(p_cutoff - 2));
  tail.canonicalize();
  out.log_value = widen(log_partial, XInterval::point_mpq(tail, prec));
  out.value = exp_(out.log_value);
  return out;
}

XReal product_lower_bound(long a1, const XInterval& a2, long kappa) {
  XInterval e = neg(a2 * a1 * (a2 + (1 + kappa)));
  return exp_(e).lo();
}

}  // namespace xsieve
