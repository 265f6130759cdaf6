#include "xsieve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "xsieve/fppoly.hpp"
#include "xsieve/sievebounds.hpp"

namespace xsieve {

std::uint64_t sift_exact(const SiftInstance& inst) {
  if (inst.y > 10000000ull || inst.z > 1000ull)
    throw std::invalid_argument("sift_exact: limits are y <= 1e7, z <= 1e3");
  if (inst.y > inst.x) throw std::invalid_argument("sift_exact: need y <= x");
  if (inst.y == 0) return 0;
  std::vector<char> marked(inst.y, 0);
  // mark n in (x-y, x] with F(n) = 0 mod p, via the roots of F mod p
  for (std::uint64_t p : primes_upto(inst.z >= 1 ? inst.z - 1 : 0)) {
    fp::Poly fbar = fp::reduce(inst.f, p);
    for (std::uint64_t r = 0; r < p; ++r) {
      bool root = fbar.empty() || fp::eval(fbar, r, p) == 0;
      if (!root) continue;
      std::uint64_t lo = inst.x - inst.y + 1;
      std::uint64_t first = lo + ((r + p - lo % p) % p);
      for (std::uint64_t n = first; n <= inst.x; n += p) marked[n - (inst.x - inst.y + 1)] = 1;
    }
  }
  std::uint64_t s = 0;
  for (char m : marked)
    if (!m) ++s;
  return s;
}

mpq_class w_exact(const IntPolynomial& f, std::uint64_t z) {
  mpq_class w(1);
  for (std::uint64_t p : primes_upto(z >= 1 ? z - 1 : 0)) {
    std::uint64_t r = rho(f, p);
    if (r >= p) throw std::domain_error("w_exact: omega(p) = p at p = " + std::to_string(p));
    w *= mpq_class(static_cast<unsigned long>(p - r), static_cast<unsigned long>(p));
  }
  w.canonicalize();
  return w;
}

mpq_class g_exact(const IntPolynomial& f, std::uint64_t z) {
  if (z > 100000ull) throw std::invalid_argument("g_exact: z too large for exact enumeration");
  std::vector<std::uint64_t> rho_p(z, 0);
  for (std::uint64_t p : primes_upto(z >= 1 ? z - 1 : 0)) rho_p[p] = rho(f, p);
  mpq_class total(0);
  for (std::uint64_t d = 1; d < z; ++d) {
    std::uint64_t m = d;
    bool squarefree = true;
    mpq_class gd(1);
    for (std::uint64_t p = 2; p * p <= m && squarefree; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) squarefree = false;
      std::uint64_t r = rho_p[p];
      if (r >= p) throw std::domain_error("g_exact: omega(p) = p");
      gd *= mpq_class(static_cast<unsigned long>(r), static_cast<unsigned long>(p - r));
    }
    if (!squarefree) continue;
    if (m > 1) {
      std::uint64_t r = rho_p[m];
      if (r >= m) throw std::domain_error("g_exact: omega(p) = p");
      gd *= mpq_class(static_cast<unsigned long>(r), static_cast<unsigned long>(m - r));
    }
    total += gd;
  }
  total.canonicalize();
  return total;
}

SelbergCheck selberg_inequality_check(const SiftInstance& inst) {
  SelbergCheck out;
  out.s = sift_exact(inst);
  out.w = w_exact(inst.f, inst.z);
  out.g = g_exact(inst.f, inst.z);
  mpq_class x(static_cast<unsigned long>(inst.y));
  mpq_class z2(static_cast<unsigned long>(inst.z) * static_cast<unsigned long>(inst.z));
  out.rhs = x / out.g + z2 / (out.w * out.w * out.w);
  out.pass = mpq_class(static_cast<unsigned long>(out.s)) <= out.rhs;
  return out;
}

std::uint64_t count_multiples(const SiftInstance& inst, std::uint64_t d) {
  if (d == 0 || d > 100000ull) throw std::invalid_argument("count_multiples: bad d");
  std::uint64_t count = 0;
  std::uint64_t lo = inst.x - inst.y;  // interval is (lo, x]
  for (std::uint64_t r = 0; r < d; ++r) {
    mpz_class v = inst.f.eval(mpz_class(static_cast<unsigned long>(r)));
    if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) continue;
    auto upto = [&](std::uint64_t n) -> std::uint64_t {
      return n >= r ? (n - r) / d + 1 : 0;  // #{0 <= m <= n : m = r mod d}
    };
    count += upto(inst.x) - upto(lo);
  }
  return count;
}

namespace {

bool value_prime(const mpz_class& v, PrimalityEngine engine) {
  if (v < 2) return false;
  if (engine == PrimalityEngine::Gmp) return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
  if (v.fits_ulong_p()) return is_prime_u64(v.get_ui());
  // beyond 64 bits: Miller-Rabin with the fixed witness set 2..37 (strong
  // pseudoprime test; deterministic only below 3.3e24)
  mpz_class n = v, d = v - 1, x;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    if (mpz_cmp_ui(n.get_mpz_t(), a) == 0) return true;
    mpz_class base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

std::uint64_t count_pi_f(const std::vector<IntPolynomial>& factors, std::uint64_t n,
                         PrimalityEngine engine) {
  if (n > 1000000000ull) throw std::invalid_argument("count_pi_f: N above 1e9");
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    bool all = true;
    for (const auto& f : factors) {
      if (!value_prime(f.eval(mpz_class(static_cast<unsigned long>(k))), engine)) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

std::uint64_t sophie_germain_count(std::uint64_t n) {
  // segmented enumeration of p <= n, safe-prime test on 2p+1
  std::uint64_t count = 0;
  for_each_prime(2, n, [&](std::uint64_t p) {
    if (is_prime_u64(2 * p + 1)) ++count;
  });
  return count;
}

std::uint64_t sophie_germain_count_simple(std::uint64_t n) {
  if (n > 100000000ull)
    throw std::invalid_argument("sophie_germain_count_simple: use the segmented route above 1e8");
  if (n < 2) return 0;
  std::uint64_t m = 2 * n + 1;
  std::vector<bool> comp(m + 1, false);
  for (std::uint64_t i = 2; i * i <= m; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= m; j += i) comp[j] = true;
  std::uint64_t count = 0;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (!comp[p] && !comp[2 * p + 1]) ++count;
  return count;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth, int g) {
  auto f = [g](double t) { return 1.0 / std::pow(std::log(t), g); };
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(a, m, fa, flm, fm, left, eps / 2, depth - 1, g) +
         adaptive(m, b, fm, frm, fb, right, eps / 2, depth - 1, g);
}

}  // namespace

double bateman_horn_integral(double y, int g) {
  if (y <= 2.0) return 0.0;
  auto f = [g](double t) { return 1.0 / std::pow(std::log(t), g); };
  double m = 0.5 * (2.0 + y);
  return adaptive(2.0, y, f(2.0), f(m), f(y), simpson(2.0, y, f(2.0), f(m), f(y)), 1e-9, 40, g);
}

std::vector<EnvelopeFailure> lemma_envelope_checks(const IntPolynomial& f, long g,
                                                   const EnvelopeOptions& opt, Prec prec) {
  if (!opt.a2) throw std::invalid_argument("lemma_envelope_checks: A2 required");
  std::vector<std::uint64_t> bounds = opt.boundaries;
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  if (bounds.empty() || bounds.front() < 2)
    throw std::invalid_argument("lemma_envelope_checks: boundaries must be >= 2");
  long a1 = opt.a1 > 0 ? opt.a1 : f.degree() + 1;
  const XInterval& a2 = *opt.a2;
  long kappa = opt.kappa;
  ensure_mpfr_range();

  // one pass: prefix sums over primes p < boundary of
  //   omega/p, omega log p / p, g(p)^k, g(p) omega log p / p
  size_t nb = bounds.size();
  size_t nk = opt.ks.size();
  struct Acc {
    Mpfr lo, hi;
    Acc(mpfr_prec_t b) : lo(b), hi(b) {
      mpfr_set_zero(lo.get(), 1);
      mpfr_set_zero(hi.get(), 1);
    }
  };
  Acc s_op(prec.bits), s_olog(prec.bits), s_gol(prec.bits);
  std::vector<Acc> s_gk;
  for (size_t i = 0; i < nk; ++i) s_gk.emplace_back(prec.bits);
  std::vector<std::vector<XInterval>> snap(4 + nk);  // rows: op, olog, gol, gk..., per boundary
  Mpfr t(prec.bits), u(prec.bits);
  size_t next = 0;
  auto snapshot = [&] {
    snap[0].push_back(interval_from_mpfr_values(s_op.lo.get(), s_op.hi.get(), prec));
    snap[1].push_back(interval_from_mpfr_values(s_olog.lo.get(), s_olog.hi.get(), prec));
    snap[2].push_back(interval_from_mpfr_values(s_gol.lo.get(), s_gol.hi.get(), prec));
    for (size_t i = 0; i < nk; ++i)
      snap[3 + i].push_back(interval_from_mpfr_values(s_gk[i].lo.get(), s_gk[i].hi.get(), prec));
  };
  for_each_prime(2, bounds.back() - 1, [&](std::uint64_t p) {
    while (next < nb && p >= bounds[next]) {
      snapshot();
      ++next;
    }
    std::uint64_t w = rho(f, p);
    if (w == 0) return;
    auto side = [&](mpfr_rnd_t rnd, Acc& op, Acc& olog, Acc& gol, std::vector<Acc>& gk,
                    bool is_lo) {
      mpfr_ptr aop = is_lo ? op.lo.get() : op.hi.get();
      mpfr_ptr aolog = is_lo ? olog.lo.get() : olog.hi.get();
      mpfr_ptr agol = is_lo ? gol.lo.get() : gol.hi.get();
      // omega/p
      mpfr_set_ui(t.get(), static_cast<unsigned long>(w), rnd);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(p), rnd);
      mpfr_add(aop, aop, t.get(), rnd);
      // omega log p / p
      mpfr_log_ui(t.get(), static_cast<unsigned long>(p), rnd);
      mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(w), rnd);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(p), rnd);
      mpfr_add(aolog, aolog, t.get(), rnd);
      // g(p) = omega/(p - omega); g omega log p / p
      mpfr_set_ui(u.get(), static_cast<unsigned long>(w), rnd);
      mpfr_div_ui(u.get(), u.get(), static_cast<unsigned long>(p - w), rnd);
      mpfr_mul(t.get(), t.get(), u.get(), rnd);
      mpfr_add(agol, agol, t.get(), rnd);
      // g(p)^k
      for (size_t i = 0; i < nk; ++i) {
        mpfr_pow_ui(t.get(), u.get(), static_cast<unsigned long>(opt.ks[i]), rnd);
        mpfr_ptr agk = is_lo ? gk[i].lo.get() : gk[i].hi.get();
        mpfr_add(agk, agk, t.get(), rnd);
      }
    };
    side(MPFR_RNDD, s_op, s_olog, s_gol, s_gk, true);
    side(MPFR_RNDU, s_op, s_olog, s_gol, s_gk, false);
  });
  while (next < nb) {
    snapshot();
    ++next;
  }

  std::vector<EnvelopeFailure> failures;
  auto fail = [&](const std::string& which, const std::string& witness) {
    failures.push_back({which, witness});
  };
  auto logz_of = [&](std::uint64_t v) {
    return log_(XInterval::point_mpz(mpz_class(static_cast<unsigned long>(v)), prec));
  };

  SieveParams sp(kappa, a1, a2, mpq_class(2 * kappa));
  for (size_t i = 0; i < nb; ++i) {
    for (size_t j = i + 1; j < nb; ++j) {
      std::uint64_t wv = bounds[i], zv = bounds[j];
      XInterval logw = logz_of(wv), logz = logz_of(zv);
      std::string witness = "w=" + std::to_string(wv) + " z=" + std::to_string(zv);
      // (eq:5): -L/log w <= sum omega/p - kappa log(log z/log w) <= A2/log w
      XInterval mid = (snap[0][j] - snap[0][i]) - (log_(logz) - log_(logw)) * kappa;
      XInterval bound = a2 / logw;
      if (!(cmp(mid.hi(), bound.lo()) <= 0 && cmp(mid.lo(), neg(bound).hi()) >= 0))
        fail("eq:5", witness);
      // Corollary 3.3: |sum omega log p/p - kappa log(z/w)| <= A2
      XInterval res = abs_((snap[1][j] - snap[1][i]) - (logz - logw) * kappa);
      if (cmp(res.hi(), a2.lo()) > 0) fail("corollary-LF", witness);
      // lemm:exp2 for each k
      for (size_t ki = 0; ki < nk; ++ki) {
        long k = opt.ks[ki];
        XInterval left = snap[3 + ki][j] - snap[3 + ki][i];
        XInterval right = pow_i(XInterval::point_long(a1, prec), k) * pow_i(a2, k - 1) /
                          pow_i(logw, k - 1) * (a2 / logw + kappa);
        if (cmp(left.hi(), right.lo()) > 0)
          fail("lemm:exp2", witness + " k=" + std::to_string(k));
      }
    }
    // eqn:smallx at x = bounds[i]: |sum_{p<x} omega log p/p - g log x| <= max{g, deg-1} log x
    XInterval logx = logz_of(bounds[i]);
    XInterval res = abs_(snap[1][i] - logx * g);
    long c = std::max(g, static_cast<long>(f.degree()) - 1);
    if (cmp(res.hi(), (logx * c).lo()) > 0) fail("eqn:smallx", "x=" + std::to_string(bounds[i]));
  }
  // lemm:exp3 sampled at x = b_i^2, d = 1: the sum over the prefix window
  // [b_i, b_j) with b_j <= b_i^2 is a sub-sum of the lemma's inclusive window
  // [sqrt x, x] (nonnegative terms), so it must stay below m1(x, 1)
  for (size_t i = 0; i + 1 < nb; ++i) {
    std::uint64_t a = bounds[i];
    size_t j = i;
    for (size_t c = i + 1; c < nb; ++c)
      if (mpz_class(static_cast<unsigned long>(bounds[c])) <=
          mpz_class(static_cast<unsigned long>(a)) * static_cast<unsigned long>(a))
        j = c;
    if (j == i) continue;
    XInterval left = snap[2][j] - snap[2][i];
    XInterval m1v =
        m1(log_(XInterval::point_mpz(mpz_class(static_cast<unsigned long>(a)), prec)), sp);
    if (cmp(left.hi(), m1v.lo()) > 0)
      fail("lemm:exp3",
           "x=" + std::to_string(a) + "^2 d=1 window [" + std::to_string(a) + ", " +
               std::to_string(bounds[j]) + ")");
  }
  return failures;
}

}  // namespace xsieve
