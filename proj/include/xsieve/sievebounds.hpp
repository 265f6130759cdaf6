#ifndef XSIEVE_SIEVEBOUNDS_HPP
#define XSIEVE_SIEVEBOUNDS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xsieve/eulerprod.hpp"
#include "xsieve/paperconst.hpp"
#include "xsieve/rignum.hpp"

namespace xsieve {

// (kappa, A1, A2 = L, lambda, k0) of the generic sieve; kappa and A1 are
// integers in every pipeline (g or g+1, deg+1 or deg+2), A2 is the derived
// script-L enclosure, lambda defaults to 2 kappa.
struct SieveParams {
  long kappa;
  long a1;
  XInterval a2;
  mpq_class lambda;
  long k0 = 10;

  SieveParams(long k, long a1_, XInterval a2_, mpq_class lam, long k0_ = 10)
      : kappa(k), a1(a1_), a2(std::move(a2_)), lambda(std::move(lam)), k0(k0_) {
    if (kappa < 1 || a1 <= 1 || k0 < 2 || lambda <= 0)
      throw std::invalid_argument("SieveParams: need kappa >= 1, A1 > 1, k0 >= 2, lambda > 0");
  }
  static SieveParams defaults(long kappa, long a1, XInterval a2, long k0 = 10) {
    return SieveParams(kappa, a1, std::move(a2), mpq_class(2 * kappa), k0);
  }
  Prec prec() const { return a2.prec(); }
  SieveParams at_prec(Prec p) const;
};

// the m0 tower requires log w > A1 A2 (rigorously); throws otherwise
XInterval m0(const XInterval& log_w, const SieveParams& sp);
XInterval m0_hat(const XInterval& log_z, const SieveParams& sp);

// m1(x, d) given log sqrt(x/d); r(z) uses m1(1, 1/2), i.e. log sqrt 2
XInterval m1(const XInterval& log_sqrt_xd, const SieveParams& sp);
XInterval m1_at_sqrt2(const SieveParams& sp);

XInterval m2(const SieveParams& sp);
XInterval m3(const XInterval& log_z, const SieveParams& sp);
XInterval m4(const SieveParams& sp);
XInterval r_of(const XInterval& log_z, const SieveParams& sp);
// m7/m6 require r(z) < 1 rigorously; throws otherwise
XInterval m7(const XInterval& log_z, const SieveParams& sp);
XInterval m6(const XInterval& log_z, const SieveParams& sp);

struct M5Result {
  XInterval value;
  XInterval branch_gamma;  // Theorem-G route (depends on lambda)
  XInterval branch_r;      // m6-route
};
M5Result m5(const XInterval& log_z, const SieveParams& sp);

// log z0 from z0^2 = X / log^{4 kappa + 1} X
XInterval log_z0_of(const XInterval& log_x, const XInterval& loglog_x, const SieveParams& sp);

struct SieveConstants {
  XInterval log_z0, r_z0, m0_z0, m0_hat_z0;
  XInterval m1_sqrt2, m2, m3_z0, m4;
  XInterval m5, m5_branch_gamma, m5_branch_r, m6, m7;
  XInterval m8, m9;

  explicit SieveConstants(Prec p)
      : log_z0(XInterval::zero(p)), r_z0(XInterval::zero(p)), m0_z0(XInterval::zero(p)),
        m0_hat_z0(XInterval::zero(p)), m1_sqrt2(XInterval::zero(p)), m2(XInterval::zero(p)),
        m3_z0(XInterval::zero(p)), m4(XInterval::zero(p)), m5(XInterval::zero(p)),
        m5_branch_gamma(XInterval::zero(p)), m5_branch_r(XInterval::zero(p)),
        m6(XInterval::zero(p)), m7(XInterval::zero(p)), m8(XInterval::zero(p)),
        m9(XInterval::zero(p)) {}
};

// full tower at z0(X); requires the conditions' domains ((4k+1) loglogX/logX < 1,
// r(z0) < 1, log z0 > A1 A2) and throws std::domain_error otherwise
SieveConstants sieve_tower(const mpq_class& log_x, const SieveParams& sp);

struct ConditionClause {
  std::string name;
  XInterval left, right;
  Trilean holds = Trilean::Indeterminate;
  std::string note;
};

struct ConditionReport {
  std::array<ConditionClause, 4> clauses;
  XInterval log_z0;
  bool pass = false;
  bool indeterminate = false;
  int precision_doublings = 0;
  ConditionReport(Prec p)
      : clauses{ConditionClause{"z0 > max{2, e^{A1 A2}}", XInterval::zero(p), XInterval::zero(p)},
                ConditionClause{"r(z0) < 1", XInterval::zero(p), XInterval::zero(p)},
                ConditionClause{"m0_hat(z0) < log z0", XInterval::zero(p), XInterval::zero(p)},
                ConditionClause{"(kappa+1) r(z0) / (1 - r(z0)) < 1", XInterval::zero(p),
                                XInterval::zero(p)}},
        log_z0(XInterval::zero(p)) {}
};

// evaluates the four validity clauses at X = e^{log_x}; "pass" only when every
// clause holds with outward rounding; one automatic precision doubling is
// attempted before reporting a clause indeterminate
ConditionReport check_conditions(const mpq_class& log_x, const SieveParams& sp,
                                 bool auto_double = true);

struct GridOptions {
  int b0_step_hundredths = 10;  // 0.1 grid in b0 (1 for 0.01)
  int b1_min = 1;
  int b1_max = 400;
  int ladder_points = 9;
};

struct MinimalX {
  bool found = false;
  mpq_class log_x;  // b0 * 10^b1
  int b0_hundredths = 0;
  int b1 = 0;
  std::optional<ConditionReport> report;
  bool prev_point_fails = false;  // grid-minimality witness (trivial when b0 = step)
  bool ladder_ok = false;         // conditions persist on X^{1.5^j}, j = 1..ladder_points
  std::string diagnostics;
};

MinimalX find_minimal_x(const SieveParams& sp, const GridOptions& grid = {});

// ---- section-4 pipelines ----

struct TauG1 {
  SieveConstants tower;
  XInterval m_f_x;        // max{X^{1/(2(d-1))}, sum |a_j|/a_d}  (linear: (sqrt X - a0)/a1)
  XInterval c0, c1, c2;   // tau = c2(X)
  XInterval c1_generic;   // variant with the eqn:prod_lower prefactor exp(A1 A2 (1+kappa+A2))
  XInterval log_tau;
  std::string c1_form_used = "exp(2 L (2 + L))";

  explicit TauG1(Prec p)
      : tower(p), m_f_x(XInterval::zero(p)), c0(XInterval::zero(p)), c1(XInterval::zero(p)),
        c2(XInterval::zero(p)), c1_generic(XInterval::zero(p)), log_tau(XInterval::zero(p)) {}
};

// g = 1 pipeline at X = e^{log_x}; lambda fixed to 2 via m10(x0, 2)
TauG1 tau_g1(const PolySystem& sys, const LfResult& lfres, const mpq_class& log_x);

struct ShiftedTau {
  SieveParams params;
  SieveConstants tower;
  XInterval m11, log_m11;
  mpz_class leading;  // 2^{g+1} Gamma(g+2)

  explicit ShiftedTau(SieveParams sp)
      : params(std::move(sp)), tower(params.prec()), m11(XInterval::zero(params.prec())),
        log_m11(XInterval::zero(params.prec())) {}
};

// shifted pipeline for F'(k) = k F(k): kappa = g+1, A1 = deg_F + 2, A2 = L of
// the extended system {k, F_1..F_g}, lambda = 2g.  ext_lf must come from that
// extended system.  Throws (naming p) when rho_F(p) >= p-1 for some p ∤ F(0).
ShiftedTau tau_shifted(const PolySystem& base_sys, const PolySystem& ext_sys,
                       const LfResult& ext_lf, const mpq_class& log_x);

// report of one full g >= 1 run; the main-coefficient pieces of theo:general
struct BoundReport {
  std::string system;
  Regime regime = Regime::Unconditional;
  mpq_class log_x;
  ConditionReport conditions;
  SieveConstants tower;
  XInterval leading_coefficient;  // 2^g Gamma(g+1) (1 + m8/logX)(1 + m9 loglogX/logX)^g
  std::optional<TauG1> tau;             // present for g = 1
  std::optional<ShiftedTau> shifted;    // present for the k F(k) pipeline
  XInterval m_f_additive;               // the additive max{n : F_i(n) < sqrt X} bound
  ProductInterval euler;
  std::vector<std::string> warnings;

  BoundReport(Prec p)
      : conditions(p), tower(p), leading_coefficient(XInterval::zero(p)),
        m_f_additive(XInterval::zero(p)), euler(p) {}
};

// full assembly at a validated X (conditions must pass; throws otherwise)
BoundReport assemble_bound(const PolySystem& sys, const LfResult& lfres, const mpq_class& log_x,
                           std::uint64_t euler_cutoff = 1000000);

}  // namespace xsieve

#endif
