#ifndef XSIEVE_PAPERCONST_HPP
#define XSIEVE_PAPERCONST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xsieve/mertens.hpp"
#include "xsieve/modarith.hpp"
#include "xsieve/polyalg.hpp"
#include "xsieve/rignum.hpp"

namespace xsieve {

enum class Regime { Unconditional, Grh };
inline const char* regime_name(Regime r) {
  return r == Regime::Unconditional ? "unconditional" : "grh";
}

// Nagell-type sum constants for one irreducible polynomial:
// |sum_{p<=x} rho_F(p) log p / p - log x| <= Q_F for x >= max{2, sqrt(D_F)}.
struct QfConstants {
  int d = 0;
  Regime regime = Regime::Unconditional;
  mpz_class weighted_disc;
  XInterval mfrak;       // (pi/4)^d d^{2d}/(d!)^2
  XInterval lambda_k;    // 0-point for d = 1 (never evaluated there)
  XInterval lambda_f;    // 0 when d = 1
  XInterval c_f;         // 0-point for d = 1 (the (d-1) denominator is never touched)
  XInterval mbar_c;      // Mbar(|c|)
  XInterval mbar_sqrt_d; // Mbar(sqrt(weighted disc))
  XInterval nagell_part; // the d(Mbar+Mbar+const)+tail part without Lambda*C*sqrt(D)
  XInterval lambda_part; // Lambda_F * C_F * sqrt(D) (0 for GRH / d = 1)
  XInterval q;           // Q_F

  QfConstants() = delete;
  explicit QfConstants(Prec p)
      : mfrak(XInterval::zero(p)), lambda_k(XInterval::zero(p)), lambda_f(XInterval::zero(p)),
        c_f(XInterval::zero(p)), mbar_c(XInterval::zero(p)), mbar_sqrt_d(XInterval::zero(p)),
        nagell_part(XInterval::zero(p)), lambda_part(XInterval::zero(p)),
        q(XInterval::zero(p)) {}
};

// lambda_k_scale (exact rational) scales the lambda_K subterm; used by the
// Table-1 sensitivity isolation, identity otherwise.
QfConstants qf(const IntPolynomial& f, Regime regime, MertensCache& mertens,
               const mpq_class& lambda_k_scale = mpq_class(1));

// System F_1...F_g of distinct irreducible polynomials with positive leading
// coefficients, no fixed prime divisor in the product.
struct PolySystem {
  std::vector<IntPolynomial> factors;
  std::vector<IrreducibilityCertificate> certificates;
  IntPolynomial product;
  DiscriminantData product_disc;
  bool all_proven_irreducible = true;

  int g() const { return static_cast<int>(factors.size()); }
  int deg_f() const { return product.degree(); }
};

// throws std::invalid_argument on: repeated factor, non-positive leading
// coefficient, reducible factor, or a fixed prime divisor of the product.
// Unproven irreducibility is allowed and recorded (warn-and-proceed).
PolySystem make_system(std::vector<IntPolynomial> factors, long irred_budget = 200);

struct LfResult {
  Regime regime = Regime::Unconditional;
  XInterval value;             // script-L_F
  XInterval log_m_f;           // log max{2, sqrt(product weighted disc)}
  std::vector<QfConstants> factor_q;

  explicit LfResult(Prec p) : value(XInterval::zero(p)), log_m_f(XInterval::zero(p)) {}
};

// the admissible L = A_2 of (Omega_2), by the printed two-case formula
LfResult lf(const PolySystem& sys, Regime regime, MertensCache& mertens,
            const mpq_class& lambda_k_scale = mpq_class(1));

// |sum_{w<=p<z} rho_F(p) log p / p - g log(z/w)|, exact prime sums
XInterval lf_empirical_residual(const PolySystem& sys, std::uint64_t w, std::uint64_t z,
                                Prec prec);

}  // namespace xsieve

#endif
