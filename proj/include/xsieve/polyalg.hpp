#ifndef XSIEVE_POLYALG_HPP
#define XSIEVE_POLYALG_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "xsieve/rignum.hpp"

namespace xsieve {

// Integer-coefficient polynomial, constant term first.  Normalized: no
// trailing zero coefficients; the zero polynomial has an empty vector.
struct IntPolynomial {
  std::vector<mpz_class> coeffs;
  char var = 'k';

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const mpz_class& lc() const;
  const mpz_class& coeff(int j) const;  // 0 for j > degree

  mpz_class eval(const mpz_class& x) const;
  IntPolynomial derivative() const;
  mpz_class content() const;  // gcd of coefficients, >= 0; 0 for zero poly
  void normalize();

  bool operator==(const IntPolynomial& o) const { return coeffs == o.coeffs; }
};

IntPolynomial make_poly(std::vector<long> coeffs, char var = 'k');
IntPolynomial mul_poly(const IntPolynomial& a, const IntPolynomial& b);

struct PolyParseError : std::runtime_error {
  size_t position;
  PolyParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// poly := term (('+'|'-') term)*,  term := [int]['*']?[letter]['^' int]?
// whitespace ignored; one variable letter per polynomial; zero polynomial rejected
IntPolynomial parse_poly(const std::string& text);
std::string to_string(const IntPolynomial& f);

// Res(A, B) over Z by subresultant pseudo-remainder sequence (exact).
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

// D_F = (-1)^{d(d-1)/2} Res(F, F') / lc(F); degree-1 polynomials get D_F = 1
// (empty-resultant convention, which also gives M_F = 2).
mpz_class discriminant_value(const IntPolynomial& f);

struct DiscriminantData {
  mpz_class disc;
  mpz_class abs_disc;
  mpz_class weighted_disc;  // |c|^{(d-1)(d-2)} |D_F|
  mpz_class sqrt_weighted_floor;

  // M_F = max{2, sqrt(weighted_disc)}
  XInterval m_f(Prec p) const;
  XInterval log_m_f(Prec p) const;
};

// throws std::domain_error("not squarefree, cannot be irreducible") when D_F = 0
DiscriminantData discriminant(const IntPolynomial& f);

enum class IrredStatus { Proven, Unproven, DisprovenReducible };

struct IrreducibilityCertificate {
  IrredStatus status;
  std::string detail;  // witness prime / rational root / reason
};

// Proven: content 1 and irreducible mod some prime p <= budget with p∤c·D_F
// (distinct-degree test over F_p).  Disproven: rational root or content > 1.
// Otherwise Unproven (e.g. k^4+1, reducible mod every prime).
IrreducibilityCertificate irreducibility_certificate(const IntPolynomial& f, long prime_budget);

// smallest prime p with rho_F(p) = p, if any; only p <= deg F and p | content
// can offend (for p > deg F with p ∤ content, rho <= deg F < p)
std::optional<mpz_class> fixed_divisor_check(const IntPolynomial& f);

}  // namespace xsieve

#endif
