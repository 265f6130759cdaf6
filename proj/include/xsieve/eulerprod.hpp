#ifndef XSIEVE_EULERPROD_HPP
#define XSIEVE_EULERPROD_HPP

#include <cstdint>
#include <string>

#include "xsieve/paperconst.hpp"
#include "xsieve/rignum.hpp"

namespace xsieve {

struct ProductInterval {
  XInterval value;      // encloses the infinite product (see caveat)
  XInterval log_value;  // same, in log form
  std::uint64_t cutoff = 0;
  std::string method;   // "direct+quadratic-tail" or "prime-zeta"
  std::string caveat;   // non-empty when the tail bound is heuristic in part

  explicit ProductInterval(Prec p)
      : value(XInterval::point_long(1, p)), log_value(XInterval::zero(p)) {}
};

// prod_p (1 - omega(p)/p)(1 - 1/p)^{-kappa} with omega = rho of the product
// polynomial, optionally shifted (omega = rho + 1 off p | F(0), the rho'
// transform of the k F(k) pipeline).  Directed partial product over p <= P
// plus a symmetric quadratic tail with C = (deg_F + kappa)^2; the
// first-order tail sum(kappa - omega(p))/p past P has no desk-scale rigorous
// bound for oscillating omega, which is recorded in `caveat` (empty for
// constant-omega tails such as the shifted Sophie Germain pattern).
ProductInterval singular_series(const PolySystem& sys, long kappa, std::uint64_t p_cutoff,
                                Prec prec, bool shifted_rho = false);

// prod_{p>2} (1 - 1/(p-1)^2) via prime-zeta acceleration:
// log = -sum_{k>=2} ((2^k - 2)/k)(P(k) - 2^{-k}),  P(k) = sum mu(n)/n log zeta(nk),
// zeta directed via MPFR, truncation tails bounded explicitly.
ProductInterval twin_constant_accelerated(int digits, Prec prec);

// direct-product evaluation of the same constant with its (fully rigorous)
// quadratic tail; used as the cross-method check
ProductInterval twin_constant_direct(std::uint64_t p_cutoff, Prec prec);

// exp(-A1 A2 (1 + kappa + A2)), the positivity floor of the product
XReal product_lower_bound(long a1, const XInterval& a2, long kappa);

}  // namespace xsieve

#endif
