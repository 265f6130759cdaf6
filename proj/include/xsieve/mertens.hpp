#ifndef XSIEVE_MERTENS_HPP
#define XSIEVE_MERTENS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "xsieve/rignum.hpp"

namespace xsieve {

// Mbar(x) = sum_{p <= x} log p / p, enclosed by directed summation.  The
// Q_F inputs are |c| and sqrt(weighted disc), so cutoffs stay small; direct
// summation is refused above 1e10.
XInterval mertens_bar(const mpz_class& x_floor, Prec p);

// one instance per precision; read-only after each fill, cheap to share
class MertensCache {
 public:
  explicit MertensCache(Prec p) : prec_(p) {}
  const XInterval& mbar(const mpz_class& x_floor);
  Prec prec() const { return prec_; }

 private:
  Prec prec_;
  std::map<mpz_class, XInterval> cache_;
};

struct VProduct {
  std::optional<mpq_class> exact;  // present up to the exact-mode cap
  XInterval enclosure;
  bool exact_overflowed = false;
  // |V(z) e^gamma log z - 1| <= 1/log^2 z, evaluated for z >= 285
  std::optional<bool> envelope_ok;
};

inline constexpr std::uint64_t kVProductExactCap = 1000000;

// V(z) = prod_{p < z} (1 - 1/p)
VProduct v_product(std::uint64_t z, Prec p);

// Prefix sums of term(p) >= 0 over primes p < point, one value per ascending
// point, in a single prime pass.  `term` must write a directed evaluation of
// the per-prime term for the given rounding.
std::vector<XInterval> prime_prefix_sums(
    const std::vector<std::uint64_t>& points, Prec prec,
    const std::function<void(std::uint64_t, mpfr_ptr, mpfr_rnd_t)>& term);

struct EnvelopeSample {
  std::uint64_t z;
  bool ok;
  double lhs_hi;  // upper end of |V e^gamma log z - 1|
  double rhs_lo;  // lower end of 1/log^2 z
};

// checks the V(z) asymptotic envelope at each sampled z (ascending, all >= 285)
std::vector<EnvelopeSample> v_envelope_sweep(const std::vector<std::uint64_t>& zs, Prec p);

}  // namespace xsieve

#endif
