#ifndef XSIEVE_MODARITH_HPP
#define XSIEVE_MODARITH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xsieve/polyalg.hpp"

namespace xsieve {

// Simple sieve of Eratosthenes; intended for n up to ~10^8.
std::vector<std::uint64_t> primes_upto(std::uint64_t n);

// Segmented enumeration of the primes in [lo, hi], ascending.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    std::uint64_t segment = 1u << 20);

// Pull-style segmented prime stream over [2, limit].
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t limit, std::uint64_t segment = 1u << 20);
  std::optional<std::uint64_t> next();

 private:
  void fill();
  std::uint64_t limit_;
  std::uint64_t segment_;
  std::uint64_t seg_lo_;
  std::vector<std::uint64_t> base_;
  std::vector<std::uint64_t> current_;
  size_t pos_ = 0;
};

// deterministic Miller-Rabin for the full 64-bit range
bool is_prime_u64(std::uint64_t n);

// Legendre symbol (a/p) for odd prime p, via Euler's criterion.
int legendre(const mpz_class& a, std::uint64_t p);

// Brute force below this bound, gcd(F mod p, x^p - x) above it.
inline constexpr std::uint64_t kRhoBruteCrossover = 10000;

// Number of n mod p with F(n) = 0 mod p.  Equals p when F vanishes
// identically mod p (fixed divisor).
std::uint64_t rho(const IntPolynomial& f, std::uint64_t p,
                  std::uint64_t crossover = kRhoBruteCrossover);

// Multiplicative extension to squarefree d (trial-factored); throws when d
// is not squarefree.
std::uint64_t rho_squarefree(const IntPolynomial& f, std::uint64_t d);

struct RhoSplit {
  std::uint64_t sum;  // rho_{F_1}(p) + ... + rho_{F_g}(p)
  bool exact;         // guaranteed equal to rho_F(p) when p > |D_F| of the product
};

RhoSplit rho_split(const std::vector<IntPolynomial>& factors, std::uint64_t p,
                   const mpz_class& product_abs_disc);

}  // namespace xsieve

#endif
