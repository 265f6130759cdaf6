#ifndef XSIEVE_VERIFY_HPP
#define XSIEVE_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xsieve/mertens.hpp"
#include "xsieve/modarith.hpp"
#include "xsieve/polyalg.hpp"

namespace xsieve {

// A = {F(n) : x-y < n <= x} sifted by the primes p < z (P(2) = 1).
struct SiftInstance {
  IntPolynomial f;
  std::uint64_t x = 0;
  std::uint64_t y = 0;  // y <= x
  std::uint64_t z = 0;
};

// exact S(A, P, z) by trial division against primes < z; y <= 1e7, z <= 1e3
std::uint64_t sift_exact(const SiftInstance& inst);

// exact rationals W(z) = prod_{p<z}(1 - w(p)/p) and G(z) = sum_{d<z} mu^2(d) g(d)
// with w = rho_F; throws when some w(p) = p (fixed divisor)
mpq_class w_exact(const IntPolynomial& f, std::uint64_t z);
mpq_class g_exact(const IntPolynomial& f, std::uint64_t z);

struct SelbergCheck {
  std::uint64_t s;       // exact sifted count
  mpq_class rhs;         // X/G(z) + z^2/W^3(z), X = y
  bool pass;             // s <= rhs with exact arithmetic
  mpq_class w, g;
};

SelbergCheck selberg_inequality_check(const SiftInstance& inst);

// #A_d for squarefree d, exact
std::uint64_t count_multiples(const SiftInstance& inst, std::uint64_t d);

// pi_F(N): n <= N with every factor value prime.  Engine selects the
// primality backend so two independent implementations can be compared.
enum class PrimalityEngine { OwnMillerRabin, Gmp };
std::uint64_t count_pi_f(const std::vector<IntPolynomial>& factors, std::uint64_t n,
                         PrimalityEngine engine = PrimalityEngine::OwnMillerRabin);

// #{p <= N : p and 2p+1 prime}; segmented sieve
std::uint64_t sophie_germain_count(std::uint64_t n);
// independent route: simple sieve bitset over [0, 2N+1]
std::uint64_t sophie_germain_count_simple(std::uint64_t n);

// Bateman-Horn comparison curve: C * (1/prod deg) * integral_2^y dt/log^g t
// by adaptive Simpson (informational only)
double bateman_horn_integral(double y, int g);

struct EnvelopeFailure {
  std::string which;
  std::string witness;
};

struct EnvelopeOptions {
  std::vector<std::uint64_t> boundaries;  // ascending w/z sample points, >= 2
  std::vector<int> ks = {2, 3, 4};
  long a1 = 0;             // 0: use deg+1
  const XInterval* a2 = nullptr;  // required
  long kappa = 1;
};

// samples (eq:5), lemm:exp2, lemm:exp3, eqn:smallx and the Corollary-3.3
// residual for omega = rho_F, with exact prime sums on the left and
// up-rounded bounds on the right; returns every failing instance
std::vector<EnvelopeFailure> lemma_envelope_checks(const IntPolynomial& f, long g,
                                                   const EnvelopeOptions& opt, Prec prec);

}  // namespace xsieve

#endif
