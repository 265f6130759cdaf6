#ifndef XSIEVE_FPPOLY_HPP
#define XSIEVE_FPPOLY_HPP

// Dense polynomial arithmetic over F_p (p < 2^63), constant term first.
// Internal helper shared by the irreducibility certificate and rho.

#include <cstdint>
#include <utility>
#include <vector>

#include "xsieve/polyalg.hpp"

namespace xsieve::fp {

using Poly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly reduce(const IntPolynomial& f, std::uint64_t p) {
  Poly r;
  r.reserve(f.coeffs.size());
  for (const auto& c : f.coeffs) {
    mpz_class m = c % mpz_class(static_cast<unsigned long>(p));
    if (m < 0) m += mpz_class(static_cast<unsigned long>(p));
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

inline std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

// a * b mod m over F_p; m need not be monic
inline Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  size_t dm = m.size() - 1;
  std::uint64_t ilm = invmod(m.back(), p);
  while (r.size() > dm) {
    std::uint64_t top = r.back();
    if (top) {
      std::uint64_t f = mulmod(top, ilm, p);
      size_t off = r.size() - 1 - dm;
      for (size_t j = 0; j < m.size(); ++j) {
        std::uint64_t sub = mulmod(f, m[j], p);
        r[off + j] = (r[off + j] + p - sub) % p;
      }
    }
    r.pop_back();
  }
  trim(r);
  return r;
}

// base^e mod m, exponent an arbitrary big integer
inline Poly powmod_poly(Poly base, mpz_class e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mulmod_poly(result, base, m, p);
    base = mulmod_poly(base, base, m, p);
    e >>= 1;
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t ilb = invmod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t f = mulmod(a.back(), ilb, p);
      size_t off = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j) {
        std::uint64_t sub = mulmod(f, b[j], p);
        a[off + j] = (a[off + j] + p - sub) % p;
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace xsieve::fp

#endif
