#include "xsieve/modarith.hpp"

#include <cmath>
#include <stdexcept>

#include "xsieve/fppoly.hpp"

namespace xsieve {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn, std::uint64_t segment) {
  if (hi < 2 || lo > hi) return;
  if (lo < 2) lo = 2;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  std::vector<std::uint64_t> base = primes_upto(root);
  std::vector<char> mark;
  for (std::uint64_t s = lo; s <= hi; s += segment) {
    std::uint64_t e = std::min(hi, s + segment - 1);
    mark.assign(e - s + 1, 0);
    for (std::uint64_t p : base) {
      if (p * p > e) break;
      std::uint64_t start = std::max(p * p, ((s + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= e; j += p) mark[j - s] = 1;
    }
    for (std::uint64_t v = s; v <= e; ++v)
      if (!mark[v - s] && v >= 2) fn(v);
    if (e == hi) break;  // avoid overflow of s += segment near UINT64_MAX
  }
}

PrimeStream::PrimeStream(std::uint64_t limit, std::uint64_t segment)
    : limit_(limit), segment_(segment), seg_lo_(2) {
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 2;
  base_ = primes_upto(root);
  fill();
}

void PrimeStream::fill() {
  current_.clear();
  pos_ = 0;
  while (current_.empty() && seg_lo_ <= limit_) {
    std::uint64_t e = std::min(limit_, seg_lo_ + segment_ - 1);
    std::vector<char> mark(e - seg_lo_ + 1, 0);
    for (std::uint64_t p : base_) {
      if (p * p > e) break;
      std::uint64_t start = std::max(p * p, ((seg_lo_ + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= e; j += p) mark[j - seg_lo_] = 1;
    }
    for (std::uint64_t v = seg_lo_; v <= e; ++v)
      if (!mark[v - seg_lo_] && v >= 2) current_.push_back(v);
    seg_lo_ = e + 1;
    if (e == limit_) break;
  }
}

std::optional<std::uint64_t> PrimeStream::next() {
  if (pos_ >= current_.size()) {
    if (seg_lo_ > limit_) return std::nullopt;
    fill();
    if (current_.empty()) return std::nullopt;
  }
  return current_[pos_++];
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // first 12 primes: deterministic for n < 3.3e24, far beyond 2^64
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = fp::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = fp::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int legendre(const mpz_class& a, std::uint64_t p) {
  if (p == 2 || !is_prime_u64(p)) throw std::invalid_argument("legendre needs odd prime p");
  mpz_class m = a % mpz_class(static_cast<unsigned long>(p));
  if (m < 0) m += mpz_class(static_cast<unsigned long>(p));
  std::uint64_t r = fp::powmod(m.get_ui(), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? +1 : -1;
}

std::uint64_t rho(const IntPolynomial& f, std::uint64_t p, std::uint64_t crossover) {
  if (f.is_zero()) throw std::invalid_argument("rho of zero polynomial");
  fp::Poly fbar = fp::reduce(f, p);
  if (fbar.empty()) return p;           // F vanishes identically: fixed divisor
  if (fbar.size() == 1) return 0;       // nonzero constant
  if (p < crossover) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < p; ++n)
      if (fp::eval(fbar, n, p) == 0) ++count;
    return count;
  }
  // rho = deg gcd(Fbar, x^p - x); compute x^p mod Fbar first
  fp::Poly x{0, 1};
  fp::Poly xp = fp::powmod_poly(x, mpz_class(static_cast<unsigned long>(p)), fbar, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;
  fp::trim(xp);
  fp::Poly g = fp::gcd(fbar, xp, p);
  return g.empty() ? 0 : g.size() - 1;
}

std::uint64_t rho_squarefree(const IntPolynomial& f, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("rho_squarefree: d must be positive");
  std::uint64_t result = 1;
  std::uint64_t rem = d;
  for (std::uint64_t t = 2; t * t <= rem; ++t) {
    if (rem % t) continue;
    rem /= t;
    if (rem % t == 0) throw std::invalid_argument("rho_squarefree: d not squarefree");
    result *= rho(f, t);
  }
  if (rem > 1) result *= rho(f, rem);
  return result;
}

RhoSplit rho_split(const std::vector<IntPolynomial>& factors, std::uint64_t p,
                   const mpz_class& product_abs_disc) {
  std::uint64_t sum = 0;
  for (const auto& fi : factors) sum += rho(fi, p);
  bool exact = mpz_class(static_cast<unsigned long>(p)) > product_abs_disc;
  return {sum, exact};
}

}  // namespace xsieve
