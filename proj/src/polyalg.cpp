#include "xsieve/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "xsieve/fppoly.hpp"

namespace xsieve {

namespace {
const mpz_class kZero = 0;
}

const mpz_class& IntPolynomial::lc() const {
  if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
  return coeffs.back();
}

const mpz_class& IntPolynomial::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs.size())) return kZero;
  return coeffs[static_cast<size_t>(j)];
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  IntPolynomial d;
  d.var = var;
  for (size_t j = 1; j < coeffs.size(); ++j) d.coeffs.push_back(coeffs[j] * mpz_class(j));
  d.normalize();
  return d;
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs) g = gcd(g, c);
  return abs(g);
}

void IntPolynomial::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPolynomial make_poly(std::vector<long> cs, char var) {
  IntPolynomial f;
  f.var = var;
  for (long c : cs) f.coeffs.emplace_back(c);
  f.normalize();
  return f;
}

IntPolynomial mul_poly(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r;
  r.var = a.var;
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  r.normalize();
  return r;
}

IntPolynomial parse_poly(const std::string& text) {
  IntPolynomial f;
  size_t i = 0;
  char var = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_uint = [&]() -> mpz_class {
    size_t start = i;
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    if (digits.empty()) throw PolyParseError("expected integer", start);
    return mpz_class(digits);
  };

  auto add_term = [&](const mpz_class& coef, long expo) {
    if (expo < 0 || expo > 1000000) throw PolyParseError("exponent out of range", i);
    if (f.coeffs.size() <= static_cast<size_t>(expo)) f.coeffs.resize(expo + 1, mpz_class(0));
    f.coeffs[static_cast<size_t>(expo)] += coef;
  };

  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) {
      if (first) throw PolyParseError("empty polynomial", i);
      break;
    }
    int s = +1;
    if (text[i] == '+' || text[i] == '-') {
      s = text[i] == '-' ? -1 : +1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw PolyParseError("expected '+' or '-'", i);
    }
    mpz_class coef = 1;
    bool have_coef = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = read_uint();
      have_coef = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    long expo = 0;
    if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
      char v = text[i++];
      if (var == 0)
        var = v;
      else if (var != v)
        throw PolyParseError(std::string("mixed variables '") + var + "' and '" + v + "'", i - 1);
      expo = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        mpz_class e = read_uint();
        if (!e.fits_slong_p()) throw PolyParseError("exponent out of range", i);
        expo = e.get_si();
      }
    } else if (!have_coef) {
      throw PolyParseError("expected term", i);
    }
    add_term(s * coef, expo);
    first = false;
  }
  if (var != 0) f.var = var;
  f.normalize();
  if (f.is_zero()) throw PolyParseError("zero polynomial rejected", 0);
  return f;
}

std::string to_string(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int j = f.degree(); j >= 0; --j) {
    const mpz_class& c = f.coeff(j);
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    if (j == 0) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += f.var;
      if (j != 1) out += "^" + std::to_string(j);
    }
  }
  return out;
}

namespace {

// pseudo-remainder: lc(B)^(degA-degB+1) * A  mod  B
std::vector<mpz_class> prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  int da = static_cast<int>(a.size()) - 1;
  int db = static_cast<int>(b.size()) - 1;
  const mpz_class& lb = b.back();
  for (int k = da; k >= db; --k) {
    mpz_class top = a[static_cast<size_t>(k)];
    for (int j = 0; j < k; ++j) a[static_cast<size_t>(j)] *= lb;
    for (int j = 0; j < db; ++j)
      a[static_cast<size_t>(k - db + j)] -= top * b[static_cast<size_t>(j)];
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

mpz_class pow_z(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

mpz_class resultant(const IntPolynomial& A0, const IntPolynomial& B0) {
  if (A0.is_zero() || B0.is_zero()) return 0;
  if (A0.degree() == 0) return pow_z(A0.coeffs[0], static_cast<unsigned long>(B0.degree()));
  if (B0.degree() == 0) return pow_z(B0.coeffs[0], static_cast<unsigned long>(A0.degree()));

  // subresultant PRS (Cohen, Algorithm 3.3.7)
  std::vector<mpz_class> a = A0.coeffs, b = B0.coeffs;
  int sign = 1;
  if (a.size() < b.size()) {
    std::swap(a, b);
    if ((A0.degree() & 1) && (B0.degree() & 1)) sign = -sign;
  }
  mpz_class g = 1, h = 1;
  while (true) {
    int da = static_cast<int>(a.size()) - 1;
    int db = static_cast<int>(b.size()) - 1;
    int delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    std::vector<mpz_class> r = prem(a, b);
    a = std::move(b);
    mpz_class divisor = g * pow_z(h, static_cast<unsigned long>(delta));
    b = std::move(r);
    for (auto& c : b) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
      c = q;
    }
    g = a.back();
    if (delta >= 1) {
      // h = g^delta / h^(delta-1), exact
      mpz_class num = pow_z(g, static_cast<unsigned long>(delta));
      mpz_class den = pow_z(h, static_cast<unsigned long>(delta - 1));
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      h = q;
    }
    if (b.empty()) return 0;
    if (b.size() == 1) {
      int dA = static_cast<int>(a.size()) - 1;
      mpz_class num = pow_z(b[0], static_cast<unsigned long>(dA));
      mpz_class den = pow_z(h, static_cast<unsigned long>(dA - 1));
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return sign > 0 ? q : mpz_class(-q);
    }
  }
}

mpz_class discriminant_value(const IntPolynomial& f) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  int d = f.degree();
  if (d == 1) return 1;
  mpz_class res = resultant(f, f.derivative());
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
  long e = (static_cast<long>(d) * (d - 1) / 2) % 2;
  return e ? mpz_class(-q) : q;
}

DiscriminantData discriminant(const IntPolynomial& f) {
  DiscriminantData out;
  out.disc = discriminant_value(f);
  if (out.disc == 0) throw std::domain_error("not squarefree, cannot be irreducible");
  out.abs_disc = abs(out.disc);
  int d = f.degree();
  long e = static_cast<long>(d - 1) * (d - 2);
  if (e < 0) e = 0;
  mpz_class cpow = pow_z(abs(f.lc()), static_cast<unsigned long>(e));
  out.weighted_disc = cpow * out.abs_disc;
  mpz_sqrt(out.sqrt_weighted_floor.get_mpz_t(), out.weighted_disc.get_mpz_t());
  return out;
}

XInterval DiscriminantData::m_f(Prec p) const {
  XInterval root = sqrt_(XInterval::point_mpz(weighted_disc, p));
  return max_(XInterval::point_long(2, p), root);
}

XInterval DiscriminantData::log_m_f(Prec p) const { return log_(m_f(p)); }

namespace {

bool fp_irreducible(const fp::Poly& f, std::uint64_t p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return false;
  if (d == 1) return true;
  fp::Poly x{0, 1};
  mpz_class pz(static_cast<unsigned long>(p)), pd;
  mpz_pow_ui(pd.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(d));
  // x^{p^d} == x mod f
  fp::Poly diff = fp::powmod_poly(x, pd, f, p);
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  fp::trim(diff);
  if (!diff.empty()) return false;
  // gcd(x^{p^{d/q}} - x, f) = 1 for each prime q | d
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool qprime = true;
    for (int r = 2; r * r <= q; ++r)
      if (q % r == 0) qprime = false;
    if (!qprime) continue;
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(d / q));
    fp::Poly dd = fp::powmod_poly(x, pe, f, p);
    if (dd.size() < 2) dd.resize(2, 0);
    dd[1] = (dd[1] + p - 1) % p;
    fp::trim(dd);
    if (fp::gcd(f, dd, p).size() != 1) return false;
  }
  return true;
}

bool has_rational_root(const IntPolynomial& f) {
  // roots r/s with r | a0, s | lc (both positive divisor scans)
  const mpz_class a0 = f.coeff(0);
  if (a0 == 0) return true;  // root 0
  mpz_class A = abs(a0), C = abs(f.lc());
  std::vector<mpz_class> rdivs, sdivs;
  for (mpz_class r = 1; r * r <= A; ++r) {
    if (A % r == 0) {
      rdivs.push_back(r);
      rdivs.push_back(A / r);
    }
    if (r > 100000) break;  // inputs here are small; cap the scan
  }
  for (mpz_class s = 1; s * s <= C; ++s) {
    if (C % s == 0) {
      sdivs.push_back(s);
      sdivs.push_back(C / s);
    }
    if (s > 100000) break;
  }
  for (const auto& r : rdivs)
    for (const auto& s : sdivs) {
      if (gcd(r, s) != 1) continue;
      // f(±r/s) = 0  <=>  sum a_j (±r)^j s^(d-j) = 0
      for (int sg = -1; sg <= 1; sg += 2) {
        mpz_class acc = 0, rp = 1;
        int d = f.degree();
        std::vector<mpz_class> spow(static_cast<size_t>(d) + 1);
        spow[0] = 1;
        for (int j = 1; j <= d; ++j) spow[static_cast<size_t>(j)] = spow[j - 1] * s;
        for (int j = 0; j <= d; ++j) {
          acc += f.coeff(j) * rp * spow[static_cast<size_t>(d - j)];
          rp *= sg * r;
        }
        if (acc == 0) return true;
      }
    }
  return false;
}

}  // namespace

IrreducibilityCertificate irreducibility_certificate(const IntPolynomial& f, long prime_budget) {
  if (f.is_zero() || f.degree() < 1) throw std::invalid_argument("need degree >= 1");
  mpz_class cont = f.content();
  if (cont > 1)
    return {IrredStatus::DisprovenReducible, "content " + cont.get_str() + " > 1"};
  if (f.degree() == 1) return {IrredStatus::Proven, "degree 1, primitive"};
  mpz_class D = discriminant_value(f);
  if (D == 0) return {IrredStatus::DisprovenReducible, "discriminant 0 (not squarefree)"};
  if (has_rational_root(f))
    return {IrredStatus::DisprovenReducible, "rational root"};
  mpz_class bad = abs(f.lc() * D);
  for (long p = 2; p <= prime_budget; ++p) {
    bool prime = p >= 2;
    for (long r = 2; r * r <= p; ++r)
      if (p % r == 0) prime = false;
    if (!prime) continue;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    fp::Poly fbar = fp::reduce(f, static_cast<std::uint64_t>(p));
    if (fp_irreducible(fbar, static_cast<std::uint64_t>(p)))
      return {IrredStatus::Proven, "irreducible mod " + std::to_string(p)};
  }
  return {IrredStatus::Unproven,
          "no witness prime <= " + std::to_string(prime_budget) + " (certificate inconclusive)"};
}

std::optional<mpz_class> fixed_divisor_check(const IntPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");
  std::vector<mpz_class> candidates;
  for (long p = 2; p <= f.degree(); ++p) {
    bool prime = true;
    for (long r = 2; r * r <= p; ++r)
      if (p % r == 0) prime = false;
    if (prime) candidates.emplace_back(p);
  }
  mpz_class cont = f.content();
  if (cont > 1) {
    mpz_class rem = cont;
    for (mpz_class t = 2; t * t <= rem && t < 1000000; ++t)
      while (rem % t == 0) {
        candidates.push_back(t);
        rem /= t;
      }
    if (rem > 1) {
      if (mpz_probab_prime_p(rem.get_mpz_t(), 40) == 0)
        throw std::runtime_error("content has a large composite factor; unsupported");
      candidates.push_back(rem);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& p : candidates) {
    if (cont % p == 0) return p;  // all coefficients vanish mod p
    bool all_zero = true;
    for (mpz_class n = 0; n < p; ++n)
      if (f.eval(n) % p != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return p;
  }
  return std::nullopt;
}

}  // namespace xsieve
