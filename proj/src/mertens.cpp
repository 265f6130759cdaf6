#include "xsieve/mertens.hpp"

#include <stdexcept>

#include "xsieve/modarith.hpp"

namespace xsieve {

XInterval mertens_bar(const mpz_class& x_floor, Prec p) {
  if (x_floor < 0) throw std::invalid_argument("mertens_bar: negative cutoff");
  if (x_floor > mpz_class("10000000000"))
    throw std::invalid_argument("mertens_bar: cutoff above direct-summation limit 1e10");
  ensure_mpfr_range();
  std::uint64_t cutoff = x_floor.fits_ulong_p() ? x_floor.get_ui() : 0;
  Mpfr lo(p.bits), hi(p.bits), t(p.bits);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  if (cutoff >= 2) {
    for_each_prime(2, cutoff, [&](std::uint64_t q) {
      mpfr_log_ui(t.get(), static_cast<unsigned long>(q), MPFR_RNDD);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(q), MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_log_ui(t.get(), static_cast<unsigned long>(q), MPFR_RNDU);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(q), MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    });
  }
  return interval_from_mpfr_values(lo.get(), hi.get(), p);
}

const XInterval& MertensCache::mbar(const mpz_class& x_floor) {
  auto it = cache_.find(x_floor);
  if (it == cache_.end()) it = cache_.emplace(x_floor, mertens_bar(x_floor, prec_)).first;
  return it->second;
}

VProduct v_product(std::uint64_t z, Prec p) {
  VProduct out{std::nullopt, XInterval::point_long(1, p), false, std::nullopt};
  ensure_mpfr_range();
  Mpfr lo(p.bits), hi(p.bits);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  std::vector<mpz_class> nums, dens;  // balanced product of (p-1) and p
  bool exact_mode = z <= kVProductExactCap;
  out.exact_overflowed = !exact_mode;
  if (z > 2) {
    for_each_prime(2, z - 1, [&](std::uint64_t q) {
      mpfr_mul_ui(lo.get(), lo.get(), static_cast<unsigned long>(q - 1), MPFR_RNDD);
      mpfr_div_ui(lo.get(), lo.get(), static_cast<unsigned long>(q), MPFR_RNDD);
      mpfr_mul_ui(hi.get(), hi.get(), static_cast<unsigned long>(q - 1), MPFR_RNDU);
      mpfr_div_ui(hi.get(), hi.get(), static_cast<unsigned long>(q), MPFR_RNDU);
      if (exact_mode) {
        nums.emplace_back(static_cast<unsigned long>(q - 1));
        dens.emplace_back(static_cast<unsigned long>(q));
      }
    });
  }
  out.enclosure = interval_from_mpfr_values(lo.get(), hi.get(), p);
  if (exact_mode) {
    auto tree = [](std::vector<mpz_class> v) {
      if (v.empty()) return mpz_class(1);
      while (v.size() > 1) {
        std::vector<mpz_class> next;
        for (size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] * v[i + 1]);
        if (v.size() & 1) next.push_back(v.back());
        v = std::move(next);
      }
      return v[0];
    };
    mpq_class q(tree(std::move(nums)), tree(std::move(dens)));
    q.canonicalize();
    out.exact = q;
  }
  if (z >= 285) {
    XInterval zi = XInterval::point_mpz(mpz_class(static_cast<unsigned long>(z)), p);
    XInterval logz = log_(zi);
    XInterval expr = abs_(out.enclosure * exp_(XInterval::euler_gamma(p)) * logz - 1);
    XInterval bound = inv(logz * logz);
    out.envelope_ok = (lt(expr, bound) == Trilean::True);
  }
  return out;
}

std::vector<XInterval> prime_prefix_sums(
    const std::vector<std::uint64_t>& points, Prec prec,
    const std::function<void(std::uint64_t, mpfr_ptr, mpfr_rnd_t)>& term) {
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i] < points[i - 1]) throw std::invalid_argument("points must be ascending");
  std::vector<XInterval> out;
  if (points.empty()) return out;
  ensure_mpfr_range();
  Mpfr lo(prec.bits), hi(prec.bits), t(prec.bits);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  size_t next = 0;
  std::uint64_t zmax = points.back();
  for_each_prime(2, zmax == 0 ? 0 : zmax - 1, [&](std::uint64_t q) {
    while (next < points.size() && q >= points[next]) {
      out.push_back(interval_from_mpfr_values(lo.get(), hi.get(), prec));
      ++next;
    }
    term(q, t.get(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    term(q, t.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  });
  while (next < points.size()) {
    out.push_back(interval_from_mpfr_values(lo.get(), hi.get(), prec));
    ++next;
  }
  return out;
}

std::vector<EnvelopeSample> v_envelope_sweep(const std::vector<std::uint64_t>& zs, Prec p) {
  std::vector<EnvelopeSample> out;
  if (zs.empty()) return out;
  ensure_mpfr_range();
  Mpfr lo(p.bits), hi(p.bits);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  XInterval egamma = exp_(XInterval::euler_gamma(p));
  size_t next = 0;
  auto emit = [&](std::uint64_t z) {
    XInterval v = interval_from_mpfr_values(lo.get(), hi.get(), p);
    XInterval logz = log_(XInterval::point_mpz(mpz_class(static_cast<unsigned long>(z)), p));
    XInterval expr = abs_(v * egamma * logz - 1);
    XInterval bound = inv(logz * logz);
    out.push_back({z, lt(expr, bound) == Trilean::True, expr.hi().to_double(),
                   bound.lo().to_double()});
  };
  for_each_prime(2, zs.back() - 1, [&](std::uint64_t q) {
    while (next < zs.size() && q >= zs[next]) emit(zs[next++]);
    mpfr_mul_ui(lo.get(), lo.get(), static_cast<unsigned long>(q - 1), MPFR_RNDD);
    mpfr_div_ui(lo.get(), lo.get(), static_cast<unsigned long>(q), MPFR_RNDD);
    mpfr_mul_ui(hi.get(), hi.get(), static_cast<unsigned long>(q - 1), MPFR_RNDU);
    mpfr_div_ui(hi.get(), hi.get(), static_cast<unsigned long>(q), MPFR_RNDU);
  });
  while (next < zs.size()) emit(zs[next++]);
  return out;
}

}  // namespace xsieve
