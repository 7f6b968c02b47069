#pragma once

// Field tower F_p ⊂ F_q ⊂ F_{q^2}.
//
// F_q = F_p[x]/(f) with f monic of degree m, and F_{q^2} = F_q[y]/(y^2 + e1 y + e0).
// An element lo + hi*y is encoded as enc = enc_q(lo) + q * enc_q(hi), where
// enc_q(sum a_i x^i) = sum a_i p^i.  Hence F_q is exactly the encodings below q,
// enc(0) = 0 and enc(1) = 1.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hnr/errors.hpp"

namespace hnr {

struct Elem {
  std::uint32_t enc = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

// Polynomial over F_p, coefficients listed low degree first.
using PolyFp = std::vector<std::uint32_t>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// b^e, saturating at uint64 max.
inline std::uint64_t ipow_sat(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= b;
  }
  return r;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyFp poly_sub(PolyFp a, const PolyFp& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline PolyFp poly_mul(const PolyFp& a, const PolyFp& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

// a mod f for any nonzero f.
inline PolyFp poly_mod(PolyFp a, const PolyFp& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * f[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

inline PolyFp poly_powmod(PolyFp base, std::uint64_t e, const PolyFp& f, std::uint32_t p) {
  PolyFp r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyFp r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test for a monic f of degree m over F_p.
inline bool is_irreducible(const PolyFp& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  const PolyFp x{0, 1};
  std::vector<PolyFp> frob(m + 1);  // frob[i] = x^(p^i) mod f
  frob[0] = poly_mod(x, f, p);
  for (std::size_t i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (frob[m] != poly_mod(x, f, p)) return false;
  for (auto r : prime_factors(m)) {
    PolyFp g = poly_gcd(f, poly_sub(frob[m / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// F_q = F_p[x]/(f) on integer encodings.  Only the slow, table-free
// operations; FieldCtx layers tables on top.
struct BaseField {
  std::uint32_t p;
  unsigned m;
  std::uint32_t q;
  PolyFp modulus;

  PolyFp to_poly(std::uint32_t a) const {
    PolyFp r(m, 0);
    for (unsigned i = 0; i < m; ++i) {
      r[i] = a % p;
      a /= p;
    }
    trim(r);
    return r;
  }

  std::uint32_t from_poly(const PolyFp& poly) const {
    std::uint32_t r = 0;
    for (std::size_t i = poly.size(); i-- > 0;) r = r * p + poly[i];
    return r;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < m; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p == 2) return a;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < m; ++i) {
      r += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    return r;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (m == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    return from_poly(poly_mod(poly_mul(to_poly(a), to_poly(b), p), modulus, p));
  }
};

}  // namespace detail

// Description of the tower.  ext_modulus holds y^2 + e1*y + e0 as {e0, e1, 1},
// each coefficient an element of F_q written as m digits over F_p.
struct FieldSpec {
  std::uint32_t p = 2;
  unsigned m = 1;
  PolyFp base_modulus;
  std::array<PolyFp, 3> ext_modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline void check_tower_size(std::uint64_t p, unsigned m) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + std::to_string(p));
  if (m < 1) throw InputError("extension degree m must be at least 1");
  if (ipow_sat(p, 2ull * m) > (std::uint64_t{1} << 31)) {
    throw InputError("field too large: p^(2m) must not exceed 2^31");
  }
}

inline PolyFp fq_digits(std::uint32_t a, std::uint32_t p, unsigned m) {
  PolyFp r(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    r[i] = a % p;
    a /= p;
  }
  return r;
}

inline bool quadratic_has_root(const BaseField& fq, std::uint32_t e0, std::uint32_t e1) {
  for (std::uint32_t t = 0; t < fq.q; ++t) {
    if (fq.add(fq.add(fq.mul(t, t), fq.mul(e1, t)), e0) == 0) return true;
  }
  return false;
}

}  // namespace detail

// Smallest monic irreducible moduli, comparing coefficient lists
// lexicographically from the constant term upwards.
inline FieldSpec canonical_field_spec(std::uint32_t p, unsigned m) {
  detail::check_tower_size(p, m);
  FieldSpec spec;
  spec.p = p;
  spec.m = m;
  const auto q = static_cast<std::uint32_t>(detail::ipow_sat(p, m));

  // idx enumerates (c0, ..., c_{m-1}) with c0 the most significant digit.
  for (std::uint32_t idx = 0; idx < q; ++idx) {
    PolyFp f(m + 1, 0);
    std::uint32_t rest = idx;
    for (unsigned i = m; i-- > 0;) {
      f[i] = rest % p;
      rest /= p;
    }
    f[m] = 1;
    if (detail::is_irreducible(f, p)) {
      spec.base_modulus = std::move(f);
      break;
    }
  }

  const detail::BaseField fq{p, m, q, spec.base_modulus};
  for (std::uint64_t idx = 0; idx < std::uint64_t{q} * q; ++idx) {
    const auto e0 = static_cast<std::uint32_t>(idx / q);
    const auto e1 = static_cast<std::uint32_t>(idx % q);
    if (!detail::quadratic_has_root(fq, e0, e1)) {
      spec.ext_modulus = {detail::fq_digits(e0, p, m), detail::fq_digits(e1, p, m),
                          detail::fq_digits(1, p, m)};
      break;
    }
  }
  return spec;
}

struct FieldOptions {
  // Log/antilog, addition and fiber tables are built when q^2 is at most this.
  std::uint64_t table_threshold = std::uint64_t{1} << 20;
};

class FieldCtx {
 public:
  explicit FieldCtx(FieldSpec spec, FieldOptions opts = {}) : spec_(std::move(spec)) {
    validate();
    const auto q = static_cast<std::uint32_t>(detail::ipow_sat(spec_.p, spec_.m));
    base_ = detail::BaseField{spec_.p, spec_.m, q, spec_.base_modulus};
    q_ = q;
    q2_ = q * q;
    e0_ = from_digits(spec_.ext_modulus[0]);
    e1_ = from_digits(spec_.ext_modulus[1]);
    find_generator();
    if (q2_ <= opts.table_threshold) build_tables();
  }

  static FieldCtx build(std::uint32_t p, unsigned m, FieldOptions opts = {}) {
    return FieldCtx(canonical_field_spec(p, m), opts);
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  unsigned m() const { return spec_.m; }
  std::uint32_t q() const { return q_; }
  std::uint32_t q2() const { return q2_; }
  bool has_tables() const { return !log_.empty(); }
  bool q_even() const { return spec_.p == 2; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem generator() const { return generator_; }

  Elem element(std::uint64_t enc) const {
    if (enc >= q2_) {
      throw InputError("element encoding " + std::to_string(enc) + " out of range [0, " +
                       std::to_string(q2_) + ")");
    }
    return Elem{static_cast<std::uint32_t>(enc)};
  }

  bool contains(Elem x) const { return x.enc < q2_; }
  bool in_subfield(Elem x) const { return x.enc < q_; }

  // lo + hi*y with lo, hi in F_q.
  Elem compose(Elem lo, Elem hi) const { return Elem{lo.enc + q_ * hi.enc}; }
  Elem lo(Elem x) const { return Elem{x.enc % q_}; }
  Elem hi(Elem x) const { return Elem{x.enc / q_}; }

  // The 2m base-p digits of enc(x), least significant first.
  PolyFp digits(Elem x) const { return detail::fq_digits(x.enc, spec_.p, 2 * spec_.m); }

  Elem add(Elem a, Elem b) const {
    if (spec_.p == 2) return Elem{a.enc ^ b.enc};
    return compose(Elem{fq_add(a.enc % q_, b.enc % q_)}, Elem{fq_add(a.enc / q_, b.enc / q_)});
  }

  Elem neg(Elem a) const {
    if (spec_.p == 2) return a;
    return compose(Elem{fq_neg(a.enc % q_)}, Elem{fq_neg(a.enc / q_)});
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a.enc == 0 || b.enc == 0) return zero();
    if (!has_tables()) return slow_mul(a, b);
    return Elem{exp_[log_[a.enc] + log_[b.enc]]};
  }

  Elem inv(Elem a) const {
    if (a.enc == 0) throw ZeroDivisionError("inverse of zero");
    if (!has_tables()) return slow_pow(a, q2_ - 2);
    const std::uint32_t order = q2_ - 1;
    return Elem{exp_[(order - log_[a.enc]) % order]};
  }

  Elem div(Elem a, Elem b) const {
    if (b.enc == 0) throw ZeroDivisionError("division by zero");
    return mul(a, inv(b));
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.enc == 0) return zero();
    if (!has_tables()) return slow_pow(a, e);
    const std::uint64_t order = q2_ - 1;
    return Elem{exp_[static_cast<std::uint32_t>(std::uint64_t{log_[a.enc]} * (e % order) % order)]};
  }

  // x -> x^q, the nontrivial automorphism of F_{q^2} over F_q.
  Elem frobenius(Elem x) const { return pow(x, q_); }

  // x -> x^(q+1), landing in F_q.
  Elem norm(Elem x) const { return pow(x, std::uint64_t{q_} + 1); }

  // {t : t^(q+1) = a}, sorted by encoding.  q+1 elements for a != 0, {0} for a = 0.
  std::vector<Elem> norm_preimages(Elem a) const {
    require_subfield(a, "norm_preimages");
    if (has_tables()) {
      auto f = norm_fiber(a);
      return {f.begin(), f.end()};
    }
    return norm_preimages_via_generator(a);
  }

  // Same set computed from the generator: a = g^((q+1)j) gives
  // {g^(j + i(q-1)) : 0 <= i <= q}.
  std::vector<Elem> norm_preimages_via_generator(Elem a) const {
    require_subfield(a, "norm_preimages");
    if (a.enc == 0) return {zero()};
    const Elem h = pow(generator_, std::uint64_t{q_} + 1);  // generates F_q^*
    std::uint64_t j = 0;
    for (Elem cur = one(); cur != a; cur = mul(cur, h)) ++j;
    const Elem step = pow(generator_, q_ - 1);
    std::vector<Elem> out;
    out.reserve(q_ + 1);
    Elem t = pow(generator_, j);
    for (std::uint32_t i = 0; i <= q_; ++i) {
      out.push_back(t);
      t = mul(t, step);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Precomputed norm preimages; only available with tables.
  std::span<const Elem> norm_fiber(Elem a) const {
    return {norm_flat_.data() + norm_off_[a.enc], norm_off_[a.enc + 1] - norm_off_[a.enc]};
  }

  // Solutions of t^(q+1) = -1.
  std::vector<Elem> theta() const { return norm_preimages(neg(one())); }

  bool is_square(Elem a) const {
    require_subfield(a, "is_square");
    if (q_even() || a.enc == 0) return true;
    return pow(a, (q_ - 1) / 2) == one();
  }

  // Square roots of a inside F_q, sorted by encoding.  For even q the root is
  // unique; for odd q the result is {0}, {b, -b} or empty.
  std::vector<Elem> sqrt_subfield(Elem a) const {
    require_subfield(a, "sqrt_subfield");
    if (q_even()) return {pow(a, q_ / 2)};
    if (has_tables()) {
      auto f = sqrt_fiber(a);
      return {f.begin(), f.end()};
    }
    std::vector<Elem> out;
    for (std::uint32_t b = 0; b < q_; ++b) {
      if (mul(Elem{b}, Elem{b}) == a) out.push_back(Elem{b});
    }
    return out;
  }

  // Precomputed square roots within F_q; only available with tables.
  std::span<const Elem> sqrt_fiber(Elem a) const {
    return {sqrt_flat_.data() + sqrt_off_[a.enc], sqrt_off_[a.enc + 1] - sqrt_off_[a.enc]};
  }

  // Some (x1, x2) in F_q^2 with a1*x1^2 + a2*x2^2 = k.  Odd q only.
  std::pair<Elem, Elem> two_square_rep(Elem a1, Elem a2, Elem k) const {
    if (q_even()) throw InputError("two_square_rep requires odd q; use sqrt_subfield");
    require_subfield(a1, "two_square_rep");
    require_subfield(a2, "two_square_rep");
    require_subfield(k, "two_square_rep");
    if (a1.enc == 0 || a2.enc == 0) throw InputError("two_square_rep coefficients must be nonzero");
    if (k.enc == 0) return {zero(), zero()};
    for (std::uint32_t x = 0; x < q_; ++x) {
      const Elem x1{x};
      const Elem rest = div(sub(k, mul(a1, mul(x1, x1))), a2);
      if (!is_square(rest)) continue;
      const Elem x2 = sqrt_subfield(rest).front();
      if (add(mul(a1, mul(x1, x1)), mul(a2, mul(x2, x2))) != k) {
        throw std::logic_error("two_square_rep produced a non-solution");
      }
      return {x1, x2};
    }
    throw std::logic_error("two_square_rep found no solution");
  }

  // Human-readable polynomial form, e.g. "(x+1)y+2x".
  std::string to_string(Elem x) const {
    const std::string lo_s = fq_string(x.enc % q_);
    const std::uint32_t h = x.enc / q_;
    if (h == 0) return lo_s;
    std::string hi_s = fq_string(h);
    std::string term;
    if (hi_s == "1") {
      term = "y";
    } else if (hi_s.find('+') != std::string::npos) {
      term = "(" + hi_s + ")y";
    } else {
      term = hi_s + "y";
    }
    if (x.enc % q_ == 0) return term;
    return term + "+" + lo_s;
  }

  // Slow-path arithmetic, exposed so tests can cross-check the tables.
  Elem slow_mul(Elem a, Elem b) const {
    const std::uint32_t a0 = a.enc % q_, a1 = a.enc / q_;
    const std::uint32_t b0 = b.enc % q_, b1 = b.enc / q_;
    const std::uint32_t hh = base_.mul(a1, b1);
    // y^2 = -e1*y - e0
    const std::uint32_t c0 = base_.add(base_.mul(a0, b0), base_.neg(base_.mul(hh, e0_)));
    const std::uint32_t c1 = base_.add(base_.add(base_.mul(a0, b1), base_.mul(a1, b0)),
                                       base_.neg(base_.mul(hh, e1_)));
    return compose(Elem{c0}, Elem{c1});
  }

  Elem slow_pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  void require_subfield(Elem a, const char* what) const {
    if (!in_subfield(a)) {
      throw InputError(std::string(what) + ": element " + std::to_string(a.enc) +
                       " is not in F_q");
    }
  }

  std::uint32_t from_digits(const PolyFp& d) const {
    std::uint32_t r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = r * spec_.p + d[i];
    return r;
  }

  std::uint32_t fq_add(std::uint32_t a, std::uint32_t b) const {
    if (!fq_add_.empty()) return fq_add_[std::size_t{a} * q_ + b];
    return base_.add(a, b);
  }

  std::uint32_t fq_neg(std::uint32_t a) const {
    if (!fq_neg_.empty()) return fq_neg_[a];
    return base_.neg(a);
  }

  std::string fq_string(std::uint32_t a) const {
    if (a == 0) return "0";
    const PolyFp d = detail::fq_digits(a, spec_.p, spec_.m);
    std::string s;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (d[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(d[i]);
        continue;
      }
      if (d[i] != 1) s += std::to_string(d[i]);
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

  void validate() const {
    detail::check_tower_size(spec_.p, spec_.m);
    const FieldSpec canon = canonical_field_spec(spec_.p, spec_.m);
    const auto digits_ok = [&](const PolyFp& poly, std::size_t len) {
      return poly.size() == len &&
             std::all_of(poly.begin(), poly.end(), [&](auto c) { return c < spec_.p; });
    };
    if (!digits_ok(spec_.base_modulus, spec_.m + 1) || spec_.base_modulus.back() != 1) {
      throw InputError("base_modulus must be a monic degree-m polynomial over F_p");
    }
    for (const auto& c : spec_.ext_modulus) {
      if (!digits_ok(c, spec_.m)) {
        throw InputError("ext_modulus coefficients must be m digits over F_p");
      }
    }
    if (detail::fq_digits(1, spec_.p, spec_.m) != spec_.ext_modulus[2]) {
      throw InputError("ext_modulus must be monic");
    }
    if (!detail::is_irreducible(spec_.base_modulus, spec_.p)) {
      throw InputError("base_modulus is reducible over F_p");
    }
    if (spec_.base_modulus != canon.base_modulus) {
      throw InputError("base_modulus is not the canonical (smallest) irreducible");
    }
    const auto q = static_cast<std::uint32_t>(detail::ipow_sat(spec_.p, spec_.m));
    const detail::BaseField fq{spec_.p, spec_.m, q, spec_.base_modulus};
    if (detail::quadratic_has_root(fq, from_digits(spec_.ext_modulus[0]),
                                   from_digits(spec_.ext_modulus[1]))) {
      throw InputError("ext_modulus is reducible over F_q");
    }
    if (spec_.ext_modulus != canon.ext_modulus) {
      throw InputError("ext_modulus is not the canonical (smallest) irreducible");
    }
  }

  void find_generator() {
    const std::uint64_t order = q2_ - 1;
    const auto factors = detail::prime_factors(order);
    for (std::uint32_t c = 2; c < q2_; ++c) {
      const bool ok = std::all_of(factors.begin(), factors.end(), [&](auto r) {
        return slow_pow(Elem{c}, order / r) != one();
      });
      if (ok) {
        generator_ = Elem{c};
        return;
      }
    }
    throw std::logic_error("no generator of the multiplicative group found");
  }

  void build_tables() {
    const std::uint32_t order = q2_ - 1;
    exp_.assign(2 * std::size_t{order}, 0);
    log_.assign(q2_, 0);
    Elem cur = one();
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = exp_[i + order] = cur.enc;
      log_[cur.enc] = i;
      cur = slow_mul(cur, generator_);
    }
    if (spec_.p != 2) {
      fq_add_.resize(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) fq_add_[std::size_t{a} * q_ + b] = base_.add(a, b);
      }
      fq_neg_.resize(q_);
      for (std::uint32_t a = 0; a < q_; ++a) fq_neg_[a] = base_.neg(a);
    }

    // Bucket every element of F_{q^2} by its norm, and every element of F_q by
    // its square; scanning in encoding order keeps each bucket sorted.
    const auto bucket = [](std::uint32_t keys, std::uint32_t count, auto key_of,
                           std::vector<std::uint32_t>& off, std::vector<Elem>& flat) {
      off.assign(std::size_t{keys} + 1, 0);
      std::vector<std::uint32_t> key(count);
      for (std::uint32_t x = 0; x < count; ++x) {
        key[x] = key_of(Elem{x});
        ++off[key[x] + 1];
      }
      for (std::uint32_t i = 0; i < keys; ++i) off[i + 1] += off[i];
      flat.assign(count, Elem{});
      std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
      for (std::uint32_t x = 0; x < count; ++x) flat[fill[key[x]]++] = Elem{x};
    };
    bucket(q_, q2_, [&](Elem x) { return norm(x).enc; }, norm_off_, norm_flat_);
    bucket(q_, q_, [&](Elem x) { return mul(x, x).enc; }, sqrt_off_, sqrt_flat_);
  }

  FieldSpec spec_;
  detail::BaseField base_{};
  std::uint32_t q_ = 0;
  std::uint32_t q2_ = 0;
  std::uint32_t e0_ = 0;
  std::uint32_t e1_ = 0;
  Elem generator_{};

  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> fq_add_;
  std::vector<std::uint32_t> fq_neg_;
  std::vector<std::uint32_t> norm_off_;
  std::vector<Elem> norm_flat_;
  std::vector<std::uint32_t> sqrt_off_;
  std::vector<Elem> sqrt_flat_;
};

}  // namespace hnr
