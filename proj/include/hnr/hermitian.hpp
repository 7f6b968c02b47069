#pragma once

// Hermitian form <u, v> = sum u_i^q v_i on F_{q^2}^n, matrices, and the level
// sets C_n(k) = {u : <u, u> = k} of the form (optionally restricted to F_q^n).

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hnr/errors.hpp"
#include "hnr/fields.hpp"

namespace hnr {

using Vector = std::vector<Elem>;

// Square n x n matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  Matrix(std::size_t n, std::vector<Elem> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw InputError("matrix needs n*n entries");
  }

  static Matrix identity(std::size_t n) { return scalar(n, Elem{1}); }

  static Matrix scalar(std::size_t n, Elem c) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  static Matrix diagonal(std::span<const Elem> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t n() const { return n_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const Elem> entries() const { return a_; }

  bool is_scalar() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j ? a_[i * n_ + j] != a_[0] : a_[i * n_ + j].enc != 0) return false;
      }
    }
    return true;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && a_[i * n_ + j].enc != 0) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> a_;
};

inline Elem inner(const FieldCtx& ctx, std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw InputError("inner: vector length mismatch");
  Elem s = ctx.zero();
  for (std::size_t i = 0; i < u.size(); ++i) s = ctx.add(s, ctx.mul(ctx.frobenius(u[i]), v[i]));
  return s;
}

inline Vector apply(const FieldCtx& ctx, const Matrix& m, std::span<const Elem> u) {
  if (u.size() != m.n()) throw InputError("apply: dimension mismatch");
  Vector out(m.n(), ctx.zero());
  for (std::size_t i = 0; i < m.n(); ++i) {
    Elem s = ctx.zero();
    for (std::size_t j = 0; j < m.n(); ++j) s = ctx.add(s, ctx.mul(m(i, j), u[j]));
    out[i] = s;
  }
  return out;
}

// <u, M u> without materializing M u.
inline Elem form_value(const FieldCtx& ctx, const Matrix& m, std::span<const Elem> u) {
  Elem s = ctx.zero();
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (u[i].enc == 0) continue;
    Elem row = ctx.zero();
    for (std::size_t j = 0; j < m.n(); ++j) row = ctx.add(row, ctx.mul(m(i, j), u[j]));
    s = ctx.add(s, ctx.mul(ctx.frobenius(u[i]), row));
  }
  return s;
}

inline Matrix multiply(const FieldCtx& ctx, const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw InputError("multiply: dimension mismatch");
  const std::size_t n = a.n();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem s = ctx.zero();
      for (std::size_t l = 0; l < n; ++l) s = ctx.add(s, ctx.mul(a(i, l), b(l, j)));
      c(i, j) = s;
    }
  }
  return c;
}

// Conjugate transpose: (M^dagger)_{ij} = m_{ji}^q.
inline Matrix dagger(const FieldCtx& ctx, const Matrix& m) {
  Matrix d(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) d(i, j) = ctx.frobenius(m(j, i));
  }
  return d;
}

inline bool is_unitary(const FieldCtx& ctx, const Matrix& u) {
  return multiply(ctx, dagger(ctx, u), u) == Matrix::identity(u.n());
}

// U^dagger M U.
inline Matrix conj_by_unitary(const FieldCtx& ctx, const Matrix& m, const Matrix& u) {
  if (m.n() != u.n()) throw InputError("conj_by_unitary: dimension mismatch");
  if (!is_unitary(ctx, u)) throw InputError("conj_by_unitary: matrix is not unitary");
  return multiply(ctx, dagger(ctx, u), multiply(ctx, m, u));
}

inline bool has_subfield_coeffs(const FieldCtx& ctx, const Matrix& m) {
  for (Elem e : m.entries()) {
    if (!ctx.in_subfield(e)) return false;
  }
  return true;
}

enum class ConeMode { full_field, subfield };

// {u : <u, u> = k}, over F_{q^2}^n (full_field) or F_q^n (subfield).
struct ConeSlice {
  std::size_t n = 2;
  Elem k{};
  ConeMode mode = ConeMode::full_field;
  bool exclude_zero = false;
};

inline void validate_slice(const FieldCtx& ctx, const ConeSlice& s) {
  if (s.n < 1) throw InputError("cone dimension must be at least 1");
  if (!ctx.in_subfield(s.k)) throw InputError("cone level k must lie in F_q");
  if (s.exclude_zero && s.k.enc != 0) throw InputError("exclude_zero requires k = 0");
}

// Size of the ambient space F_{q^2}^n or F_q^n (saturating).
inline std::uint64_t ambient_size(const FieldCtx& ctx, const ConeSlice& s) {
  const std::uint64_t base = s.mode == ConeMode::full_field ? ctx.q2() : ctx.q();
  return detail::ipow_sat(base, s.n);
}

// Number of prefixes (u_1, ..., u_{n-1}) the enumerator walks.
inline std::uint64_t prefix_count(const FieldCtx& ctx, const ConeSlice& s) {
  const std::uint64_t base = s.mode == ConeMode::full_field ? ctx.q2() : ctx.q();
  return detail::ipow_sat(base, s.n - 1);
}

namespace detail {

// The values of the last coordinate completing a prefix whose partial sum of
// <u_i, u_i> is `partial`: norm preimages (full field) or square roots in F_q.
class Completions {
 public:
  Completions(const FieldCtx& ctx, ConeMode mode) : ctx_(ctx), mode_(mode) {
    if (!ctx.has_tables()) {
      cache_.resize(ctx.q());
      for (std::uint32_t a = 0; a < ctx.q(); ++a) {
        cache_[a] = mode == ConeMode::full_field ? ctx.norm_preimages(Elem{a})
                                                 : ctx.sqrt_subfield(Elem{a});
      }
    }
  }

  std::span<const Elem> operator()(Elem target) const {
    if (!cache_.empty()) return cache_[target.enc];
    if (mode_ == ConeMode::full_field) return ctx_.norm_fiber(target);
    return ctx_.sqrt_fiber(target);
  }

 private:
  const FieldCtx& ctx_;
  ConeMode mode_;
  std::vector<std::vector<Elem>> cache_;
};

inline Elem self_norm(const FieldCtx& ctx, ConeMode mode, Elem x) {
  return mode == ConeMode::full_field ? ctx.norm(x) : ctx.mul(x, x);
}

}  // namespace detail

// Calls visit(span<const Elem>) for every cone vector whose prefix index lies
// in [begin, end), in lexicographic order of encodings (first coordinate most
// significant).  The prefix space is F^(n-1) for F the coordinate field.
template <class Visit>
void for_each_cone_vector(const FieldCtx& ctx, const ConeSlice& s, Visit&& visit,
                          std::uint64_t begin = 0,
                          std::uint64_t end = std::numeric_limits<std::uint64_t>::max()) {
  validate_slice(ctx, s);
  const std::uint32_t base = s.mode == ConeMode::full_field ? ctx.q2() : ctx.q();
  const std::uint64_t total = prefix_count(ctx, s);
  end = std::min(end, total);
  if (begin >= end) return;
  const detail::Completions complete(ctx, s.mode);
  const std::size_t lead = s.n - 1;

  Vector u(s.n, ctx.zero());
  std::uint64_t rest = begin;
  for (std::size_t i = lead; i-- > 0;) {
    u[i] = Elem{static_cast<std::uint32_t>(rest % base)};
    rest /= base;
  }

  for (std::uint64_t idx = begin; idx < end; ++idx) {
    Elem partial = ctx.zero();
    bool prefix_zero = true;
    for (std::size_t i = 0; i < lead; ++i) {
      partial = ctx.add(partial, detail::self_norm(ctx, s.mode, u[i]));
      prefix_zero = prefix_zero && u[i].enc == 0;
    }
    for (Elem last : complete(ctx.sub(s.k, partial))) {
      if (s.exclude_zero && prefix_zero && last.enc == 0) continue;
      u[lead] = last;
      visit(std::span<const Elem>(u));
    }
    for (std::size_t i = lead; i-- > 0;) {
      if (++u[i].enc < base) break;
      u[i].enc = 0;
    }
  }
}

// Materialized enumeration.  Throws CapacityError if the ambient space exceeds
// `capacity`.
inline std::vector<Vector> enumerate_cone(const FieldCtx& ctx, const ConeSlice& s,
                                          std::uint64_t capacity = std::uint64_t{1} << 24) {
  validate_slice(ctx, s);
  if (ambient_size(ctx, s) > capacity) {
    throw CapacityError("cone enumeration over " + std::to_string(ambient_size(ctx, s)) +
                        " vectors exceeds capacity " + std::to_string(capacity));
  }
  std::vector<Vector> out;
  for_each_cone_vector(ctx, s, [&](std::span<const Elem> u) { out.emplace_back(u.begin(), u.end()); });
  return out;
}

// Random cone vectors: a uniform prefix completed by a uniformly chosen
// admissible last coordinate.  Prefixes with no completion are skipped, so at
// most `budget` vectors are produced.
template <class Visit>
void sample_cone(const FieldCtx& ctx, const ConeSlice& s, std::uint64_t budget,
                 std::mt19937_64& rng, Visit&& visit) {
  validate_slice(ctx, s);
  const std::uint32_t base = s.mode == ConeMode::full_field ? ctx.q2() : ctx.q();
  const detail::Completions complete(ctx, s.mode);
  std::uniform_int_distribution<std::uint32_t> coord(0, base - 1);
  Vector u(s.n, ctx.zero());
  for (std::uint64_t draw = 0; draw < budget; ++draw) {
    Elem partial = ctx.zero();
    bool prefix_zero = true;
    for (std::size_t i = 0; i + 1 < s.n; ++i) {
      u[i] = Elem{coord(rng)};
      partial = ctx.add(partial, detail::self_norm(ctx, s.mode, u[i]));
      prefix_zero = prefix_zero && u[i].enc == 0;
    }
    const auto options = complete(ctx.sub(s.k, partial));
    if (options.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    u.back() = options[pick(rng)];
    if (s.exclude_zero && prefix_zero && u.back().enc == 0) continue;
    visit(std::span<const Elem>(u));
  }
}

}  // namespace hnr
