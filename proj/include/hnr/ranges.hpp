#pragma once

// Brute-force range sets: Num_k(M), Num'_0(M) and their F_q-coefficient
// variants, fibers of u -> <u, M u> on the isotropic vectors of F_q^n.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hnr/errors.hpp"
#include "hnr/fields.hpp"
#include "hnr/hermitian.hpp"

namespace hnr {

enum class RangeKind { num_k, num0_prime, num_k_subfield, num0_prime_subfield };
enum class RangeMode { exhaustive, sampled };

inline std::string_view to_string(RangeKind kind) {
  switch (kind) {
    case RangeKind::num_k: return "num_k";
    case RangeKind::num0_prime: return "num0_prime";
    case RangeKind::num_k_subfield: return "num_k_subfield";
    case RangeKind::num0_prime_subfield: return "num0_prime_subfield";
  }
  return "?";
}

inline std::string_view to_string(RangeMode mode) {
  return mode == RangeMode::exhaustive ? "exhaustive" : "sampled";
}

inline RangeKind parse_range_kind(std::string_view s) {
  for (auto kind : {RangeKind::num_k, RangeKind::num0_prime, RangeKind::num_k_subfield,
                    RangeKind::num0_prime_subfield}) {
    if (to_string(kind) == s) return kind;
  }
  throw InputError("unknown range kind '" + std::string(s) + "'");
}

inline bool is_subfield_kind(RangeKind kind) {
  return kind == RangeKind::num_k_subfield || kind == RangeKind::num0_prime_subfield;
}

inline bool is_punctured_kind(RangeKind kind) {
  return kind == RangeKind::num0_prime || kind == RangeKind::num0_prime_subfield;
}

struct RangeSet {
  RangeKind kind = RangeKind::num_k;
  Elem k{};
  std::vector<Elem> values;  // sorted by encoding
  RangeMode mode = RangeMode::exhaustive;
  std::uint64_t witness_count = 0;

  bool exhaustive() const { return mode == RangeMode::exhaustive; }
  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool contains(Elem x) const { return std::binary_search(values.begin(), values.end(), x); }
};

struct FiberCount {
  Elem value{};
  std::uint64_t count = 0;

  friend bool operator==(const FiberCount&, const FiberCount&) = default;
};

struct RangeOptions {
  std::uint64_t capacity = std::uint64_t{1} << 24;
  std::optional<std::uint64_t> sample_budget;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

inline std::vector<Elem> sorted_unique(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline ConeSlice slice_for(RangeKind kind, std::size_t n, Elem k) {
  switch (kind) {
    case RangeKind::num_k: return {n, k, ConeMode::full_field, false};
    case RangeKind::num0_prime: return {n, Elem{0}, ConeMode::full_field, true};
    case RangeKind::num_k_subfield: return {n, k, ConeMode::subfield, false};
    case RangeKind::num0_prime_subfield: return {n, Elem{0}, ConeMode::subfield, true};
  }
  return {};
}

namespace detail {

inline void check_range_request(const FieldCtx& ctx, const Matrix& m, RangeKind kind, Elem k) {
  if (m.n() < 1) throw InputError("matrix must be at least 1x1");
  for (Elem e : m.entries()) {
    if (!ctx.contains(e)) throw InputError("matrix entry outside the field");
  }
  if (!ctx.in_subfield(k)) throw InputError("k must lie in F_q");
  if (is_punctured_kind(kind) && m.n() < 2) {
    throw InputError("the punctured null-range is only defined for n >= 2");
  }
  if (is_punctured_kind(kind) && k.enc != 0) {
    throw InputError("the punctured null-range has k = 0");
  }
  if (is_subfield_kind(kind) && !has_subfield_coeffs(ctx, m)) {
    throw InputError("subfield ranges need a matrix with entries in F_q");
  }
}

inline std::vector<Elem> bitmap_values(std::span<const std::uint8_t> seen) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(Elem{static_cast<std::uint32_t>(i)});
  }
  return out;
}

}  // namespace detail

inline RangeSet compute_range(const FieldCtx& ctx, const Matrix& m, RangeKind kind, Elem k,
                              const RangeOptions& opts = {}) {
  detail::check_range_request(ctx, m, kind, k);
  const ConeSlice slice = slice_for(kind, m.n(), k);
  RangeSet out{kind, slice.k, {}, RangeMode::exhaustive, 0};

  if (ambient_size(ctx, slice) > opts.capacity) {
    if (!opts.sample_budget) {
      throw CapacityError("exhaustive " + std::string(to_string(kind)) + " needs " +
                          std::to_string(ambient_size(ctx, slice)) +
                          " candidate vectors; capacity is " + std::to_string(opts.capacity));
    }
    std::mt19937_64 rng(opts.seed);
    std::vector<std::uint8_t> seen(ctx.q2(), 0);
    sample_cone(ctx, slice, *opts.sample_budget, rng, [&](std::span<const Elem> u) {
      seen[form_value(ctx, m, u).enc] = 1;
      ++out.witness_count;
    });
    out.values = detail::bitmap_values(seen);
    out.mode = RangeMode::sampled;
    return out;
  }

  const std::uint64_t prefixes = prefix_count(ctx, slice);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(opts.workers, 1, std::max<std::uint64_t>(prefixes, 1)));
  std::vector<std::vector<std::uint8_t>> seen(workers, std::vector<std::uint8_t>(ctx.q2(), 0));
  std::vector<std::uint64_t> counts(workers, 0);
  const auto run = [&](unsigned w) {
    const std::uint64_t begin = prefixes * w / workers;
    const std::uint64_t end = prefixes * (w + 1) / workers;
    for_each_cone_vector(
        ctx, slice,
        [&](std::span<const Elem> u) {
          seen[w][form_value(ctx, m, u).enc] = 1;
          ++counts[w];
        },
        begin, end);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (unsigned w = 1; w < workers; ++w) {
    for (std::size_t i = 0; i < seen[0].size(); ++i) seen[0][i] |= seen[w][i];
  }
  for (auto c : counts) out.witness_count += c;
  out.values = detail::bitmap_values(seen[0]);
  return out;
}

inline RangeSet num_k(const FieldCtx& ctx, const Matrix& m, Elem k, const RangeOptions& opts = {}) {
  return compute_range(ctx, m, RangeKind::num_k, k, opts);
}

inline RangeSet num0_prime(const FieldCtx& ctx, const Matrix& m, const RangeOptions& opts = {}) {
  return compute_range(ctx, m, RangeKind::num0_prime, Elem{0}, opts);
}

inline RangeSet num_k_subfield(const FieldCtx& ctx, const Matrix& m, Elem k,
                               const RangeOptions& opts = {}) {
  return compute_range(ctx, m, RangeKind::num_k_subfield, k, opts);
}

inline RangeSet num0_prime_subfield(const FieldCtx& ctx, const Matrix& m,
                                    const RangeOptions& opts = {}) {
  return compute_range(ctx, m, RangeKind::num0_prime_subfield, Elem{0}, opts);
}

// Fibers of u -> <u, M u> over B_n = {u in F_q^n : <u, u> = 0}, zero vector
// included.  Only values with a nonzero count are listed, sorted by encoding.
inline std::vector<FiberCount> fiber_table(const FieldCtx& ctx, const Matrix& m,
                                           const RangeOptions& opts = {}) {
  detail::check_range_request(ctx, m, RangeKind::num_k_subfield, Elem{0});
  const ConeSlice slice{m.n(), Elem{0}, ConeMode::subfield, false};
  if (ambient_size(ctx, slice) > opts.capacity) {
    throw CapacityError("fiber counting over " + std::to_string(ambient_size(ctx, slice)) +
                        " vectors exceeds capacity " + std::to_string(opts.capacity));
  }
  std::vector<std::uint64_t> counts(ctx.q(), 0);
  for_each_cone_vector(ctx, slice, [&](std::span<const Elem> u) { ++counts[form_value(ctx, m, u).enc]; });
  std::vector<FiberCount> out;
  for (std::uint32_t a = 0; a < ctx.q(); ++a) {
    if (counts[a]) out.push_back({Elem{a}, counts[a]});
  }
  return out;
}

inline FiberCount fiber_count(const FieldCtx& ctx, const Matrix& m, Elem a,
                              const RangeOptions& opts = {}) {
  if (!ctx.in_subfield(a)) throw InputError("fiber value must lie in F_q");
  for (const auto& f : fiber_table(ctx, m, opts)) {
    if (f.value == a) return f;
  }
  return {a, 0};
}

inline std::vector<Elem> scale_set(const FieldCtx& ctx, Elem c, std::span<const Elem> values) {
  std::vector<Elem> out;
  out.reserve(values.size());
  for (Elem v : values) out.push_back(ctx.mul(c, v));
  return sorted_unique(std::move(out));
}

// Num_k(M) = k Num_1(M) for every k in F_q^*.
inline bool scaling_law_check(const FieldCtx& ctx, const Matrix& m, const RangeOptions& opts = {}) {
  RangeOptions exact = opts;
  exact.sample_budget.reset();
  const RangeSet base = num_k(ctx, m, ctx.one(), exact);
  for (std::uint32_t k = 1; k < ctx.q(); ++k) {
    if (num_k(ctx, m, Elem{k}, exact).values != scale_set(ctx, Elem{k}, base.values)) return false;
  }
  return true;
}

// Which shift makes Num_k(cI + dM) = shift + d Num_k(M) hold.
enum class AffineForm { linear, quadratic, both, neither };

inline std::string_view to_string(AffineForm f) {
  switch (f) {
    case AffineForm::linear: return "ck";
    case AffineForm::quadratic: return "ck^2";
    case AffineForm::both: return "ck=ck^2";
    case AffineForm::neither: return "neither";
  }
  return "?";
}

inline AffineForm resolve_affine_law(const FieldCtx& ctx, const Matrix& m, Elem c, Elem d, Elem k,
                                     const RangeOptions& opts = {}) {
  Matrix shifted(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      shifted(i, j) = ctx.add(i == j ? c : ctx.zero(), ctx.mul(d, m(i, j)));
    }
  }
  const auto lhs = num_k(ctx, shifted, k, opts).values;
  const auto inner_range = num_k(ctx, m, k, opts).values;
  const auto shifted_by = [&](Elem shift) {
    std::vector<Elem> out;
    for (Elem v : inner_range) out.push_back(ctx.add(shift, ctx.mul(d, v)));
    return sorted_unique(std::move(out));
  };
  const bool lin = lhs == shifted_by(ctx.mul(c, k));
  const bool quad = lhs == shifted_by(ctx.mul(c, ctx.mul(k, k)));
  if (lin && quad) return AffineForm::both;
  if (lin) return AffineForm::linear;
  if (quad) return AffineForm::quadratic;
  return AffineForm::neither;
}

}  // namespace hnr
