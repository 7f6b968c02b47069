#pragma once

// Closed-form predictions for null-ranges and their F_q-coefficient variants,
// and the machinery to check them against brute-force range sets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hnr/errors.hpp"
#include "hnr/fields.hpp"
#include "hnr/hermitian.hpp"
#include "hnr/ranges.hpp"

namespace hnr {

// ---------------------------------------------------------------------------
// 2x2 eigenstructure

enum class EigenStatus { two_distinct, repeated, irreducible };

inline std::string_view to_string(EigenStatus s) {
  switch (s) {
    case EigenStatus::two_distinct: return "two_distinct_in_Fq2";
    case EigenStatus::repeated: return "repeated";
    case EigenStatus::irreducible: return "irreducible_char_poly";
  }
  return "?";
}

struct EigenPair {
  Elem value{};
  std::size_t dim = 0;  // dimension of the eigenspace
  Vector vector;        // spanning vector, first nonzero coordinate 1 (e1 when dim = 2)
  bool isotropic = false;
};

struct EigenData2 {
  EigenStatus status = EigenStatus::irreducible;
  std::vector<EigenPair> pairs;  // sorted by eigenvalue encoding
};

// Roots of the characteristic polynomial by exhaustive scan of F_{q^2}.
inline EigenData2 eigen2(const FieldCtx& ctx, const Matrix& m) {
  if (m.n() != 2) throw InputError("eigen2 needs a 2x2 matrix");
  const Elem tr = ctx.add(m(0, 0), m(1, 1));
  const Elem det = ctx.sub(ctx.mul(m(0, 0), m(1, 1)), ctx.mul(m(0, 1), m(1, 0)));
  EigenData2 out;
  for (std::uint32_t x = 0; x < ctx.q2(); ++x) {
    const Elem t{x};
    if (ctx.add(ctx.sub(ctx.mul(t, t), ctx.mul(tr, t)), det) != ctx.zero()) continue;
    EigenPair ep;
    ep.value = t;
    const Elem a00 = ctx.sub(m(0, 0), t), a01 = m(0, 1);
    const Elem a10 = m(1, 0), a11 = ctx.sub(m(1, 1), t);
    if (a00.enc == 0 && a01.enc == 0 && a10.enc == 0 && a11.enc == 0) {
      ep.dim = 2;
      ep.vector = {ctx.one(), ctx.zero()};
    } else {
      ep.dim = 1;
      const bool first_row = a00.enc != 0 || a01.enc != 0;
      const Elem a = first_row ? a00 : a10;
      const Elem b = first_row ? a01 : a11;
      // (-b, a) spans the kernel of the rank-one matrix.
      Vector v{ctx.neg(b), a};
      const Elem lead = v[0].enc != 0 ? v[0] : v[1];
      for (auto& c : v) c = ctx.div(c, lead);
      ep.vector = std::move(v);
    }
    ep.isotropic = inner(ctx, ep.vector, ep.vector).enc == 0;
    out.pairs.push_back(std::move(ep));
  }
  out.status = out.pairs.empty()       ? EigenStatus::irreducible
               : out.pairs.size() == 1 ? EigenStatus::repeated
                                       : EigenStatus::two_distinct;
  return out;
}

// ---------------------------------------------------------------------------
// Predictions

// Each rule names one closed-form statement about the ranges.
enum class Rule {
  zero_in_null_range,
  scalar_null_range,
  unitary_diagonal_two_eigenvalues,
  unitary_diagonal_many_eigenvalues,
  nonisotropic_single_eigenvector,
  isotropic_eigenbasis,
  offdiagonal_nonzero,
  nonscalar_null_range_bound,
  direct_sum,
  subfield_nonempty,
  subfield_2x2_anisotropic,
  subfield_2x2_even,
  subfield_2x2_one_mod_four,
  subfield_even_n4_isotropic,
  subfield_odd_n5_isotropic,
  subfield_one_mod_four,
  subfield_even_char,
  subfield_scalar,
  subfield_three_mod_four_n3,
  subfield_two_valued_diagonal,
  subfield_skew_lower_bound,
  subfield_partial_skew_lower_bound,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::zero_in_null_range: return "zero_in_null_range";
    case Rule::scalar_null_range: return "scalar_null_range";
    case Rule::unitary_diagonal_two_eigenvalues: return "unitary_diagonal_two_eigenvalues";
    case Rule::unitary_diagonal_many_eigenvalues: return "unitary_diagonal_many_eigenvalues";
    case Rule::nonisotropic_single_eigenvector: return "nonisotropic_single_eigenvector";
    case Rule::isotropic_eigenbasis: return "isotropic_eigenbasis";
    case Rule::offdiagonal_nonzero: return "offdiagonal_nonzero";
    case Rule::nonscalar_null_range_bound: return "nonscalar_null_range_bound";
    case Rule::direct_sum: return "direct_sum";
    case Rule::subfield_nonempty: return "subfield_nonempty";
    case Rule::subfield_2x2_anisotropic: return "subfield_2x2_anisotropic";
    case Rule::subfield_2x2_even: return "subfield_2x2_even";
    case Rule::subfield_2x2_one_mod_four: return "subfield_2x2_one_mod_four";
    case Rule::subfield_even_n4_isotropic: return "subfield_even_n4_isotropic";
    case Rule::subfield_odd_n5_isotropic: return "subfield_odd_n5_isotropic";
    case Rule::subfield_one_mod_four: return "subfield_one_mod_four";
    case Rule::subfield_even_char: return "subfield_even_char";
    case Rule::subfield_scalar: return "subfield_scalar";
    case Rule::subfield_three_mod_four_n3: return "subfield_three_mod_four_n3";
    case Rule::subfield_two_valued_diagonal: return "subfield_two_valued_diagonal";
    case Rule::subfield_skew_lower_bound: return "subfield_skew_lower_bound";
    case Rule::subfield_partial_skew_lower_bound: return "subfield_partial_skew_lower_bound";
  }
  return "?";
}

struct RangeTarget {
  RangeKind kind = RangeKind::num_k;
  Elem k{};
};

// Number of isotropic u in F_q^n with <u, M u> = value.
struct FiberTarget {
  Elem value{};
};

using Target = std::variant<RangeTarget, FiberTarget>;

struct ExactSet {
  std::vector<Elem> values;
};
struct Contains {
  std::vector<Elem> values;
};
struct ExactCardinality {
  std::uint64_t count = 0;
};
struct LowerBound {
  std::uint64_t count = 0;
};
struct UpperBound {
  std::uint64_t count = 0;
};
// At least `count` nonzero members.
struct NonzeroLowerBound {
  std::uint64_t count = 0;
};
struct Membership {
  Elem value{};
  bool in = true;
};
struct Emptiness {};
// {t*o : t in F_q} (with_zero) or {t*o : t in F_q^*}.  Without a direction,
// some nonzero member must serve as o.
struct LineThroughOrigin {
  std::optional<Elem> direction;
  bool with_zero = true;
};

struct Statement;
// Holds if at least one option holds.
struct AnyOf {
  std::vector<Statement> options;
};

using Claim = std::variant<ExactSet, Contains, ExactCardinality, LowerBound, UpperBound,
                           NonzeroLowerBound, Membership, Emptiness, LineThroughOrigin, AnyOf>;

struct Statement {
  Target target;
  Claim claim;
};

struct Prediction {
  Rule rule;
  Target target;
  Claim claim;
};

enum class Verdict { pass, fail, inapplicable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

namespace detail {

inline std::string set_string(std::span<const Elem> values) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(values[i].enc);
  }
  return s + "}";
}

inline std::vector<Elem> fq_line(const FieldCtx& ctx, Elem direction, bool with_zero) {
  std::vector<Elem> out;
  for (std::uint32_t t = with_zero ? 0 : 1; t < ctx.q(); ++t) out.push_back(ctx.mul(Elem{t}, direction));
  return sorted_unique(std::move(out));
}

inline std::vector<Elem> nonzero_fq(const FieldCtx& ctx) {
  std::vector<Elem> out;
  for (std::uint32_t t = 1; t < ctx.q(); ++t) out.push_back(Elem{t});
  return out;
}

inline std::vector<Elem> all_fq(const FieldCtx& ctx) {
  std::vector<Elem> out;
  for (std::uint32_t t = 0; t < ctx.q(); ++t) out.push_back(Elem{t});
  return out;
}

inline std::uint64_t ceil_half(std::uint64_t x) { return (x + 1) / 2; }

}  // namespace detail

inline std::string to_string(const Target& t) {
  if (const auto* r = std::get_if<RangeTarget>(&t)) {
    std::string s(to_string(r->kind));
    if (!is_punctured_kind(r->kind)) s += "(k=" + std::to_string(r->k.enc) + ")";
    return s;
  }
  return "fiber(" + std::to_string(std::get<FiberTarget>(t).value.enc) + ")";
}

inline std::string describe(const Claim& c);

inline std::string describe(const Statement& s) { return to_string(s.target) + " " + describe(s.claim); }

inline std::string describe(const Claim& c) {
  struct V {
    std::string operator()(const ExactSet& x) const { return "= " + detail::set_string(x.values); }
    std::string operator()(const Contains& x) const { return "contains " + detail::set_string(x.values); }
    std::string operator()(const ExactCardinality& x) const { return "size = " + std::to_string(x.count); }
    std::string operator()(const LowerBound& x) const { return "size >= " + std::to_string(x.count); }
    std::string operator()(const UpperBound& x) const { return "size <= " + std::to_string(x.count); }
    std::string operator()(const NonzeroLowerBound& x) const {
      return "nonzero members >= " + std::to_string(x.count);
    }
    std::string operator()(const Membership& x) const {
      return std::string(x.in ? "contains " : "excludes ") + std::to_string(x.value.enc);
    }
    std::string operator()(const Emptiness&) const { return "is empty"; }
    std::string operator()(const LineThroughOrigin& x) const {
      std::string s = x.with_zero ? "F_q-line" : "punctured F_q-line";
      if (x.direction) s += " through " + std::to_string(x.direction->enc);
      return s;
    }
    std::string operator()(const AnyOf& x) const {
      std::string s = "any of [";
      for (std::size_t i = 0; i < x.options.size(); ++i) {
        if (i) s += "; ";
        s += describe(x.options[i]);
      }
      return s + "]";
    }
  };
  return std::visit(V{}, c);
}

inline std::string describe(const Prediction& p) { return to_string(p.target) + " " + describe(p.claim); }

// ---------------------------------------------------------------------------
// Checking

// Compares a single-target claim with an observed range set.  AnyOf needs
// several targets and is handled by the Observations overload.
inline Verdict check_claim(const FieldCtx& ctx, const Claim& claim, const RangeSet& obs) {
  struct V {
    const FieldCtx& ctx;
    const RangeSet& obs;

    Verdict verdict(bool ok, bool lower_type) const {
      if (obs.exhaustive()) return ok ? Verdict::pass : Verdict::fail;
      // A sampled set is a subset: it can witness lower-bound style claims only.
      return lower_type && ok ? Verdict::pass : Verdict::inapplicable;
    }

    Verdict operator()(const ExactSet& x) const { return verdict(obs.values == sorted_unique(x.values), false); }
    Verdict operator()(const Contains& x) const {
      return verdict(std::all_of(x.values.begin(), x.values.end(), [&](Elem v) { return obs.contains(v); }),
                     true);
    }
    Verdict operator()(const ExactCardinality& x) const { return verdict(obs.size() == x.count, false); }
    Verdict operator()(const LowerBound& x) const { return verdict(obs.size() >= x.count, true); }
    Verdict operator()(const UpperBound& x) const { return verdict(obs.size() <= x.count, false); }
    Verdict operator()(const NonzeroLowerBound& x) const {
      const std::uint64_t nz = obs.size() - (obs.contains(Elem{0}) ? 1 : 0);
      return verdict(nz >= x.count, true);
    }
    Verdict operator()(const Membership& x) const { return verdict(obs.contains(x.value) == x.in, x.in); }
    Verdict operator()(const Emptiness&) const { return verdict(obs.empty(), false); }
    Verdict operator()(const LineThroughOrigin& x) const {
      if (x.direction) return verdict(obs.values == detail::fq_line(ctx, *x.direction, x.with_zero), false);
      bool ok = false;
      for (Elem o : obs.values) {
        if (o.enc != 0 && obs.values == detail::fq_line(ctx, o, x.with_zero)) {
          ok = true;
          break;
        }
      }
      return verdict(ok, false);
    }
    Verdict operator()(const AnyOf&) const { return Verdict::inapplicable; }
  };
  return std::visit(V{ctx, obs}, claim);
}

inline Verdict check_claim(const FieldCtx&, const Claim& claim, const FiberCount& obs) {
  if (const auto* x = std::get_if<ExactCardinality>(&claim)) return obs.count == x->count ? Verdict::pass : Verdict::fail;
  if (const auto* x = std::get_if<LowerBound>(&claim)) return obs.count >= x->count ? Verdict::pass : Verdict::fail;
  if (const auto* x = std::get_if<UpperBound>(&claim)) return obs.count <= x->count ? Verdict::pass : Verdict::fail;
  return Verdict::inapplicable;
}

// Single-observation check; the target's kind and k must match the observation.
inline Verdict check_prediction(const FieldCtx& ctx, const Prediction& p, const RangeSet& obs) {
  const auto* t = std::get_if<RangeTarget>(&p.target);
  if (!t || t->kind != obs.kind || t->k != obs.k) return Verdict::inapplicable;
  return check_claim(ctx, p.claim, obs);
}

inline Verdict check_prediction(const FieldCtx& ctx, const Prediction& p, const FiberCount& obs) {
  const auto* t = std::get_if<FiberTarget>(&p.target);
  if (!t || t->value != obs.value) return Verdict::inapplicable;
  return check_claim(ctx, p.claim, obs);
}

// Lazily computed, cached brute-force observations for one matrix.
class Observations {
 public:
  Observations(const FieldCtx& ctx, const Matrix& m, RangeOptions opts = {})
      : ctx_(ctx), m_(m), opts_(std::move(opts)) {}

  const RangeSet& range(RangeKind kind, Elem k) {
    const auto key = std::make_pair(static_cast<int>(kind), k.enc);
    auto it = ranges_.find(key);
    if (it == ranges_.end()) it = ranges_.emplace(key, compute_range(ctx_, m_, kind, k, opts_)).first;
    return it->second;
  }

  FiberCount fiber(Elem value) {
    if (!fibers_) fibers_ = fiber_table(ctx_, m_, opts_);
    for (const auto& f : *fibers_) {
      if (f.value == value) return f;
    }
    return {value, 0};
  }

  const Matrix& matrix() const { return m_; }

  // Observed value for a target, for reports.
  std::string observed(const Target& t) {
    if (const auto* r = std::get_if<RangeTarget>(&t)) {
      const auto& s = range(r->kind, r->k);
      return detail::set_string(s.values) + (s.exhaustive() ? "" : " (sampled)");
    }
    return std::to_string(fiber(std::get<FiberTarget>(t).value).count);
  }

 private:
  const FieldCtx& ctx_;
  Matrix m_;
  RangeOptions opts_;
  std::map<std::pair<int, std::uint32_t>, RangeSet> ranges_;
  std::optional<std::vector<FiberCount>> fibers_;
};

inline Verdict check_statement(const FieldCtx& ctx, const Target& target, const Claim& claim,
                               Observations& obs) {
  if (const auto* any = std::get_if<AnyOf>(&claim)) {
    bool undecided = false;
    for (const auto& opt : any->options) {
      const Verdict v = check_statement(ctx, opt.target, opt.claim, obs);
      if (v == Verdict::pass) return Verdict::pass;
      undecided = undecided || v == Verdict::inapplicable;
    }
    return undecided ? Verdict::inapplicable : Verdict::fail;
  }
  if (const auto* r = std::get_if<RangeTarget>(&target)) return check_claim(ctx, claim, obs.range(r->kind, r->k));
  return check_claim(ctx, claim, obs.fiber(std::get<FiberTarget>(target).value));
}

inline Verdict check_prediction(const FieldCtx& ctx, const Prediction& p, Observations& obs) {
  return check_statement(ctx, p.target, p.claim, obs);
}

// ---------------------------------------------------------------------------
// Predictors over F_{q^2}

namespace detail {

inline RangeTarget null_range() { return {RangeKind::num_k, Elem{0}}; }
inline RangeTarget punctured() { return {RangeKind::num0_prime, Elem{0}}; }

// Some w != 0 with w^q = -w; it spans the trace-zero line of F_{q^2} over F_q.
inline Elem trace_zero_direction(const FieldCtx& ctx) {
  for (std::uint32_t x = 1; x < ctx.q2(); ++x) {
    if (ctx.frobenius(Elem{x}) == ctx.neg(Elem{x})) return Elem{x};
  }
  throw std::logic_error("no trace-zero element");
}

inline std::vector<Elem> distinct_in_order(std::span<const Elem> xs) {
  std::vector<Elem> out;
  for (Elem x : xs) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace detail

// Predictions for a diagonal n x n matrix (n >= 2): the unitarily diagonal
// classification by the number of distinct eigenvalues.
inline std::vector<Prediction> predict_diagonal(const FieldCtx& ctx, const Matrix& m) {
  if (m.n() < 2 || !m.is_diagonal()) throw InputError("predict_diagonal needs a diagonal matrix with n >= 2");
  std::vector<Elem> diag;
  for (std::size_t i = 0; i < m.n(); ++i) diag.push_back(m(i, i));
  const auto c = detail::distinct_in_order(diag);
  const std::size_t n = m.n();
  std::vector<Prediction> out;
  out.push_back({Rule::zero_in_null_range, detail::null_range(), Membership{Elem{0}, true}});
  if (c.size() == 1) {
    out.push_back({Rule::scalar_null_range, detail::punctured(), ExactSet{{Elem{0}}}});
    return out;
  }
  if (c.size() == 2) {
    const Elem gap = ctx.sub(c[1], c[0]);
    out.push_back({Rule::unitary_diagonal_two_eigenvalues, detail::punctured(),
                   ExactSet{detail::fq_line(ctx, gap, n >= 3)}});
    return out;
  }
  std::vector<Elem> everything;
  for (std::uint32_t x = 0; x < ctx.q2(); ++x) everything.push_back(Elem{x});
  out.push_back({Rule::unitary_diagonal_many_eigenvalues, detail::null_range(), ExactSet{everything}});
  bool zero_in = c.size() >= 4 || n >= 4;
  if (c.size() == 3 && n == 3) zero_in = ctx.in_subfield(ctx.div(ctx.sub(c[2], c[0]), ctx.sub(c[1], c[0])));
  out.push_back({Rule::unitary_diagonal_many_eigenvalues, detail::punctured(), Membership{Elem{0}, zero_in}});
  return out;
}

// Every applicable closed-form statement about Num_0 / Num'_0 of a 2x2 matrix.
inline std::vector<Prediction> predict_full_field(const FieldCtx& ctx, const Matrix& m) {
  if (m.n() != 2) throw InputError("predict_full_field needs a 2x2 matrix");
  const std::uint64_t q = ctx.q();
  std::vector<Prediction> out;
  out.push_back({Rule::zero_in_null_range, detail::null_range(), Membership{Elem{0}, true}});
  if (m.is_scalar()) {
    out.push_back({Rule::scalar_null_range, detail::punctured(), ExactSet{{Elem{0}}}});
    return out;
  }
  out.push_back({Rule::nonscalar_null_range_bound, detail::null_range(), LowerBound{detail::ceil_half(q + 1)}});

  const EigenData2 eig = eigen2(ctx, m);
  if (eig.status == EigenStatus::two_distinct) {
    const auto& [c1, d1, u1, iso1] = eig.pairs[0];
    const auto& [c2, d2, u2, iso2] = eig.pairs[1];
    const Elem gap = ctx.sub(c2, c1);
    if (inner(ctx, u1, u2).enc == 0) {
      out.push_back({Rule::unitary_diagonal_two_eigenvalues, detail::punctured(),
                     ExactSet{detail::fq_line(ctx, gap, false)}});
    } else if (iso1 && iso2) {
      const Elem o = ctx.mul(detail::trace_zero_direction(ctx), gap);
      out.push_back({Rule::isotropic_eigenbasis, detail::punctured(), LineThroughOrigin{o, true}});
    }
  } else if (eig.status == EigenStatus::repeated && eig.pairs[0].dim == 1 && !eig.pairs[0].isotropic) {
    out.push_back({Rule::nonisotropic_single_eigenvector, detail::punctured(), Membership{Elem{0}, false}});
    if (ctx.q_even()) {
      std::vector<Elem> units;
      for (std::uint32_t x = 1; x < ctx.q2(); ++x) units.push_back(Elem{x});
      out.push_back({Rule::nonisotropic_single_eigenvector, detail::punctured(), ExactSet{units}});
    } else {
      out.push_back({Rule::nonisotropic_single_eigenvector, detail::punctured(),
                     ExactCardinality{(q * q - 1) / 2}});
    }
  }

  if (m(0, 1).enc != 0 && m(1, 0).enc != 0) {
    out.push_back({Rule::offdiagonal_nonzero, detail::punctured(), LowerBound{detail::ceil_half(q + 1)}});
    const Elem ratio = ctx.div(ctx.neg(m(0, 1)), m(1, 0));
    if (ctx.norm(ratio) != ctx.one()) {
      out.push_back({Rule::offdiagonal_nonzero, detail::punctured(), LowerBound{q + 1}});
    }
  }
  return out;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.n() + b.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) m(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.n(); ++i) {
    for (std::size_t j = 0; j < b.n(); ++j) m(a.n() + i, a.n() + j) = b(i, j);
  }
  return m;
}

// Brute-force inputs for the block-diagonal prediction.  The punctured null
// ranges are needed only for blocks of size >= 2.
struct DirectSumInputs {
  const RangeSet* num1_a = nullptr;
  const RangeSet* num1_b = nullptr;
  const RangeSet* num0_a = nullptr;
  const RangeSet* num0_b = nullptr;
  const RangeSet* num0_prime_a = nullptr;
  const RangeSet* num0_prime_b = nullptr;
};

// Num_0(A + B) = (Num_0(A) + Num_0(B)) u U_{k in F_q^*} k (Num_1(A) - Num_1(B)),
// and whether 0 is attained by a nonzero isotropic vector.
inline std::vector<Prediction> predict_direct_sum(const FieldCtx& ctx, const Matrix& a, const Matrix& b,
                                                  const DirectSumInputs& in) {
  for (const RangeSet* r : {in.num1_a, in.num1_b, in.num0_a, in.num0_b}) {
    if (!r) throw InputError("predict_direct_sum: missing range input");
  }
  for (const RangeSet* r : {in.num1_a, in.num1_b, in.num0_a, in.num0_b, in.num0_prime_a, in.num0_prime_b}) {
    if (r && !r->exhaustive()) throw InputError("predict_direct_sum needs exhaustive inputs");
  }
  if ((a.n() >= 2 && !in.num0_prime_a) || (b.n() >= 2 && !in.num0_prime_b)) {
    throw InputError("predict_direct_sum: missing punctured null-range of a block of size >= 2");
  }
  std::vector<Elem> vals;
  for (Elem x : in.num0_a->values) {
    for (Elem y : in.num0_b->values) vals.push_back(ctx.add(x, y));
  }
  for (std::uint32_t k = 1; k < ctx.q(); ++k) {
    for (Elem x : in.num1_a->values) {
      for (Elem y : in.num1_b->values) vals.push_back(ctx.mul(Elem{k}, ctx.sub(x, y)));
    }
  }
  bool common = false;
  for (Elem x : in.num1_a->values) common = common || in.num1_b->contains(x);
  const bool zero_in = (a.n() >= 2 && in.num0_prime_a->contains(Elem{0})) ||
                       (b.n() >= 2 && in.num0_prime_b->contains(Elem{0})) || common;
  return {
      {Rule::direct_sum, detail::null_range(), ExactSet{sorted_unique(std::move(vals))}},
      {Rule::direct_sum, detail::punctured(), Membership{Elem{0}, zero_in}},
  };
}

// ---------------------------------------------------------------------------
// Predictors over F_q

inline bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  const auto f = detail::prime_factors(q);
  return f.size() == 1;
}

// |{u in F_q^n : <u, u> = 0}|, which is the zero fiber of a scalar matrix.
inline std::uint64_t scalar_fiber_formula(std::uint64_t q, std::uint64_t n) {
  if (!is_prime_power(q)) throw InputError("q must be a prime power");
  if (n < 2) throw InputError("n must be at least 2");
  const auto pw = [&](std::uint64_t e) { return detail::ipow_sat(q, e); };
  if (q % 2 == 0) return pw(n - 1);
  const std::uint64_t s = n / 2;
  if (n % 2 == 1) return pw(2 * s);
  if (s % 2 == 0 || q % 4 == 1) return pw(2 * s - 1) + pw(s) - pw(s - 1);
  return pw(2 * s - 1) - pw(s) + pw(s - 1);
}

namespace detail {

// Diagonal and pairwise sums m_ij + m_ji: the data all subfield ranges depend on.
struct SymmetrizedPattern {
  std::vector<Elem> diag;
  std::vector<std::vector<Elem>> sums;  // sums[i][j] for i != j

  SymmetrizedPattern(const FieldCtx& ctx, const Matrix& m) : diag(m.n()), sums(m.n(), std::vector<Elem>(m.n())) {
    for (std::size_t i = 0; i < m.n(); ++i) {
      diag[i] = m(i, i);
      for (std::size_t j = 0; j < m.n(); ++j) sums[i][j] = i == j ? Elem{0} : ctx.add(m(i, j), m(j, i));
    }
  }

  bool skew() const {
    for (std::size_t i = 0; i < diag.size(); ++i) {
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (sums[i][j].enc != 0) return false;
      }
    }
    return true;
  }

  bool constant_diagonal() const {
    return std::all_of(diag.begin(), diag.end(), [&](Elem d) { return d == diag[0]; });
  }
};

inline RangeTarget sub_range(Elem k) { return {RangeKind::num_k_subfield, k}; }
inline RangeTarget sub_punctured() { return {RangeKind::num0_prime_subfield, Elem{0}}; }

}  // namespace detail

// Every applicable closed-form statement about Num_k(M)_q for one k; the
// k = 0 call also carries the statements about Num'_0(M)_q and the fibers.
// Only the symmetrized pattern of M is inspected.
inline std::vector<Prediction> predict_subfield(const FieldCtx& ctx, const Matrix& m, Elem k) {
  if (m.n() < 2) throw InputError("predict_subfield needs n >= 2");
  if (!has_subfield_coeffs(ctx, m)) throw InputError("predict_subfield needs entries in F_q");
  if (!ctx.in_subfield(k)) throw InputError("k must lie in F_q");

  const std::uint64_t q = ctx.q();
  const std::size_t n = m.n();
  const bool even = ctx.q_even();
  const bool one_mod_4 = !even && q % 4 == 1;
  const bool three_mod_4 = !even && q % 4 == 3;
  const bool k0 = k.enc == 0;
  const detail::SymmetrizedPattern pat(ctx, m);
  const auto& d = pat.diag;
  const auto& s = pat.sums;
  using detail::sub_punctured;
  using detail::sub_range;

  std::vector<Prediction> out;
  out.push_back({Rule::subfield_nonempty, sub_range(k), LowerBound{1}});

  if (n == 2) {
    if (three_mod_4 && k0) out.push_back({Rule::subfield_2x2_anisotropic, sub_punctured(), Emptiness{}});
    if (even) {
      const Elem total = ctx.add(ctx.add(d[0], d[1]), s[0][1]);
      if (k0) {
        out.push_back({Rule::subfield_2x2_even, sub_punctured(),
                       ExactSet{total.enc != 0 ? detail::nonzero_fq(ctx) : std::vector<Elem>{Elem{0}}}});
      } else if (total.enc != 0) {
        out.push_back({Rule::subfield_2x2_even, sub_range(k), LowerBound{q / 2}});
      } else {
        out.push_back({Rule::subfield_2x2_even, sub_range(k),
                       AnyOf{{{sub_range(k), ExactSet{detail::all_fq(ctx)}}, {sub_range(k), ExactCardinality{1}}}}});
      }
      if (!k0 && s[0][1].enc == 0 && d[0] != d[1]) {
        out.push_back({Rule::subfield_2x2_even, sub_range(k), ExactSet{detail::all_fq(ctx)}});
      }
    }
    if (one_mod_4) {
      if (s[0][1].enc != 0) {
        if (k0) out.push_back({Rule::subfield_2x2_one_mod_four, sub_range(k), NonzeroLowerBound{(q - 1) / 2}});
      } else if (d[0] == d[1]) {
        out.push_back({Rule::subfield_2x2_one_mod_four, sub_range(k), ExactSet{{ctx.mul(k, d[0])}}});
        if (k0) out.push_back({Rule::subfield_2x2_one_mod_four, sub_punctured(), Membership{Elem{0}, true}});
      } else {
        out.push_back({Rule::subfield_2x2_one_mod_four, sub_range(k), UpperBound{(q + 1) / 2}});
        if (k0) {
          out.push_back({Rule::subfield_2x2_one_mod_four, sub_range(k), ExactCardinality{(q + 1) / 2}});
          out.push_back({Rule::subfield_2x2_one_mod_four, sub_punctured(), ExactCardinality{(q - 1) / 2}});
        }
      }
    }
  }

  if (k0 && even && n >= 4) {
    out.push_back({Rule::subfield_even_n4_isotropic, sub_punctured(), Membership{Elem{0}, true}});
  }
  if (k0 && !even && n >= 5) {
    out.push_back({Rule::subfield_odd_n5_isotropic, sub_punctured(), Membership{Elem{0}, true}});
  }

  if (one_mod_4) {
    if (pat.skew() && pat.constant_diagonal()) {
      out.push_back({Rule::subfield_one_mod_four, sub_range(k), ExactSet{{ctx.mul(k, d[0])}}});
      if (k0) out.push_back({Rule::subfield_one_mod_four, sub_punctured(), Membership{Elem{0}, true}});
    } else if (k0) {
      out.push_back({Rule::subfield_one_mod_four, sub_range(k), NonzeroLowerBound{(q - 1) / 2}});
    }
  }

  if (even && k0) {
    out.push_back({Rule::subfield_even_char, sub_punctured(), LowerBound{1}});
    out.push_back({Rule::subfield_even_char, sub_punctured(),
                   AnyOf{{{sub_punctured(), Membership{Elem{0}, true}},
                          {sub_range(k), Contains{detail::nonzero_fq(ctx)}}}}});
    bool degenerate = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        degenerate = degenerate && ctx.add(ctx.add(d[i], d[j]), s[i][j]).enc == 0;
      }
    }
    if (degenerate) {
      out.push_back({Rule::subfield_even_char, sub_punctured(), ExactSet{{Elem{0}}}});
    } else if (n == 2) {
      out.push_back({Rule::subfield_even_char, sub_punctured(), ExactSet{detail::nonzero_fq(ctx)}});
    } else if (n == 3) {
      out.push_back({Rule::subfield_even_char, sub_punctured(), Contains{detail::nonzero_fq(ctx)}});
    } else {
      out.push_back({Rule::subfield_even_char, sub_punctured(), ExactSet{detail::all_fq(ctx)}});
    }
  }

  if (k0 && m.is_scalar() && d[0].enc != 0) {
    out.push_back({Rule::subfield_scalar, FiberTarget{Elem{0}}, ExactCardinality{scalar_fiber_formula(q, n)}});
    if (three_mod_4 && n == 2) {
      out.push_back({Rule::subfield_scalar, sub_punctured(), Emptiness{}});
    } else {
      out.push_back({Rule::subfield_scalar, sub_punctured(), ExactSet{{Elem{0}}}});
    }
  }

  if (k0 && three_mod_4 && n >= 3) {
    out.push_back({Rule::subfield_three_mod_four_n3, sub_punctured(), LowerBound{1}});
  }

  if (!even && k0 && pat.skew() && (n >= 3 || one_mod_4)) {
    // One distinguished diagonal entry, all others equal to each other.
    std::optional<std::size_t> lone;
    for (std::size_t i = 0; i < n && !lone; ++i) {
      const std::size_t other = i == 0 ? 1 : 0;
      bool ok = d[i] != d[other];
      for (std::size_t j = 0; j < n; ++j) ok = ok && (j == i || d[j] == d[other]);
      if (ok) lone = i;
    }
    if (lone) {
      const Elem gap = ctx.sub(d[*lone == 0 ? 1 : 0], d[*lone]);
      std::vector<Elem> vals{Elem{0}};
      for (std::uint32_t a = 1; a < q; ++a) {
        if (ctx.is_square(ctx.div(ctx.neg(Elem{a}), gap))) vals.push_back(Elem{a});
      }
      out.push_back({Rule::subfield_two_valued_diagonal, sub_range(k), ExactCardinality{(q + 1) / 2}});
      out.push_back({Rule::subfield_two_valued_diagonal, sub_range(k), ExactSet{vals}});
      out.push_back({Rule::subfield_two_valued_diagonal, sub_punctured(),
                     Membership{Elem{0}, n >= 4 || (n == 3 && one_mod_4)}});
    }
  }

  if (!even && k0 && n >= 3 && pat.skew() && !pat.constant_diagonal()) {
    out.push_back({Rule::subfield_skew_lower_bound, sub_range(k), LowerBound{(q + 1) / 2}});
    out.push_back({Rule::subfield_skew_lower_bound, sub_range(k), NonzeroLowerBound{(q - 1) / 2}});
  }

  if (!even && n >= 3) {
    bool applies = false;
    for (std::size_t i = 0; i < n && !applies; ++i) {
      for (std::size_t j1 = 0; j1 < n && !applies; ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < n && !applies; ++j2) {
          if (j1 == i || j2 == i) continue;
          if (s[i][j1].enc != 0 || s[i][j2].enc != 0) continue;
          applies = d[j1] != d[i] || d[j2] != d[i] || s[j1][j2].enc != 0;
        }
      }
    }
    if (applies) out.push_back({Rule::subfield_partial_skew_lower_bound, sub_range(k), LowerBound{(q + 1) / 2}});
  }
  return out;
}

}  // namespace hnr
