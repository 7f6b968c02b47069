#pragma once

// Named verification sweeps: every applicable prediction is checked against
// brute force and collected into a deterministic report.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "hnr/classify.hpp"
#include "hnr/io.hpp"

namespace hnr {

enum class Scope { exhaustive_2x2, subfield_2x2, random_nxn, diagonal_nxn, scalar_fibers, direct_sums, affine_law };

inline constexpr Scope all_scopes[] = {Scope::exhaustive_2x2, Scope::subfield_2x2, Scope::random_nxn,
                                       Scope::diagonal_nxn,   Scope::scalar_fibers, Scope::direct_sums,
                                       Scope::affine_law};

inline std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::exhaustive_2x2: return "exhaustive-2x2";
    case Scope::subfield_2x2: return "subfield-2x2";
    case Scope::random_nxn: return "random-nxn";
    case Scope::diagonal_nxn: return "diagonal-nxn";
    case Scope::scalar_fibers: return "scalar-fibers";
    case Scope::direct_sums: return "direct-sums";
    case Scope::affine_law: return "affine-law";
  }
  return "?";
}

inline Scope parse_scope(std::string_view s) {
  for (Scope sc : all_scopes) {
    if (to_string(sc) == s) return sc;
  }
  throw InputError("unknown scope '" + std::string(s) + "'");
}

struct VerifyConfig {
  Scope scope = Scope::exhaustive_2x2;
  std::size_t n = 3;          // size for random-nxn / diagonal-nxn, largest n for scalar-fibers
  std::uint64_t samples = 50; // matrices (or pairs) drawn by the random scopes
  std::uint64_t seed = 0;
  unsigned workers = 1;       // matrices checked concurrently
  std::uint64_t max_matrices = 1'000'000;
  RangeOptions range;
};

struct CheckRecord {
  std::string citation;
  std::string claim;
  std::string observed;
  Verdict verdict = Verdict::inapplicable;
};

struct MatrixRecord {
  Matrix matrix{1};
  std::vector<CheckRecord> checks;
};

struct Tally {
  std::uint64_t pass = 0, fail = 0, inapplicable = 0;

  void add(Verdict v) {
    if (v == Verdict::pass) ++pass;
    else if (v == Verdict::fail) ++fail;
    else ++inapplicable;
  }
};

struct VerifyReport {
  Scope scope = Scope::exhaustive_2x2;
  FieldSpec field;
  std::vector<MatrixRecord> matrices;
  std::map<std::string, Tally> summary;

  std::uint64_t failures() const {
    std::uint64_t f = 0;
    for (const auto& [_, t] : summary) f += t.fail;
    return f;
  }

  // Failing checks for one citation, in report order.
  std::vector<std::pair<const Matrix*, const CheckRecord*>> failures_of(std::string_view citation) const {
    std::vector<std::pair<const Matrix*, const CheckRecord*>> out;
    for (const auto& m : matrices) {
      for (const auto& c : m.checks) {
        if (c.verdict == Verdict::fail && c.citation == citation) out.emplace_back(&m.matrix, &c);
      }
    }
    return out;
  }
};

namespace detail {

inline std::vector<CheckRecord> run_checks(const FieldCtx& ctx, Observations& obs,
                                           const std::vector<Prediction>& preds) {
  std::vector<CheckRecord> out;
  for (const auto& p : preds) {
    const Verdict v = check_prediction(ctx, p, obs);
    std::string observed;
    if (const auto* any = std::get_if<AnyOf>(&p.claim)) {
      for (std::size_t i = 0; i < any->options.size(); ++i) {
        if (i) observed += "; ";
        observed += to_string(any->options[i].target) + " " + obs.observed(any->options[i].target);
      }
    } else {
      observed = obs.observed(p.target);
    }
    out.push_back({std::string(to_string(p.rule)), describe(p), std::move(observed), v});
  }
  return out;
}

// Runs job(i) for i in [0, count) on up to `workers` threads; each job writes
// only its own slot, so the result does not depend on scheduling.
template <class Job>
void parallel_for(std::size_t count, unsigned workers, Job&& job) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) job(i);
    });
  }
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::uint32_t base) {
  std::uniform_int_distribution<std::uint32_t> d(0, base - 1);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Elem{d(rng)};
  }
  return m;
}

// Every n x n matrix with entries below base, in encoding order.
inline std::vector<Matrix> all_matrices(std::size_t n, std::uint32_t base, std::uint64_t limit) {
  const std::uint64_t total = ipow_sat(base, n * n);
  if (total > limit) throw CapacityError("sweep needs " + std::to_string(total) + " matrices");
  std::vector<Matrix> out;
  out.reserve(total);
  std::vector<Elem> e(n * n, Elem{0});
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (std::size_t i = n * n; i-- > 0;) {
      e[i] = Elem{static_cast<std::uint32_t>(x % base)};
      x /= base;
    }
    out.emplace_back(n, e);
  }
  return out;
}

inline std::vector<Matrix> sorted_unique_matrices(std::vector<Matrix> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

inline std::vector<Prediction> subfield_all_k(const FieldCtx& ctx, const Matrix& m) {
  std::vector<Prediction> out;
  for (std::uint32_t k = 0; k < ctx.q(); ++k) {
    auto p = predict_subfield(ctx, m, Elem{k});
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

}  // namespace detail

inline VerifyReport run_verify(const FieldCtx& ctx, const VerifyConfig& cfg) {
  VerifyReport rep;
  rep.scope = cfg.scope;
  rep.field = ctx.spec();
  std::mt19937_64 rng(cfg.seed);
  RangeOptions ropts = cfg.range;
  ropts.workers = 1;  // parallelism is over matrices

  // Each job gets a matrix and returns its checks.
  using Predict = std::function<std::vector<Prediction>(const Matrix&)>;
  std::vector<Matrix> mats;
  Predict predict;

  switch (cfg.scope) {
    case Scope::exhaustive_2x2:
      mats = detail::all_matrices(2, ctx.q2(), cfg.max_matrices);
      predict = [&](const Matrix& m) { return predict_full_field(ctx, m); };
      break;
    case Scope::subfield_2x2:
      mats = detail::all_matrices(2, ctx.q(), cfg.max_matrices);
      predict = [&](const Matrix& m) { return detail::subfield_all_k(ctx, m); };
      break;
    case Scope::random_nxn:
      if (cfg.n < 2) throw InputError("random-nxn needs n >= 2");
      for (std::uint64_t t = 0; t < cfg.samples; ++t) mats.push_back(detail::random_matrix(rng, cfg.n, ctx.q()));
      mats = detail::sorted_unique_matrices(std::move(mats));
      predict = [&](const Matrix& m) { return detail::subfield_all_k(ctx, m); };
      break;
    case Scope::diagonal_nxn: {
      if (cfg.n < 2) throw InputError("diagonal-nxn needs n >= 2");
      // every diagonal pattern over F_q (subfield rules) ...
      const std::uint64_t total = detail::ipow_sat(ctx.q(), cfg.n);
      if (total > cfg.max_matrices) throw CapacityError("sweep needs " + std::to_string(total) + " matrices");
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> d(cfg.n);
        std::uint64_t x = idx;
        for (std::size_t i = cfg.n; i-- > 0;) {
          d[i] = Elem{static_cast<std::uint32_t>(x % ctx.q())};
          x /= ctx.q();
        }
        mats.push_back(Matrix::diagonal(d));
      }
      // ... plus random diagonal matrices over F_{q^2} (eigenvalue rules)
      for (std::uint64_t t = 0; t < cfg.samples; ++t) {
        std::uniform_int_distribution<std::uint32_t> e(0, ctx.q2() - 1);
        std::vector<Elem> d(cfg.n);
        for (auto& v : d) v = Elem{e(rng)};
        mats.push_back(Matrix::diagonal(d));
      }
      mats = detail::sorted_unique_matrices(std::move(mats));
      predict = [&](const Matrix& m) {
        auto out = predict_diagonal(ctx, m);
        if (has_subfield_coeffs(ctx, m)) {
          auto s = detail::subfield_all_k(ctx, m);
          out.insert(out.end(), s.begin(), s.end());
        }
        return out;
      };
      break;
    }
    case Scope::scalar_fibers:
      for (std::size_t n = 2; n <= std::max<std::size_t>(cfg.n, 2); ++n) {
        if (detail::ipow_sat(ctx.q(), n) > ropts.capacity) break;
        for (std::uint32_t c = 1; c < ctx.q(); ++c) mats.push_back(Matrix::scalar(n, Elem{c}));
      }
      predict = [&](const Matrix& m) {
        auto p = predict_subfield(ctx, m, Elem{0});
        std::erase_if(p, [](const Prediction& x) { return x.rule != Rule::subfield_scalar; });
        return p;
      };
      break;
    case Scope::direct_sums: {
      struct Pair {
        Matrix a, b;
      };
      std::vector<Pair> pairs;
      for (std::uint64_t t = 0; t < cfg.samples; ++t) {
        const std::size_t na = 1 + t % 2, nb = 1 + (t / 2) % 2;
        Matrix a = detail::random_matrix(rng, na, ctx.q2());
        Matrix b = detail::random_matrix(rng, nb, ctx.q2());
        pairs.push_back({std::move(a), std::move(b)});
      }
      std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
      });
      rep.matrices.resize(pairs.size());
      detail::parallel_for(pairs.size(), cfg.workers, [&](std::size_t i) {
        const auto& [a, b] = pairs[i];
        const auto a1 = num_k(ctx, a, Elem{1}, ropts), b1 = num_k(ctx, b, Elem{1}, ropts);
        const auto a0 = num_k(ctx, a, Elem{0}, ropts), b0 = num_k(ctx, b, Elem{0}, ropts);
        std::optional<RangeSet> ap, bp;
        if (a.n() >= 2) ap = num0_prime(ctx, a, ropts);
        if (b.n() >= 2) bp = num0_prime(ctx, b, ropts);
        const auto preds =
            predict_direct_sum(ctx, a, b, {&a1, &b1, &a0, &b0, ap ? &*ap : nullptr, bp ? &*bp : nullptr});
        const Matrix m = direct_sum(a, b);
        Observations obs(ctx, m, ropts);
        rep.matrices[i] = {m, detail::run_checks(ctx, obs, preds)};
      });
      break;
    }
    case Scope::affine_law: {
      if (ctx.q() < 3) throw InputError("affine-law needs q >= 3 so that ck and ck^2 can differ");
      struct Job {
        Matrix m;
        Elem c, d;
      };
      std::vector<Job> jobs;
      for (std::uint64_t t = 0; t < cfg.samples; ++t) {
        Matrix m = detail::random_matrix(rng, 2, ctx.q2());
        jobs.push_back({std::move(m), Elem{1}, Elem{1}});
      }
      rep.matrices.resize(jobs.size());
      detail::parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) {
        std::vector<CheckRecord> checks;
        for (std::uint32_t k = 2; k < ctx.q(); ++k) {
          const AffineForm f = resolve_affine_law(ctx, jobs[i].m, jobs[i].c, jobs[i].d, Elem{k}, ropts);
          const bool ok = f == AffineForm::linear || f == AffineForm::both;
          checks.push_back({"affine_law", "num_k(k=" + std::to_string(k) + ") of cM+dI follows ck",
                            std::string(to_string(f)), ok ? Verdict::pass : Verdict::fail});
        }
        rep.matrices[i] = {jobs[i].m, std::move(checks)};
      });
      break;
    }
  }

  if (predict) {
    rep.matrices.resize(mats.size());
    detail::parallel_for(mats.size(), cfg.workers, [&](std::size_t i) {
      Observations obs(ctx, mats[i], ropts);
      rep.matrices[i] = {mats[i], detail::run_checks(ctx, obs, predict(mats[i]))};
    });
  }
  for (const auto& m : rep.matrices) {
    for (const auto& c : m.checks) rep.summary[c.citation].add(c.verdict);
  }
  return rep;
}

namespace io {

inline json to_json(const VerifyReport& rep) {
  json mats = json::array();
  for (const auto& m : rep.matrices) {
    json checks = json::array();
    for (const auto& c : m.checks) {
      checks.push_back(
          {{"citation", c.citation}, {"claim", c.claim}, {"observed", c.observed}, {"verdict", to_string(c.verdict)}});
    }
    mats.push_back({{"matrix", matrix_to_json(m.matrix)}, {"checks", std::move(checks)}});
  }
  json summary = json::object();
  for (const auto& [rule, t] : rep.summary) {
    summary[rule] = {{"pass", t.pass}, {"fail", t.fail}, {"inapplicable", t.inapplicable}};
  }
  return {{"scope", to_string(rep.scope)}, {"field", to_json(rep.field)}, {"matrix_count", rep.matrices.size()},
          {"failures", rep.failures()},    {"summary", summary},        {"matrices", mats}};
}

inline std::string to_csv(const VerifyReport& rep) {
  std::string out = "matrix,citation,claim,observed,verdict\n";
  const auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& m : rep.matrices) {
    std::string enc;
    for (std::size_t i = 0; i < m.matrix.entries().size(); ++i) {
      if (i) enc += (i % m.matrix.n() == 0) ? ";" : ",";
      enc += std::to_string(m.matrix.entries()[i].enc);
    }
    for (const auto& c : m.checks) {
      out += quote(enc) + "," + c.citation + "," + quote(c.claim) + "," + quote(c.observed) + "," +
             std::string(to_string(c.verdict)) + "\n";
    }
  }
  return out;
}

}  // namespace io

}  // namespace hnr
