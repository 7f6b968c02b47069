// hnr: compute Hermitian ranges, classify matrices and run verification sweeps.
//
// exit codes: 0 ok, 1 verification mismatch, 2 usage/input error, 3 capacity

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hnr/classify.hpp"
#include "hnr/io.hpp"
#include "hnr/verify.hpp"

namespace {

using namespace hnr;
using io::json;

struct Common {
  std::optional<std::uint32_t> p;
  std::optional<unsigned> m;
  std::uint64_t capacity = std::uint64_t{1} << 24;
  std::optional<std::uint64_t> sample_budget;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--p", c.p, "field characteristic");
  cmd->add_option("--m", c.m, "degree of F_q over F_p");
  cmd->add_option("--capacity", c.capacity, "max vectors enumerated exhaustively")->capture_default_str();
  cmd->add_option("--sample-budget", c.sample_budget, "vectors drawn when capacity is exceeded");
  cmd->add_option("--seed", c.seed, "seed for randomized work")->capture_default_str();
  cmd->add_option("--workers", c.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", c.out, "output path (default stdout)");
}

RangeOptions range_options(const Common& c) {
  RangeOptions o;
  o.capacity = c.capacity;
  o.sample_budget = c.sample_budget;
  o.seed = c.seed;
  o.workers = c.workers;
  return o;
}

FieldSpec shorthand(const Common& c) {
  if (!c.p) throw InputError("--p is required");
  return canonical_field_spec(*c.p, c.m.value_or(1));
}

// A matrix file carries its field; inline matrices use --p/--m.
io::MatrixFile load_matrix(const Common& c, const std::string& arg) {
  if (!std::ifstream(arg)) return {shorthand(c), io::parse_inline_matrix(arg)};
  auto mf = io::matrix_file_from_json(io::parse_json(io::read_file(arg)));
  if ((c.p && *c.p != mf.field.p) || (c.m && *c.m != mf.field.m)) {
    throw InputError("--p/--m disagree with the field in the matrix file");
  }
  return mf;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw InputError("cannot write '" + c.out + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_range(const Common& c, const std::string& matrix, const std::string& kind, std::uint32_t k) {
  const auto mf = load_matrix(c, matrix);
  const FieldCtx ctx(mf.field);
  const auto r = compute_range(ctx, mf.matrix, parse_range_kind(kind), ctx.element(k), range_options(c));
  emit(c, c.format == "csv" ? io::to_csv(ctx, r) : dump(io::to_json(ctx, r)));
  return 0;
}

int cmd_fibers(const Common& c, const std::string& matrix) {
  const auto mf = load_matrix(c, matrix);
  const FieldCtx ctx(mf.field);
  const auto t = fiber_table(ctx, mf.matrix, range_options(c));
  emit(c, c.format == "csv" ? io::to_csv(t) : dump(io::to_json(t)));
  return 0;
}

int cmd_classify(const Common& c, const std::string& matrix) {
  const auto mf = load_matrix(c, matrix);
  const FieldCtx ctx(mf.field);
  const Matrix& m = mf.matrix;
  std::vector<Prediction> preds;
  if (m.n() == 2) preds = predict_full_field(ctx, m);
  else if (m.n() >= 2 && m.is_diagonal()) preds = predict_diagonal(ctx, m);
  if (m.n() >= 2 && has_subfield_coeffs(ctx, m)) {
    for (std::uint32_t k = 0; k < ctx.q(); ++k) {
      auto s = predict_subfield(ctx, m, Elem{k});
      preds.insert(preds.end(), s.begin(), s.end());
    }
  }
  Observations obs(ctx, m, range_options(c));
  VerifyReport rep;
  rep.field = ctx.spec();
  rep.matrices.push_back({m, detail::run_checks(ctx, obs, preds)});
  for (const auto& r : rep.matrices[0].checks) rep.summary[r.citation].add(r.verdict);
  if (c.format == "csv") {
    emit(c, io::to_csv(rep));
  } else {
    json j = io::to_json(rep);
    j.erase("scope");
    if (m.n() == 2) {
      const auto e = eigen2(ctx, m);
      json pairs = json::array();
      for (const auto& p : e.pairs) {
        json v = json::array();
        for (Elem x : p.vector) v.push_back(x.enc);
        pairs.push_back({{"eigenvalue", p.value.enc}, {"dim", p.dim}, {"vector", v}, {"isotropic", p.isotropic}});
      }
      j["eigen"] = {{"status", to_string(e.status)}, {"pairs", pairs}};
    }
    emit(c, dump(j));
  }
  return rep.failures() == 0 ? 0 : 1;
}

int cmd_verify(const Common& c, const std::string& scope, std::size_t n, std::uint64_t samples) {
  const FieldCtx ctx(shorthand(c));
  VerifyConfig cfg;
  cfg.scope = parse_scope(scope);
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = c.seed;
  cfg.workers = c.workers;
  cfg.range = range_options(c);
  const auto rep = run_verify(ctx, cfg);
  emit(c, c.format == "csv" ? io::to_csv(rep) : dump(io::to_json(rep)));
  for (const auto& [rule, t] : rep.summary) {
    std::cerr << rule << ": pass=" << t.pass << " fail=" << t.fail << " inapplicable=" << t.inapplicable << "\n";
  }
  return rep.failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian numerical ranges and null-ranges over F_{q^2}"};
  app.require_subcommand(1);

  Common common;
  std::string matrix, kind = "num_k", scope = "exhaustive-2x2";
  std::uint32_t k = 0;
  std::size_t n = 3;
  std::uint64_t samples = 50;

  auto* range = app.add_subcommand("range", "compute a range set by brute force");
  add_common(range, common);
  range->add_option("--matrix", matrix, "matrix JSON file or inline 'a,b;c,d'")->required();
  range->add_option("--kind", kind, "num_k | num0_prime | num_k_subfield | num0_prime_subfield")->capture_default_str();
  range->add_option("--k", k, "level k (encoding, must lie in F_q)")->capture_default_str();

  auto* fibers = app.add_subcommand("fibers", "fiber table of u -> <u,Mu> on F_q^n-isotropic vectors");
  add_common(fibers, common);
  fibers->add_option("--matrix", matrix, "matrix JSON file or inline 'a,b;c,d'")->required();

  auto* classify = app.add_subcommand("classify", "closed-form predictions for one matrix, checked");
  add_common(classify, common);
  classify->add_option("--matrix", matrix, "matrix JSON file or inline 'a,b;c,d'")->required();

  auto* verify = app.add_subcommand("verify", "check predictions against brute force over a sweep");
  add_common(verify, common);
  verify->add_option("--scope", scope, "exhaustive-2x2 | subfield-2x2 | random-nxn | diagonal-nxn | "
                                       "scalar-fibers | direct-sums | affine-law")
      ->capture_default_str();
  verify->add_option("--n", n, "matrix size (largest size for scalar-fibers)")->capture_default_str();
  verify->add_option("--samples", samples, "random draws for the random scopes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*range) return cmd_range(common, matrix, kind, k);
    if (*fibers) return cmd_fibers(common, matrix);
    if (*classify) return cmd_classify(common, matrix);
    return cmd_verify(common, scope, n, samples);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
