#include "summa/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <functional>
#include <thread>

#include "summa/simonslab.hpp"

namespace summa::cli {

using io::json;
using simonslab::CheckOptions;
using simonslab::Instance;
using simonslab::PMapSpec;
using simonslab::SuiteParams;
using simonslab::TheoremReport;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

using Row = std::vector<std::string>;

std::string render_csv(const Row& header, const std::vector<Row>& rows) {
  std::string out;
  auto append_row = [&out](const Row& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto& r : rows) append_row(r);
  return out;
}

std::string render_markdown(const Row& header, const std::vector<Row>& rows) {
  std::string out;
  auto append_row = [&out](const Row& row) {
    out += '|';
    for (const auto& cell : row) {
      out += ' ';
      out += cell.empty() ? " " : cell;
      out += " |";
    }
    out += '\n';
  };
  append_row(header);
  out += '|';
  for (size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += '\n';
  for (const auto& r : rows) append_row(r);
  return out;
}

std::string vec_cell(const convexdual::Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  s += ')';
  return s;
}

u64 effective_seed(const json& config, const Overrides& ov) {
  if (ov.seed) return *ov.seed;
  if (config.contains("seed")) return config.at("seed").get<u64>();
  return 0;
}

i64 effective_depth(const json& config, const Overrides& ov) {
  if (ov.depth) return *ov.depth;
  if (config.contains("depth")) return config.at("depth").get<i64>();
  return 100'000;
}

Tolerances effective_tols(const json& config, const Overrides& ov) {
  Tolerances t;
  if (config.contains("tolerances")) {
    const auto& j = config.at("tolerances");
    if (j.contains("exact")) t.exact = j.at("exact").get<double>();
    if (j.contains("numeric")) t.numeric = j.at("numeric").get<double>();
    if (j.contains("sampled")) t.sampled = j.at("sampled").get<double>();
  }
  if (ov.tol_exact) t.exact = *ov.tol_exact;
  if (ov.tol_numeric) t.numeric = *ov.tol_numeric;
  if (ov.tol_sampled) t.sampled = *ov.tol_sampled;
  return t;
}

/// Index-parallel loop with deterministic output ordering: results land in
/// a pre-sized vector keyed by index, so scheduling cannot reorder them.
void parallel_for(i64 count, int jobs, const std::function<void(i64)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (i64 i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<i64> next{0};
  auto worker = [&] {
    for (;;) {
      const i64 i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(jobs, int(std::max<i64>(count, 1)));
  pool.reserve(size_t(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

json parse_required(const json& config, const char* field) {
  if (!config.contains(field))
    throw ConfigError(std::string("config: missing required field '") + field +
                      "'");
  return config.at(field);
}

}  // namespace

RunResult run_classify(const json& config, const Overrides& ov) {
  RunResult result;
  summability::ClassifyOptions opt;
  opt.depth = effective_depth(config, ov);
  opt.numeric_tol = effective_tols(config, ov).numeric;

  struct Entry {
    std::string id;
    seqcore::SequenceSpec spec;
  };
  std::vector<Entry> sequences;
  for (const auto& s : parse_required(config, "sequences")) {
    Entry e{parse_required(s, "id").get<std::string>(),
            io::sequence_from_json(parse_required(s, "spec"))};
    sequences.push_back(std::move(e));
  }

  struct Method {
    std::string label;
    std::function<summability::ConvergenceVerdict(const seqcore::SequenceSpec&)>
        run;
  };
  std::vector<Method> methods;
  for (const auto& m : parse_required(config, "methods")) {
    const std::string name = parse_required(m, "name").get<std::string>();
    if (name == "ordinary") {
      methods.push_back({"ordinary", [opt](const seqcore::SequenceSpec& s) {
                           return summability::classify_ordinary(s, opt);
                         }});
    } else if (name == "statistical") {
      auto A = io::matrix_from_json(parse_required(m, "matrix"));
      methods.push_back({"statistical(" + A.name() + ")",
                         [opt, A](const seqcore::SequenceSpec& s) {
                           return summability::classify_statistical(A, s, opt);
                         }});
    } else if (name == "strong") {
      auto A = io::matrix_from_json(parse_required(m, "matrix"));
      const double p = parse_required(m, "p").get<double>();
      methods.push_back({"strong(" + A.name() + " p=" + format_double(p) + ")",
                         [opt, A, p](const seqcore::SequenceSpec& s) {
                           return summability::classify_strong(A, s, p, opt);
                         }});
    } else if (name == "almost") {
      methods.push_back({"almost", [opt](const seqcore::SequenceSpec& s) {
                           return summability::classify_almost(s, opt);
                         }});
    } else if (name == "pre_cauchy") {
      methods.push_back({"pre_cauchy", [opt](const seqcore::SequenceSpec& s) {
                           return summability::classify_pre_cauchy(s, opt);
                         }});
    } else {
      throw ConfigError("unknown classify method '" + name + "'");
    }
  }

  const Row header = {"sequence_id", "method",    "status", "limit",
                      "exactness",   "depth",     "last_term"};
  std::vector<Row> rows(sequences.size() * methods.size());
  parallel_for(i64(rows.size()), ov.jobs, [&](i64 idx) {
    const auto& entry = sequences[size_t(idx) / methods.size()];
    const auto& method = methods[size_t(idx) % methods.size()];
    Row row(7);
    row[0] = entry.id;
    row[1] = method.label;
    try {
      const auto v = method.run(entry.spec);
      switch (v.status) {
        case summability::ConvergenceVerdict::Status::Converges:
          row[2] = "converges";
          row[3] = format_double(v.limit);
          break;
        case summability::ConvergenceVerdict::Status::Diverges:
          row[2] = "diverges";
          break;
        default:
          row[2] = "unknown";
      }
      if (v.status != summability::ConvergenceVerdict::Status::Unknown)
        row[4] = v.exact ? "exact" : "numeric";
      row[5] = std::to_string(v.depth);
      row[6] = v.samples.empty() ? std::string()
                                 : format_double(v.samples.back().second);
    } catch (const std::exception& e) {
      row[2] = "error";
      row[6] = e.what();
      std::replace(row[6].begin(), row[6].end(), ',', ';');
    }
    rows[size_t(idx)] = std::move(row);
  });
  for (const auto& row : rows)
    if (row[2] == "error") ++result.errors;

  result.csv = render_csv(header, rows);
  result.markdown = render_markdown(header, rows);
  return result;
}

RunResult run_regularity(const json& config, const Overrides& ov) {
  RunResult result;
  const i64 depth = ov.depth.value_or(
      config.contains("depth") ? config.at("depth").get<i64>() : 10'000);
  const double tol =
      config.contains("tol") ? config.at("tol").get<double>()
                             : effective_tols(config, ov).numeric;

  const Row header = {"matrix", "check", "status", "witness", "value"};
  std::vector<Row> rows;
  for (const auto& mj : parse_required(config, "matrices")) {
    const auto A = io::matrix_from_json(mj);
    try {
      const auto report = summability::toeplitz_falsify(A, depth, tol);
      auto emit = [&](const char* check,
                      const summability::ToeplitzSubVerdict& v) {
        rows.push_back({A.name(), check,
                        v.consistent ? "consistent" : "REFUTED",
                        v.consistent ? "" : std::to_string(v.witness),
                        format_double(v.value)});
        if (!v.consistent) ++result.violations;
      };
      emit("row_norms", report.row_norms);
      emit("row_sums_to_one", report.row_sums_to_one);
      emit("columns_to_zero", report.columns_to_zero);
    } catch (const DeclaredRegularContradiction& e) {
      rows.push_back({A.name(), "declared_regular", "REFUTED", "", ""});
      ++result.violations;
      (void)e;
    }
  }
  result.csv = render_csv(header, rows);
  result.markdown = render_markdown(header, rows);
  return result;
}

namespace {

SuiteParams suite_params_from(const json& suite) {
  SuiteParams p;
  if (suite.contains("dims")) {
    p.dims.clear();
    for (const auto& d : suite.at("dims")) p.dims.push_back(d.get<int>());
  }
  if (suite.contains("min_vertices"))
    p.min_vertices = suite.at("min_vertices").get<int>();
  if (suite.contains("max_vertices"))
    p.max_vertices = suite.at("max_vertices").get<int>();
  if (suite.contains("max_period"))
    p.max_period = suite.at("max_period").get<int>();
  if (suite.contains("max_preperiod"))
    p.max_preperiod = suite.at("max_preperiod").get<int>();
  if (suite.contains("value_range")) {
    p.value_lo = suite.at("value_range").at(0).get<double>();
    p.value_hi = suite.at("value_range").at(1).get<double>();
  }
  if (suite.contains("sequence_kind"))
    p.constant_sequences =
        suite.at("sequence_kind").get<std::string>() == "constant";
  return p;
}

struct VerifyContext {
  std::vector<Instance> instances;
  CheckOptions check;
  u64 seed = 0;
};

/// Builds the instance list: either a fixed body/set with explicit or
/// generated sequences, or fully generated random instances.
VerifyContext build_instances(const json& config, const Overrides& ov) {
  VerifyContext ctx;
  ctx.seed = effective_seed(config, ov);
  ctx.check.depth = effective_depth(config, ov);
  ctx.check.tols = effective_tols(config, ov);
  if (config.contains("waive_generation_check"))
    ctx.check.waive_generation_check =
        config.at("waive_generation_check").get<bool>();

  const bool has_body = config.contains("body");
  if (has_body) {
    auto body = io::body_from_json(config.at("body"));
    auto gset = config.contains("generating_set")
                    ? io::set_from_json(config.at("generating_set"), body)
                    : convexdual::GeneratingSet::finite_points(
                          convexdual::extreme_points(body.as_polytope()), body);
    // One generation probe for the whole batch; the pair never changes.
    if (!ctx.check.waive_generation_check) {
      const double tol =
          body.is_polytope() ? ctx.check.tols.exact : ctx.check.tols.sampled;
      ctx.check.generation_known =
          convexdual::i_generates(gset, body, tol).generates;
    }
    std::vector<seqcore::VectorSequence> sequences;
    if (config.contains("suite")) {
      const auto& suite = config.at("suite");
      const SuiteParams params = suite_params_from(suite);
      const i64 count = parse_required(suite, "instances").get<i64>();
      for (i64 i = 0; i < count; ++i)
        sequences.push_back(simonslab::generate_sequence(
            params, body.dimension(), ctx.seed, u64(i)));
    } else {
      for (const auto& sj : parse_required(config, "sequences"))
        sequences.push_back(io::vector_sequence_from_json(sj));
    }
    for (auto& xs : sequences)
      ctx.instances.push_back(Instance{body, gset, std::move(xs)});
    return ctx;
  }

  const auto& suite = parse_required(config, "suite");
  const SuiteParams params = suite_params_from(suite);
  const i64 count = parse_required(suite, "instances").get<i64>();
  for (i64 i = 0; i < count; ++i)
    ctx.instances.push_back(
        simonslab::generate_instance(params, ctx.seed, u64(i)));
  return ctx;
}

const Row kVerifyHeader = {"instance_id", "experiment", "lhs",
                           "rhs",         "M",          "satisfied",
                           "exactness_lhs", "exactness_rhs", "witness"};

Row report_row(i64 instance_id, const std::string& experiment,
               const TheoremReport& r) {
  Row row(9);
  row[0] = std::to_string(instance_id);
  row[1] = experiment;
  row[2] = format_double(r.lhs);
  row[3] = format_double(r.rhs);
  row[4] = format_double(r.factor_m);
  if (r.hypothesis_checked && !r.hypothesis_met) {
    row[5] = "hypothesis_unmet";
  } else {
    row[5] = r.satisfied ? "true" : "false";
  }
  row[6] = r.lhs_exact ? "exact" : "approximate";
  row[7] = r.rhs_exact ? "exact" : "approximate";
  if (!r.satisfied && !r.lhs_argmax.empty()) row[8] = vec_cell(r.lhs_argmax);
  return row;
}

void count_row(const Row& row, RunResult& result) {
  if (row[5] == "false")
    ++result.violations;
  else if (row[5] == "hypothesis_unmet")
    ++result.hypothesis_unmet;
  else if (row[5] == "error")
    ++result.errors;
}

}  // namespace

RunResult run_verify(const json& config, const Overrides& ov) {
  RunResult result;
  const std::string experiment =
      parse_required(config, "experiment").get<std::string>();
  std::vector<Row> rows;

  if (experiment == "audit") {
    const int samples = config.contains("samples")
                            ? config.at("samples").get<int>()
                            : 200;
    const u64 seed = effective_seed(config, ov);
    i64 id = 0;
    for (const auto& pj : parse_required(config, "pmaps")) {
      const PMapSpec pmap = io::pmap_from_json(pj);
      std::optional<double> claim;
      if (pj.contains("claim_m")) claim = pj.at("claim_m").get<double>();
      const auto report =
          simonslab::pmap_condition_audit(pmap, samples, seed, claim);
      Row row(9);
      row[0] = std::to_string(id++);
      row[1] = "audit(" + pmap.label() + ")";
      row[2] = "";
      row[3] = "";
      row[4] = format_double(report.audited_m);
      row[5] = report.all_passed() ? "true" : "false";
      row[6] = "sampled";
      row[7] = "sampled";
      for (const auto& c : report.checks)
        if (!c.passed) {
          row[8] = c.name;
          break;
        }
      count_row(row, result);
      rows.push_back(std::move(row));
    }
    result.csv = render_csv(kVerifyHeader, rows);
    result.markdown = render_markdown(kVerifyHeader, rows);
    return result;
  }

  VerifyContext ctx = build_instances(config, ov);

  if (experiment == "simons") {
    rows.resize(ctx.instances.size());
    parallel_for(i64(ctx.instances.size()), ov.jobs, [&](i64 i) {
      const auto& inst = ctx.instances[size_t(i)];
      const auto report = simonslab::check_simons(inst.body, inst.generating_set,
                                                  inst.xs, ctx.check);
      rows[size_t(i)] = report_row(i, "simons", report);
    });
  } else if (experiment == "theorem31") {
    std::vector<PMapSpec> pmaps;
    if (config.contains("pmaps")) {
      for (const auto& pj : config.at("pmaps"))
        pmaps.push_back(io::pmap_from_json(pj));
    } else {
      pmaps.push_back(io::pmap_from_json(parse_required(config, "pmap")));
    }
    rows.resize(ctx.instances.size() * pmaps.size());
    parallel_for(i64(rows.size()), ov.jobs, [&](i64 idx) {
      const auto& inst = ctx.instances[size_t(idx) / pmaps.size()];
      const auto& pmap = pmaps[size_t(idx) % pmaps.size()];
      Row row;
      try {
        const auto report = simonslab::check_pmap_bound(
            pmap, inst.body, inst.generating_set, inst.xs, ctx.check);
        row = report_row(idx, "theorem31(" + pmap.label() + ")", report);
      } catch (const HypothesisNotVerified&) {
        row = Row{std::to_string(idx), "theorem31(" + pmap.label() + ")",
                  "",  "", format_double(pmap.quasi_additivity_m()),
                  "hypothesis_unmet", "", "", ""};
      }
      rows[size_t(idx)] = std::move(row);
    });
  } else if (experiment == "cor33") {
    std::vector<double> ps;
    if (config.contains("p_values")) {
      for (const auto& pv : config.at("p_values")) ps.push_back(pv.get<double>());
    } else {
      ps.push_back(parse_required(config, "p").get<double>());
    }
    const auto A = config.contains("matrix")
                       ? io::matrix_from_json(config.at("matrix"))
                       : summability::builtin_matrix("cesaro");
    rows.resize(ctx.instances.size() * ps.size());
    parallel_for(i64(rows.size()), ov.jobs, [&](i64 idx) {
      const auto& inst = ctx.instances[size_t(idx) / ps.size()];
      const double p = ps[size_t(idx) % ps.size()];
      Row row;
      try {
        const auto report = simonslab::check_strong_equality(
            inst.body, inst.generating_set, A, p, inst.xs, ctx.check);
        row = report_row(idx, "cor33(p=" + format_double(p) + ")", report);
      } catch (const HypothesisNotVerified&) {
        row = Row{std::to_string(idx), "cor33(p=" + format_double(p) + ")",
                  "", "", "1", "hypothesis_unmet", "", "", ""};
      }
      rows[size_t(idx)] = std::move(row);
    });
  } else if (experiment == "rainwater") {
    const auto& rj = parse_required(config, "rainwater");
    simonslab::RainwaterSpec spec;
    const std::string method = parse_required(rj, "method").get<std::string>();
    if (method == "strong")
      spec.method = simonslab::RainwaterMethod::Strong;
    else if (method == "statistical")
      spec.method = simonslab::RainwaterMethod::Statistical;
    else if (method == "fa")
      spec.method = simonslab::RainwaterMethod::FA;
    else if (method == "pre_cauchy")
      spec.method = simonslab::RainwaterMethod::PreCauchy;
    else
      throw ConfigError("unknown rainwater method '" + method + "'");
    if (rj.contains("matrix"))
      spec.matrix = io::matrix_from_json(rj.at("matrix"));
    if (rj.contains("p")) spec.p = rj.at("p").get<double>();
    if (rj.contains("exponents"))
      spec.exponents = io::sequence_from_json(rj.at("exponents"));
    convexdual::Vec x;
    for (const auto& c : parse_required(rj, "x")) x.push_back(c.get<double>());

    simonslab::RainwaterOptions ropt;
    ropt.depth = ctx.check.depth;
    ropt.numeric_tol = ctx.check.tols.numeric;

    rows.resize(ctx.instances.size());
    parallel_for(i64(ctx.instances.size()), ov.jobs, [&](i64 i) {
      const auto& inst = ctx.instances[size_t(i)];
      const auto report = simonslab::rainwater_check(inst.generating_set,
                                                     inst.xs, x, spec, ropt);
      Row row(9);
      row[0] = std::to_string(i);
      row[1] = "rainwater(" + method + ")";
      row[4] = "1";
      switch (report.status) {
        case simonslab::RainwaterReport::Status::Holds:
          row[5] = "true";
          break;
        case simonslab::RainwaterReport::Status::Violated:
          row[5] = "false";
          break;
        default:
          row[5] = "hypothesis_unmet";
      }
      if (report.witness) row[8] = vec_cell(*report.witness);
      rows[size_t(i)] = std::move(row);
    });
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }

  for (const auto& row : rows) count_row(row, result);
  result.csv = render_csv(kVerifyHeader, rows);
  result.markdown = render_markdown(kVerifyHeader, rows);
  return result;
}

RunResult run_subcommand(const std::string& subcommand, const json& config,
                         const Overrides& ov) {
  if (config.contains("experiment")) {
    const std::string exp = config.at("experiment").get<std::string>();
    const bool verify_kind = exp == "simons" || exp == "theorem31" ||
                             exp == "cor33" || exp == "rainwater" ||
                             exp == "audit";
    if (subcommand == "verify" && !verify_kind)
      throw ConfigError("config experiment '" + exp +
                        "' does not match the verify subcommand");
    if (subcommand == "classify" && exp != "classify")
      throw ConfigError("config experiment '" + exp +
                        "' does not match the classify subcommand");
    if (subcommand == "regularity" && exp != "regularity")
      throw ConfigError("config experiment '" + exp +
                        "' does not match the regularity subcommand");
  }
  if (subcommand == "classify") return run_classify(config, ov);
  if (subcommand == "regularity") return run_regularity(config, ov);
  if (subcommand == "verify") return run_verify(config, ov);
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

}  // namespace summa::cli
