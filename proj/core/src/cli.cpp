#include "approxlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "approxlab/certificates.hpp"
#include "approxlab/filtration.hpp"
#include "approxlab/lie.hpp"
#include "approxlab/profile.hpp"
#include "approxlab/scales.hpp"
#include "approxlab/set_term.hpp"
#include "approxlab/suites.hpp"
#include "approxlab/zoo.hpp"

namespace approxlab {

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

Rat parse_rat_arg(const std::string& text, const char* what) {
  auto r = parse_rat(text);
  if (!r) throw std::runtime_error(std::string(what) + ": not a rational: \"" + text + "\"");
  return *r;
}

std::vector<Rat> parse_ladder_arg(const std::string& text) {
  std::vector<Rat> radii;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!piece.empty()) radii.push_back(parse_rat_arg(piece, "--ladder"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (radii.empty()) throw std::runtime_error("--ladder: no radii given");
  return radii;
}

std::vector<int> parse_elements_arg(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string piece =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!piece.empty()) out.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::runtime_error("--elements: empty list");
  return out;
}

// Shared input plumbing: a group (from --group or --instance) plus a bound
// set-term environment with G = whole group and X = instance set/--elements.
struct SetContext {
  GroupPtr group;
  std::map<std::string, ElementSet> env;

  ElementSet eval(const std::string& term_text) const {
    const TermPtr term = parse_set_term(term_text);
    for (const std::string& name : term_variables(term))
      if (!env.count(name))
        throw std::runtime_error("set term uses unbound name \"" + name +
                                 "\" (bind X via --elements or --instance)");
    return eval_set_term(term, env, group);
  }
};

SetContext make_context(const std::string& group_path, const std::string& instance_path,
                        const std::string& elements) {
  SetContext ctx;
  if (!instance_path.empty()) {
    auto [g, x] = load_instance(instance_path);
    ctx.group = g;
    ctx.env.emplace("X", x);
  } else if (!group_path.empty()) {
    ctx.group = load_group(group_path);
  } else {
    throw std::runtime_error("one of --group or --instance is required");
  }
  if (!elements.empty()) {
    std::vector<int> idx = parse_elements_arg(elements);
    for (int v : idx)
      if (v < 0 || v >= ctx.group->order())
        throw std::runtime_error("--elements: index " + std::to_string(v) + " out of range");
    ctx.env.insert_or_assign("X", ElementSet(ctx.group, idx));
  }
  ctx.env.emplace("G", ElementSet::whole_group(ctx.group));
  return ctx;
}

void emit(const json& artifact, bool pretty) {
  std::cout << (pretty ? artifact.dump(2) : artifact.dump()) << "\n";
}

int verdict_exit(const LemmaReport& rep, bool require_exact) {
  if (rep.violated()) return 1;
  if (rep.verified() || rep.vacuous()) {
    // An unevaluated gate is a budget question, not a verdict.
    if (!rep.gate_checked) return require_exact ? 3 : 1;
    return 0;
  }
  return require_exact ? 3 : 1;  // gate passed, conclusion undetermined
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"discretisation numbers, approximate-subgroup certificates and "
               "verification suites over finite metric groups"};
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  bool require_exact = false;
  int threads = 1;
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_flag("--require-exact", require_exact,
               "exit 3 when the solver budget prevents an exact answer");
  app.add_option("--threads", threads, "worker threads (reserved; solvers are sequential)")
      ->check(CLI::PositiveNumber);

  std::string group_path, instance_path, elements, set_term_text = "X";

  auto add_input_opts = [&](CLI::App* sub) {
    sub->add_option("--group", group_path, "group file (JSON)");
    sub->add_option("--instance", instance_path, "instance file (binds X)");
    sub->add_option("--elements", elements, "comma-separated element indices binding X");
    sub->add_option("--set", set_term_text,
                    "set term over X, G, 1 (products, ^, D[r](...), [.,.])");
  };

  CLI::App* cmd_validate = app.add_subcommand("validate", "validate a group file");
  std::string validate_path;
  cmd_validate->add_option("--group", validate_path, "group file (JSON)")->required();

  CLI::App* cmd_profile = app.add_subcommand("profile", "multi-scale packing/covering CSV");
  std::string ladder_text, pool_term_text = "G";
  add_input_opts(cmd_profile);
  cmd_profile->add_option("--ladder", ladder_text, "comma-separated radii, 2*r[i+1] <= r[i]")
      ->required();
  cmd_profile->add_option("--pool", pool_term_text, "covering-center pool term (default G)");

  CLI::App* cmd_detect = app.add_subcommand("detect", "approximate-subgroup certificate");
  int detect_k = 0;
  std::string detect_r;
  add_input_opts(cmd_detect);
  cmd_detect->add_option("--k", detect_k, "translate budget")->required();
  cmd_detect->add_option("--r", detect_r, "thickening radius (rational)")->required();

  CLI::App* cmd_scales = app.add_subcommand("scales", "doubling-scale selection pipeline");
  int scales_m = 0, scales_n = 0, scales_k = 0;
  std::string scales_c;
  add_input_opts(cmd_scales);
  cmd_scales->add_option("--m", scales_m, "dyadic depth (delta = 2^-m)")->required();
  cmd_scales->add_option("--n", scales_n, "number of scales to select")->required();
  cmd_scales->add_option("--k", scales_k, "approximate-subgroup constant")->required();
  cmd_scales->add_option("--C", scales_c, "growth constant (rational)")->required();

  CLI::App* cmd_lemmas = app.add_subcommand("lemmas", "seeded verification suites");
  std::string suite_id;
  std::uint64_t suite_seed = 0;
  int suite_count = 100;
  cmd_lemmas->add_option("--suite", suite_id, "all or one of 1.1..1.9")->required();
  cmd_lemmas->add_option("--seed", suite_seed, "suite seed (mandatory: no wall-clock entropy)")
      ->required();
  cmd_lemmas->add_option("--count", suite_count, "instances per suite")
      ->check(CLI::NonNegativeNumber);

  CLI::App* cmd_filtration = app.add_subcommand("filtration", "verify a descending chain");
  std::string chain_path;
  cmd_filtration->add_option("--chain-file", chain_path, "chain description (JSON)")->required();

  CLI::App* cmd_lie = app.add_subcommand("lie", "neighbourhood-ladder verification on a chart");
  std::string chart_arg;
  int lie_nmax = 6, lie_samples = 10000;
  std::optional<std::uint64_t> lie_seed;
  std::optional<double> lie_safety;
  cmd_lie->add_option("--chart", chart_arg, "chart spec file, or preset so3 | sl2")->required();
  cmd_lie->add_option("--nmax", lie_nmax, "ladder depth")->check(CLI::NonNegativeNumber);
  cmd_lie->add_option("--samples", lie_samples, "samples per property")
      ->check(CLI::PositiveNumber);
  cmd_lie->add_option("--seed", lie_seed, "override the chart seed");
  cmd_lie->add_option("--safety", lie_safety, "override the chart safety factor");

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate an instance file from a spec");
  std::string gen_spec_path, gen_out;
  std::uint64_t gen_seed = 0;
  std::string gen_group_out;
  cmd_gen->add_option("--spec", gen_spec_path, "instance spec (JSON)")->required();
  cmd_gen->add_option("--seed", gen_seed, "seed (overrides the spec)")->required();
  cmd_gen->add_option("--out", gen_out, "instance file to write")->required();
  cmd_gen->add_option("--group-out", gen_group_out, "also write the group file and reference it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_rc = app.exit(e);  // prints help or the error message
    return cli_rc == 0 ? 0 : 2;
  }

  const SolveOptions opts;  // node budget from APPROXLAB_NODE_BUDGET, else 10^7

  try {
    if (app.got_subcommand(cmd_validate)) {
      const GroupData data = group_data_from_json(load_json(validate_path));
      const ValidationReport report = validate_group(data);
      emit(report.to_json(), pretty);
      return report.ok ? 0 : 1;
    }

    if (app.got_subcommand(cmd_profile)) {
      const SetContext ctx = make_context(group_path, instance_path, elements);
      const ElementSet X = ctx.eval(set_term_text);
      const ElementSet Y = ctx.eval(pool_term_text);
      const ScaleLadder ladder = ScaleLadder::make(parse_ladder_arg(ladder_text));
      const std::vector<ProfileRow> rows = scale_profile(X, Y, ladder, opts);
      std::cout << profile_csv(rows);
      if (require_exact)
        for (const ProfileRow& row : rows)
          if (row.packing.status == SolveStatus::Budget ||
              row.covering.status == SolveStatus::Budget)
            return 3;
      return 0;
    }

    if (app.got_subcommand(cmd_detect)) {
      const SetContext ctx = make_context(group_path, instance_path, elements);
      const ElementSet X = ctx.eval(set_term_text);
      const DetectResult res =
          is_metric_approx_subgroup(X, detect_k, parse_rat_arg(detect_r, "--r"), std::nullopt, opts);
      emit(res.to_json(), pretty);
      if (!res.determined) return require_exact ? 3 : 1;
      return res.passed ? 0 : 1;
    }

    if (app.got_subcommand(cmd_scales)) {
      const SetContext ctx = make_context(group_path, instance_path, elements);
      const ElementSet X = ctx.eval(set_term_text);
      const SelectScalesResult res =
          select_scales(X, scales_m, scales_n, scales_k, parse_rat_arg(scales_c, "--C"), opts);
      emit(res.to_json(), pretty);
      return verdict_exit(res.report, require_exact);
    }

    if (app.got_subcommand(cmd_lemmas)) {
      std::vector<std::string> ids;
      if (suite_id == "all")
        for (const auto& [id, name] : suite_catalog()) ids.push_back(id);
      else
        ids.push_back(suite_id);
      json out;
      out["seed"] = suite_seed;
      out["count"] = suite_count;
      json suites = json::array();
      int violations = 0, undetermined = 0;
      bool all_ok = true;
      for (const std::string& id : ids) {
        const SuiteResult res = run_suite(id, suite_seed, suite_count, opts);
        violations += res.violations;
        undetermined += res.undetermined;
        all_ok = all_ok && res.ok();
        suites.push_back(res.to_json());
      }
      out["suites"] = suites;
      out["violations"] = violations;
      out["undetermined"] = undetermined;
      out["ok"] = all_ok;
      emit(out, pretty);
      if (violations > 0) return 1;
      if (undetermined > 0 && require_exact) return 3;
      return 0;
    }

    if (app.got_subcommand(cmd_filtration)) {
      const json chain_json = load_json(chain_path);
      GroupPtr g;
      const json& group_ref = chain_json.at("group");
      if (group_ref.is_string()) {
        std::filesystem::path p(group_ref.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(chain_path).parent_path() / p;
        g = load_group(p.string());
      } else {
        g = group_from_json(group_ref);
      }
      auto set_of = [&](const json& arr) {
        return ElementSet(g, arr.get<std::vector<int>>());
      };
      std::vector<ElementSet> chain;
      for (const json& level : chain_json.at("chain")) chain.push_back(set_of(level));
      const ElementSet base = set_of(chain_json.at("base"));
      auto r_s = rat_from_json(chain_json.at("r_s"));
      if (!r_s) throw std::runtime_error("chain file: r_s is not a rational");
      const Filtration f =
          Filtration::make(std::move(chain), base, *r_s, chain_json.at("c").get<int>());
      const FiltrationReport report = filtration_check(f, opts);
      emit(report.to_json(), pretty);
      const auto verdict = report.all_passed();
      if (!verdict) return require_exact ? 3 : 1;
      return *verdict ? 0 : 1;
    }

    if (app.got_subcommand(cmd_lie)) {
      LieChart chart;
      if (chart_arg == "so3")
        chart = LieChart::so3();
      else if (chart_arg == "sl2")
        chart = LieChart::sl2();
      else
        chart = LieChart::from_spec(load_json(chart_arg));
      if (lie_seed) chart.seed = *lie_seed;
      if (lie_safety) {
        if (*lie_safety < 1.0) throw std::runtime_error("--safety must be >= 1");
        chart.safety = *lie_safety;
      }
      estimate_constants(chart);
      const json out = verify_chart(chart, lie_nmax, lie_samples, chart.seed);
      emit(out, pretty);
      return out.at("all_passed").get<bool>() ? 0 : 1;
    }

    if (app.got_subcommand(cmd_gen)) {
      InstanceSpec spec = InstanceSpec::from_json(load_json(gen_spec_path));
      spec.seed = gen_seed;
      std::string group_ref;
      if (!gen_group_out.empty()) {
        const GroupPtr g = make_group(spec.group);
        save_group(gen_group_out, *g);
        // Store the reference relative to the instance file when possible.
        std::filesystem::path base = std::filesystem::path(gen_out).parent_path();
        if (base.empty()) base = ".";
        std::filesystem::path rel = std::filesystem::relative(gen_group_out, base);
        group_ref = rel.empty() ? gen_group_out : rel.string();
      }
      save_instance(gen_out, spec, group_ref);
      auto [g, x] = load_instance(gen_out);  // round-trip sanity before reporting
      json out;
      out["written"] = gen_out;
      out["group_hash"] = content_hash_hex(*g);
      out["set_size"] = x.count();
      emit(out, pretty);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace approxlab
