// Command-line front end: build groups, list subgroup characters, apply the
// averaging operator, solve quotient norms, and run the verification suite.
//
// Exit codes: 0 success (verify: all checks pass), 1 verification failure,
// 2 invalid input.

#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covha/covha.hpp"

namespace {

using covha::json;

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out.good()) throw std::invalid_argument("cannot write to " + out_path);
    out << j.dump(2) << "\n";
  }
}

json subgroup_summary(const covha::Group& g, const covha::Subgroup& h) {
  const covha::CosetPartition part = covha::left_cosets(g, h);
  return json{{"order", h.order()},
              {"members", h.members},
              {"index", part.count()},
              {"coset_representatives", part.representatives},
              {"coset_of", part.coset_of}};
}

json character_to_json(const covha::Character& chi, int index) {
  json values = json::array();
  for (const covha::cplx& v : chi.values) values.push_back({v.real(), v.imag()});
  return json{{"index", index},
              {"root_order", chi.root_order},
              {"exponents", chi.exponents},
              {"values", std::move(values)},
              {"trivial", chi.trivial()}};
}

struct ContextArgs {
  std::string group_spec;
  std::string subgroup_gens;
  int char_index = 0;
};

covha::CovariantContext build_context(const ContextArgs& args, std::deque<covha::Group>& storage) {
  storage.push_back(covha::group_from_spec_string(args.group_spec));
  const covha::Group& g = storage.back();
  covha::Subgroup h = args.subgroup_gens.empty()
                          ? covha::full_subgroup(g)
                          : covha::subgroup_closure(g, parse_index_list(args.subgroup_gens));
  std::vector<covha::Character> chars = covha::enumerate_characters(h);
  if (args.char_index < 0 || args.char_index >= static_cast<int>(chars.size()))
    throw std::invalid_argument("character index out of range (0.." +
                                std::to_string(chars.size() - 1) + ")");
  return covha::make_context(g, h, std::move(chars[args.char_index]));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis of covariant functions on finite groups"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write JSON output to this path instead of stdout");

  // group
  auto* cmd_group = app.add_subcommand("group", "build and summarize a finite group");
  std::string group_spec, subgroup_gens;
  cmd_group->add_option("--spec", group_spec, "group descriptor (JSON, file, or kind:n)")
      ->required();
  cmd_group->add_option("--subgroup-gens", subgroup_gens,
                        "comma-separated generator indices for a subgroup report");

  // characters
  auto* cmd_chars = app.add_subcommand("characters", "list the characters of a subgroup");
  std::string ch_group, ch_gens;
  cmd_chars->add_option("--group", ch_group, "group descriptor")->required();
  cmd_chars->add_option("--subgroup-gens", ch_gens,
                        "generators of the subgroup (default: the whole group)");

  // apply
  auto* cmd_apply = app.add_subcommand("apply", "apply the averaging operator to a function");
  ContextArgs apply_args;
  std::string apply_fn;
  double apply_p = 2.0;
  cmd_apply->add_option("--group", apply_args.group_spec, "group descriptor")->required();
  cmd_apply->add_option("--subgroup-gens", apply_args.subgroup_gens, "subgroup generators");
  cmd_apply->add_option("--char", apply_args.char_index, "character index (default 0)");
  cmd_apply->add_option("--fn", apply_fn, "function file (JSON)")->required();
  cmd_apply->add_option("--p", apply_p, "exponent for the reported norms (default 2)");

  // quotient-norm
  auto* cmd_qn = app.add_subcommand("quotient-norm", "minimize |f + g|_p over the kernel");
  ContextArgs qn_args;
  std::string qn_fn;
  double qn_p = 2.0, qn_tol = 0.0;
  int qn_max_iter = 10000;
  cmd_qn->add_option("--group", qn_args.group_spec, "group descriptor")->required();
  cmd_qn->add_option("--subgroup-gens", qn_args.subgroup_gens, "subgroup generators");
  cmd_qn->add_option("--char", qn_args.char_index, "character index (default 0)");
  cmd_qn->add_option("--p", qn_p, "exponent (default 2)");
  cmd_qn->add_option("--fn", qn_fn, "function file (JSON)")->required();
  cmd_qn->add_option("--tol", qn_tol, "value tolerance (default 1e-6 for p=1, else 1e-8)");
  cmd_qn->add_option("--max-iter", qn_max_iter, "iteration budget (default 10000)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the full verification suite");
  std::string vf_group, vf_gens, vf_char = "all", vf_plist = "1,1.5,2,3";
  std::uint64_t vf_seed = 42;
  int vf_samples = 100, vf_qsamples = 20;
  bool vf_serial = false;
  cmd_verify->add_option("--group", vf_group,
                         "group descriptor (default: the built-in group matrix)");
  cmd_verify->add_option("--subgroup-gens", vf_gens, "subgroup generators");
  cmd_verify->add_option("--char", vf_char, "character index, or \"all\"");
  cmd_verify->add_option("--p-list", vf_plist, "comma-separated exponents (default 1,1.5,2,3)");
  cmd_verify->add_option("--seed", vf_seed, "random seed recorded in the report (default 42)");
  cmd_verify->add_option("--samples", vf_samples, "random samples per sampled check (default 100)");
  cmd_verify->add_option("--quotient-samples", vf_qsamples,
                         "random functions per quotient solve (default 20)");
  cmd_verify->add_flag("--serial", vf_serial, "disable the context-level thread fan-out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::deque<covha::Group> storage;

    if (*cmd_group) {
      const covha::Group g = covha::group_from_spec_string(group_spec);
      json j{{"order", g.order},
             {"name", g.name},
             {"identity", g.identity},
             {"abelian", g.is_abelian()},
             {"fingerprint", covha::group_fingerprint(g)}};
      if (!subgroup_gens.empty()) {
        const covha::Subgroup h = covha::subgroup_closure(g, parse_index_list(subgroup_gens));
        j["subgroup"] = subgroup_summary(g, h);
      }
      emit(j, out_path);
      return 0;
    }

    if (*cmd_chars) {
      storage.push_back(covha::group_from_spec_string(ch_group));
      const covha::Group& g = storage.back();
      const covha::Subgroup h = ch_gens.empty()
                                    ? covha::full_subgroup(g)
                                    : covha::subgroup_closure(g, parse_index_list(ch_gens));
      const auto chars = covha::enumerate_characters(h);
      const covha::AbelianizationData ab = covha::abelianization(h);
      json list = json::array();
      for (size_t i = 0; i < chars.size(); ++i)
        list.push_back(character_to_json(chars[i], static_cast<int>(i)));
      emit(json{{"group", covha::group_fingerprint(g)},
                {"subgroup_members", h.members},
                {"count", chars.size()},
                {"invariant_factors", ab.invariant_factors},
                {"characters", std::move(list)}},
           out_path);
      return 0;
    }

    if (*cmd_apply) {
      const covha::CovariantContext ctx = build_context(apply_args, storage);
      const covha::GroupFunction f =
          covha::function_from_json(covha::load_json_file(apply_fn), *ctx.group);
      const covha::GroupFunction tf = covha::average(ctx, f);
      json j{{"result", covha::function_to_json(tf)},
             {"p", apply_p},
             {"norm_f", covha::lp_norm(f, apply_p, ctx.lambda_G)},
             {"norm_Tf", covha::lp_norm(tf, apply_p, ctx.lambda_G)},
             {"covariance_residual", covha::covariance_residual(ctx, tf)}};
      emit(j, out_path);
      return 0;
    }

    if (*cmd_qn) {
      const covha::CovariantContext ctx = build_context(qn_args, storage);
      const covha::GroupFunction f =
          covha::function_from_json(covha::load_json_file(qn_fn), *ctx.group);
      covha::QuotientProblem prob = covha::make_quotient_problem(ctx, f, qn_p);
      const covha::QuotientNormResult res = covha::quotient_norm(prob, qn_tol, qn_max_iter);
      const double direct = covha::lp_norm(covha::average(ctx, f), qn_p, ctx.lambda_G);
      emit(json{{"p", qn_p},
                {"value", res.value},
                {"direct_norm_Tf", direct},
                {"gap", std::abs(res.value - direct)},
                {"iterations", res.iterations},
                {"method", res.method},
                {"residual", res.residual},
                {"converged", res.converged},
                {"kernel_rank", prob.kernel.rank}},
           out_path);
      return 0;
    }

    if (*cmd_verify) {
      covha::VerifyOptions opt;
      opt.p_list.clear();
      {
        std::stringstream ss(vf_plist);
        std::string tok;
        while (std::getline(ss, tok, ','))
          if (!tok.empty()) opt.p_list.push_back(std::stod(tok));
      }
      if (opt.p_list.empty()) throw std::invalid_argument("empty p list");
      for (double p : opt.p_list)
        if (!(p >= 1.0)) throw std::invalid_argument("exponents must satisfy p >= 1");
      opt.seed = vf_seed;
      opt.samples = vf_samples;
      opt.quotient_samples = vf_qsamples;
      opt.parallel = !vf_serial;

      std::vector<covha::CovariantContext> ctxs;
      if (vf_group.empty()) {
        ctxs = covha::standard_contexts(storage);
      } else {
        storage.push_back(covha::group_from_spec_string(vf_group));
        const covha::Group& g = storage.back();
        covha::Subgroup h = vf_gens.empty()
                                ? covha::full_subgroup(g)
                                : covha::subgroup_closure(g, parse_index_list(vf_gens));
        const int char_index = vf_char == "all" ? -1 : std::stoi(vf_char);
        ctxs = covha::contexts_for(g, h, char_index);
      }
      const covha::VerificationReport report = covha::run_verification(ctxs, opt);
      emit(report.to_json(), out_path);
      std::cerr << "verified " << report.context_count << " contexts in "
                << report.elapsed_seconds << " s\n";
      for (const auto& e : report.entries)
        std::cerr << (e.applicable ? (e.pass ? "[PASS] " : "[FAIL] ") : "[  - ] ") << e.id
                  << " residual=" << e.residual << " tol=" << e.tolerance << "\n";
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
