// Command-line front door: build instances, run verification suites, compute
// norms, export structures.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 capability/coverage error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "dgk/examples.hpp"
#include "dgk/json_io.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCoverage = 3;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw dgk::DomainError("parameter '" + kv + "' is not of the form key=value");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream os(output_path);
  if (!os) throw std::runtime_error("cannot open output file " + output_path);
  os << text << std::endl;
}

json report_header(const std::string& command, const std::string& example,
                   const std::map<std::string, std::string>& params, std::uint64_t seed) {
  return json{{"command", command}, {"example", example}, {"params", params}, {"seed", seed}};
}

dgk::Structure parse_structure(const std::string& s) {
  if (s == "G") return dgk::Structure::G;
  if (s == "Ghat") return dgk::Structure::Ghat;
  throw dgk::DomainError("structure must be G or Ghat, got '" + s + "'");
}

struct Options {
  std::string example;
  std::vector<std::string> raw_params;
  std::string structure = "G";
  std::string format = "json";
  std::string output;
  std::string element_file;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::uint64_t max_triples = 50000;
  std::size_t max_elements = 20000;
  int random_support = 4;
};

int cmd_list() {
  for (const auto& name : dgk::list_examples()) std::cout << name << "\n";
  return kExitPass;
}

int cmd_build(const Options& opt) {
  auto params = parse_params(opt.raw_params);
  auto inst = dgk::build_example(opt.example, params);
  auto frag = dgk::Fragment::enumerate(inst.pair, parse_structure(opt.structure),
                                       inst.h_window(), inst.k_window());
  json out = report_header("build", opt.example, inst.params, opt.seed);
  out["fragment"] = dgk::fragment_to_json(frag);
  emit(out.dump(2), opt.output);
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  auto params = parse_params(opt.raw_params);
  auto inst = dgk::build_example(opt.example, params);
  dgk::VerifyOptions vo;
  vo.seed = opt.seed;
  vo.max_triples = opt.max_triples;
  if (opt.suite != "all") {
    vo.check_axioms = opt.suite == "axioms";
    vo.check_identities = opt.suite == "identities";
    vo.check_claims = opt.suite == "claims";
    if (opt.suite != "axioms" && opt.suite != "identities" && opt.suite != "claims" &&
        opt.suite != "basics" && opt.suite != "exactness")
      throw dgk::DomainError("unknown suite '" + opt.suite + "'");
  }
  auto rep = dgk::verify_example(inst, vo);
  if (opt.suite == "all" || opt.suite == "exactness") {
    auto frag = std::make_shared<dgk::Fragment>(dgk::Fragment::enumerate(
        inst.pair, dgk::Structure::G, inst.h_window(), inst.k_window()));
    if (frag->closed()) rep.merge(dgk::exactness_check(frag, 32, opt.seed + 1));
  }
  json out = report_header("verify", opt.example, inst.params, opt.seed);
  out["suite"] = opt.suite;
  out["report"] = rep.to_json();
  emit(out.dump(2), opt.output);
  return rep.passed() ? kExitPass : kExitFail;
}

int cmd_norm(const Options& opt) {
  auto params = parse_params(opt.raw_params);
  auto inst = dgk::build_example(opt.example, params);
  auto frag = std::make_shared<dgk::Fragment>(dgk::Fragment::enumerate(
      inst.pair, parse_structure(opt.structure), inst.h_window(), inst.k_window()));
  if (!frag->closed())
    throw dgk::CoverageError("norms are only defined on closed fragments; '" + opt.example +
                             "' enumerates a window");
  dgk::ConvElement f(frag);
  if (!opt.element_file.empty()) {
    std::ifstream is(opt.element_file);
    if (!is) throw dgk::DomainError("cannot read element file " + opt.element_file);
    f = dgk::conv_from_json(frag, json::parse(is));
  } else {
    f = dgk::random_conv_element(frag, opt.seed, opt.random_support, true);
  }
  auto star = dgk::convolve(dgk::involution(f), f);
  auto nf = dgk::reduced_norm(f);
  auto nstar = dgk::reduced_norm(star);
  double residual = std::abs(nstar.value - nf.value * nf.value);

  json out = report_header("norm", opt.example, inst.params, opt.seed);
  out["support-size"] = f.support_size();
  out["i-norm"] = fmt_double(dgk::i_norm(f));
  try {
    out["i-norm-exact"] = dgk::rat_str(dgk::i_norm_exact(f));
  } catch (const dgk::InexactNormError&) {
    out["i-norm-exact"] = nullptr;
  }
  out["reduced-norm"] = fmt_double(nf.value);
  out["reduced-norm-certified-radius"] = fmt_double(nf.certified_radius);
  out["cstar-identity-residual"] = fmt_double(residual);
  emit(out.dump(2), opt.output);
  bool ok = nf.value <= dgk::i_norm(f) + 1e-9 &&
            residual <= 1e-9 * std::max(1.0, nf.value * nf.value);
  return ok ? kExitPass : kExitFail;
}

int cmd_export(const Options& opt) {
  auto params = parse_params(opt.raw_params);
  auto inst = dgk::build_example(opt.example, params);
  auto frag = dgk::Fragment::enumerate(inst.pair, parse_structure(opt.structure),
                                       inst.h_window(), inst.k_window());
  if (frag.size() > opt.max_elements)
    throw dgk::CoverageError("fragment has " + std::to_string(frag.size()) +
                             " elements, above the export cap " +
                             std::to_string(opt.max_elements));
  if (opt.format == "dot") {
    emit(dgk::fragment_to_dot(frag), opt.output);
  } else if (opt.format == "json") {
    emit(dgk::fragment_to_json(frag).dump(2), opt.output);
  } else {
    throw dgk::DomainError("export format must be json or dot, got '" + opt.format + "'");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-groupoid toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_example) {
    auto* ex = sub->add_option("--example", opt.example, "example name");
    if (needs_example) ex->required();
    sub->add_option("--param", opt.raw_params, "example parameter key=value");
    sub->add_option("--structure", opt.structure, "groupoid structure: G or Ghat");
    sub->add_option("--seed", opt.seed, "seed for sampled test sets");
    sub->add_option("--output", opt.output, "output file (default stdout)");
    sub->add_option("--format", opt.format, "output format: json or dot");
  };

  auto* sub_build = app.add_subcommand("build", "build an instance and emit its fragment");
  add_common(sub_build, true);
  auto* sub_verify = app.add_subcommand("verify", "run verification suites");
  add_common(sub_verify, true);
  sub_verify->add_option("--suite", opt.suite,
                         "suite: all, basics, identities, axioms, claims, exactness");
  sub_verify->add_option("--max-triples", opt.max_triples,
                         "cap on exhaustive identity triples before sampling");
  auto* sub_norm = app.add_subcommand("norm", "norm report for a convolution element");
  add_common(sub_norm, true);
  sub_norm->add_option("--element", opt.element_file, "JSON file with the element");
  sub_norm->add_option("--random-support", opt.random_support,
                       "support size of the seeded random element");
  auto* sub_export = app.add_subcommand("export", "export a fragment as JSON or DOT");
  add_common(sub_export, true);
  sub_export->add_option("--max-elements", opt.max_elements, "export size cap");
  app.add_subcommand("list-examples", "list available example names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (app.got_subcommand("list-examples")) return cmd_list();
    if (app.got_subcommand("build")) return cmd_build(opt);
    if (app.got_subcommand("verify")) return cmd_verify(opt);
    if (app.got_subcommand("norm")) return cmd_norm(opt);
    if (app.got_subcommand("export")) return cmd_export(opt);
  } catch (const dgk::DomainError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const dgk::CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << std::endl;
    return kExitCoverage;
  } catch (const dgk::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << std::endl;
    return kExitCoverage;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << std::endl;
    return kExitFail;
  }
  return kExitUsage;
}
