// anoncheck: batch front end.
//
//   anoncheck check SYSTEM SPEC [--mode theta|delta] [--json]
//   anoncheck generate dc|dc-prob -o FILE [--n N] [--no-outsider]
//                      [--priors p0,p1,...] [--nsa-share s] [--emit-spec FILE]
//   anoncheck import-csp TRACES --anonymous-events E,... -o FILE
//                        [--observer o] [--hide E,...] [--close-prefixes]
//   anoncheck csp-check TRACES --anonymous-events E,... [--observer o]
//                       [--hide E,...] [--close-prefixes] [--verify-theorem]
//                       [--json]
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage, parse or model
// error, 3 semantic error. Output is buffered, so nothing is printed on an
// error exit except the message on stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anoncheck/csp.h"
#include "anoncheck/dcnet.h"
#include "anoncheck/errors.h"
#include "anoncheck/io.h"
#include "anoncheck/rational.h"

namespace {

using anoncheck::ModelError;
using anoncheck::ParseError;
using anoncheck::Rational;
using nlohmann::json;

struct Output {
  std::ostringstream stdout_text;
  // Files are written only after every computation succeeded.
  std::vector<std::pair<std::string, std::string>> files;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) items.push_back(item.substr(b, e - b + 1));
  }
  return items;
}

std::string render_set(const anoncheck::csp::EventSet& events) {
  std::string s = "{";
  for (const auto& e : events) s += (s.size() > 1 ? ", " : "") + e;
  return s + "}";
}

struct CheckArgs {
  std::string system_path;
  std::string spec_path;
  std::string mode = "theta";
  bool json = false;
};

int run_check(const CheckArgs& args, Output& out) {
  auto system_in = open_input(args.system_path);
  auto file = anoncheck::io::read_system(system_in);
  auto spec_in = open_input(args.spec_path);
  const auto mode = args.mode == "delta" ? anoncheck::PerformanceMode::kDelta
                                         : anoncheck::PerformanceMode::kTheta;
  const auto entries = anoncheck::io::read_spec(spec_in, mode);

  const anoncheck::EvalContext ctx(file.system,
                                   file.measure ? &*file.measure : nullptr);
  std::vector<anoncheck::io::EntryReport> reports;
  for (const auto& entry : entries) reports.push_back(anoncheck::io::run_entry(ctx, entry));

  if (args.json) {
    out.stdout_text << anoncheck::io::render_json(file.system, reports).dump(2) << "\n";
  } else {
    out.stdout_text << anoncheck::io::render_text(file.system, reports);
  }
  const bool all = std::all_of(reports.begin(), reports.end(),
                               [](const auto& r) { return r.check.holds; });
  return all ? 0 : 1;
}

struct GenerateArgs {
  std::string kind;
  int n = 3;
  bool no_outsider = false;
  std::string priors;
  std::string nsa_share = "0";
  std::string output;
  std::string spec_output;
};

int run_generate(const GenerateArgs& args, Output& out) {
  namespace dc = anoncheck::dcnet;
  dc::DcConfig cfg;
  cfg.n = args.n;
  cfg.include_outsider = !args.no_outsider;
  if (args.kind == "dc-prob") {
    std::vector<Rational> given;
    if (args.priors.empty()) {
      given.assign(static_cast<std::size_t>(args.n), Rational(1, args.n));
    } else {
      for (const auto& p : split_list(args.priors)) given.push_back(anoncheck::parse_rational(p));
    }
    if (given.size() != static_cast<std::size_t>(args.n)) {
      throw ModelError("expected " + std::to_string(args.n) + " priors, got " +
                       std::to_string(given.size()));
    }
    const Rational share = anoncheck::parse_rational(args.nsa_share);
    if (share < 0 || share > 1) throw ModelError("NSA share must lie in [0, 1]");
    std::map<std::string, Rational> priors;
    for (int i = 0; i < args.n; ++i) {
      priors[std::to_string(i)] = (1 - share) * given[static_cast<std::size_t>(i)];
    }
    priors[std::string(dc::kNsa)] = share;
    cfg.priors = std::move(priors);
  } else if (!args.priors.empty() || args.nsa_share != "0") {
    throw ModelError("--priors and --nsa-share need the dc-prob generator");
  }

  const dc::DcSystem system = dc::build_dc_system(cfg);
  out.files.emplace_back(
      args.output,
      anoncheck::io::system_to_json(system.system,
                                    system.measure ? &*system.measure : nullptr)
              .dump(2) + "\n");
  out.stdout_text << "wrote " << system.system.system().runs().size()
                  << " runs to " << args.output << "\n";

  std::vector<anoncheck::io::SpecEntry> spec;
  if (cfg.priors) {
    const auto conditional = dc::dc_conditional_spec(cfg);
    for (const auto& [i, a] : conditional.alpha) {
      out.stdout_text << "alpha(" << i << ") = " << anoncheck::to_string(a) << "\n";
    }
    for (const auto& e : conditional.entries) {
      out.stdout_text << "alpha(" << e.payer << "," << e.observer << ") = "
                      << (e.value ? anoncheck::to_string(*e.value) : "undefined")
                      << "\n";
    }
    for (const auto& p : conditional.problems) out.stdout_text << "note: " << p << "\n";
    for (const auto& f : conditional.formulas) spec.push_back({f, std::nullopt});
  } else {
    for (const auto& f : dc::dc_spec_formulas(cfg)) spec.push_back({f, std::nullopt});
  }
  if (!args.spec_output.empty()) {
    out.files.emplace_back(args.spec_output,
                           anoncheck::io::spec_to_json(spec).dump(2) + "\n");
    out.stdout_text << "wrote " << spec.size() << " spec entries to "
                    << args.spec_output << "\n";
  }
  return 0;
}

struct CspArgs {
  std::string traces;
  std::string anonymous;
  std::string observer = "o";
  std::string hide;
  bool close_prefixes = false;
  bool verify_theorem = false;
  bool json = false;
  std::string output;
};

anoncheck::csp::Process load_process(const CspArgs& args,
                                     anoncheck::csp::EventSet& hidden) {
  auto in = open_input(args.traces);
  auto process = anoncheck::csp::read_trace_file(in, args.close_prefixes);
  for (const auto& e : split_list(args.hide)) hidden.insert(e);
  if (!hidden.empty()) process = anoncheck::csp::apply_hiding(process, hidden);
  return process;
}

int run_import(const CspArgs& args, Output& out) {
  anoncheck::csp::EventSet hidden;
  const auto process = load_process(args, hidden);
  const auto list = split_list(args.anonymous);
  const anoncheck::csp::EventSet anonymous(list.begin(), list.end());
  const auto system = anoncheck::csp::compatible_system(process, anonymous, args.observer);
  out.files.emplace_back(args.output,
                         anoncheck::io::system_to_json(system, nullptr).dump(2) + "\n");
  out.stdout_text << "wrote " << system.system().runs().size() << " runs to "
                  << args.output << "\n";
  return 0;
}

int run_csp_check(const CspArgs& args, Output& out) {
  namespace csp = anoncheck::csp;
  csp::EventSet hidden;
  const auto process = load_process(args, hidden);
  const auto list = split_list(args.anonymous);
  const csp::EventSet anonymous(list.begin(), list.end());
  const csp::StrongAnonymity result = csp::strong_anonymity_on(process, anonymous);

  std::optional<csp::Theorem51Result> theorem;
  if (args.verify_theorem) theorem = csp::theorem51_check(process, anonymous, args.observer);

  if (args.json) {
    json doc{{"anonymous_events", list},
             {"hidden", std::vector<std::string>(hidden.begin(), hidden.end())},
             {"strongly_anonymous", result.holds},
             {"counterexample", result.counterexample
                                    ? json(csp::to_string(*result.counterexample))
                                    : json(nullptr)}};
    if (theorem) {
      doc["equivalence"] = {{"strongly_anonymous", theorem->strongly_anonymous},
                            {"anonymous_up_to", theorem->anonymous_up_to},
                            {"agrees", theorem->agrees()}};
    }
    out.stdout_text << doc.dump(2) << "\n";
  } else {
    if (!hidden.empty()) out.stdout_text << "hidden: " << render_set(hidden) << "\n";
    out.stdout_text << "strong anonymity on " << render_set(anonymous) << ": "
                    << (result.holds ? "PASS" : "FAIL") << "\n";
    if (result.counterexample) {
      out.stdout_text << "counterexample: <" << csp::to_string(*result.counterexample)
                      << "> is in the un-renamed image but not in the process\n";
    }
    if (theorem) {
      out.stdout_text << "equivalence: strongly anonymous = "
                      << (theorem->strongly_anonymous ? "true" : "false")
                      << ", anonymous up to I_A for observer " << args.observer
                      << " = " << (theorem->anonymous_up_to ? "true" : "false")
                      << ", agree = " << (theorem->agrees() ? "true" : "false")
                      << "\n";
    }
  }
  const bool agrees = !theorem || theorem->agrees();
  return result.holds && agrees ? 0 : 1;
}

void add_csp_options(CLI::App* cmd, CspArgs& args) {
  cmd->add_option("traces", args.traces, "trace file")->required();
  cmd->add_option("--anonymous-events", args.anonymous,
                  "comma-separated events i.a forming A")
      ->required();
  cmd->add_option("--observer", args.observer, "observer agent name");
  cmd->add_option("--hide", args.hide, "comma-separated events to hide first");
  cmd->add_flag("--close-prefixes", args.close_prefixes,
                "take the prefix closure of the listed traces");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for anonymity properties of multiagent systems"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "check a spec against a system file");
  check->add_option("system", check_args.system_path, "system JSON")->required();
  check->add_option("spec", check_args.spec_path, "spec JSON")->required();
  check->add_option("--mode", check_args.mode, "default performance mode")
      ->check(CLI::IsMember({"theta", "delta"}));
  check->add_flag("--json", check_args.json, "machine-readable report");

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "generate a dining cryptographers system");
  generate->add_option("kind", gen_args.kind, "dc or dc-prob")
      ->required()
      ->check(CLI::IsMember({"dc", "dc-prob"}));
  generate->add_option("--n", gen_args.n, "number of cryptographers");
  generate->add_flag("--no-outsider", gen_args.no_outsider, "omit the outside observer");
  generate->add_option("--priors", gen_args.priors,
                       "payer priors given that a cryptographer paid");
  generate->add_option("--nsa-share", gen_args.nsa_share,
                       "prior probability that the NSA paid");
  generate->add_option("-o,--output", gen_args.output, "system file to write")->required();
  generate->add_option("--emit-spec", gen_args.spec_output, "spec file to write");

  CspArgs import_args;
  auto* import = app.add_subcommand("import-csp", "build the compatible system of a trace process");
  add_csp_options(import, import_args);
  import->add_option("-o,--output", import_args.output, "system file to write")->required();

  CspArgs csp_args;
  auto* csp_check = app.add_subcommand("csp-check", "check strong anonymity of a trace process");
  add_csp_options(csp_check, csp_args);
  csp_check->add_flag("--verify-theorem", csp_args.verify_theorem,
                      "also compare with anonymity up to I_A in the compatible system");
  csp_check->add_flag("--json", csp_args.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  int code = 0;
  try {
    if (*check) code = run_check(check_args, out);
    else if (*generate) code = run_generate(gen_args, out);
    else if (*import) code = run_import(import_args, out);
    else code = run_csp_check(csp_args, out);
    for (const auto& [path, text] : out.files) {
      std::ofstream file(path);
      if (!(file << text)) throw ModelError("cannot write '" + path + "'");
    }
  } catch (const anoncheck::SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << out.stdout_text.str();
  return code;
}
