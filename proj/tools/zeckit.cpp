// Command-line front end for the zeckit library.
//
// Exit codes: 0 success, 1 verification failure or a FALSE sentence,
// 2 usage, parse or compile error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "zeckit/automata.hpp"
#include "zeckit/script.hpp"
#include "zeckit/sequence_analysis.hpp"
#include "zeckit/verify.hpp"

namespace {

using zeckit::Natural;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a natural number: '" + text + "'");
  }
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used);
  return static_cast<Natural>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_zeck(const std::string& value, bool decode) {
  if (decode) {
    std::cout << zeckit::zeck_decode(value, /*strict=*/true) << "\n";
  } else {
    std::cout << zeckit::zeck_encode(parse_natural(value)).str() << "\n";
  }
  return kOk;
}

int cmd_ftm(Natural start, Natural end) {
  if (start > end) throw std::invalid_argument("range start exceeds end");
  const auto& dfao = zeckit::ftm_dfao();
  std::string out;
  for (Natural n = start; n <= end; ++n) {
    out.push_back(zeckit::run_dfao(dfao, zeckit::zeck_encode(n).str()) ? '1' : '0');
    if (n == end) break;
  }
  std::cout << out << "\n";
  return kOk;
}

int cmd_prove(const std::string& path) {
  zeckit::Session session;
  bool all_true = true;
  for (const auto& command : zeckit::parse_script(read_file(path))) {
    const auto outcome = session.execute(command);
    std::cout << outcome.summary() << "\n" << std::flush;
    if (outcome.truth && !*outcome.truth) all_true = false;
  }
  return all_true ? kOk : kFailed;
}

int cmd_profile(Natural n_max, const std::string& method_text) {
  const auto method = zeckit::parse_profile_method(method_text);
  if (!method) throw std::invalid_argument("unknown method '" + method_text + "'");
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  const auto profile = zeckit::special_factor_profile(*method, 2, n_max);
  std::cout << "n,f,M\n";
  for (const auto& [n, f] : profile.values) std::cout << n << "," << f << "," << f + 1 << "\n";
  return kOk;
}

int cmd_ratios(Natural n_max, const std::string& output) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  const auto series = zeckit::ratio_series(n_max);
  if (output.empty() || output == "-") {
    zeckit::write_ratio_csv(std::cout, series);
    return kOk;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + output);
  zeckit::write_ratio_csv(out, series);
  out.close();
  if (!out) throw std::runtime_error("cannot write " + output);
  return kOk;
}

int cmd_export_dot(const std::string& name, const std::string& script, const std::string& output) {
  zeckit::Session session;
  session.run(read_file(script));
  const auto& env = session.environment();
  std::string dot;
  const zeckit::DotOptions options{true, name};
  if (const auto* rel = env.relation(name)) {
    dot = zeckit::to_dot(*rel->automaton, options);
  } else if (const auto* seq = env.sequence(name)) {
    dot = zeckit::to_dot(*seq, options);
  } else {
    throw std::invalid_argument("'" + name + "' is not defined by " + script);
  }
  if (output.empty() || output == "-") {
    std::cout << dot;
    return kOk;
  }
  std::ofstream out(output, std::ios::binary);
  out << dot;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + output);
  return kOk;
}

int cmd_verify_all(bool perturb, const std::vector<int>& only) {
  zeckit::VerifyOptions options;
  options.only = only;
  if (perturb) options.closed_form = zeckit::perturbed_closed_form;
  bool ok = true;
  int passed = 0;
  int total = 0;
  for (const auto& r : zeckit::run_acceptance(options)) {
    std::cout << zeckit::format_result(r) << "\n" << std::flush;
    ok = ok && r.passed;
    passed += r.passed ? 1 : 0;
    ++total;
  }
  std::cout << passed << "/" << total << " checks passed\n";
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeckendorf numeration, Fibonacci automata and the special factors of ftm"};
  app.require_subcommand(1, 1);

  std::string zeck_value;
  bool decode = false;
  auto* zeck = app.add_subcommand("zeck", "Encode a natural or decode a Zeckendorf word");
  zeck->add_option("value", zeck_value, "Natural number, or a word with --decode")->required();
  zeck->add_flag("--decode,-d", decode, "Decode a canonical word");

  std::string start_text, end_text;
  auto* ftm = app.add_subcommand("ftm", "Print ftm[start..end]");
  ftm->add_option("start", start_text)->required();
  ftm->add_option("end", end_text)->required();

  std::string script_path;
  auto* prove = app.add_subcommand("prove", "Run a command script");
  prove->add_option("script", script_path)->required();

  std::string n_text;
  std::string method = "closed";
  auto* profile = app.add_subcommand("profile", "CSV of n, f(n), M(n) for 2 <= n <= n_max");
  profile->add_option("n_max", n_text)->required();
  profile->add_option("--method", method, "brute | closed | sync")->capture_default_str();

  std::string output;
  auto* ratios = app.add_subcommand("ratios", "CSV of f(n)/n for 2 <= n <= n_max");
  ratios->add_option("n_max", n_text)->required();
  ratios->add_option("-o,--output", output, "Output file (default stdout)");

  std::string def_name;
  auto* export_dot = app.add_subcommand("export-dot", "Write a defined automaton as DOT");
  export_dot->add_option("name", def_name)->required();
  export_dot->add_option("script", script_path)->required();
  export_dot->add_option("-o,--output", output, "Output file (default stdout)");

  bool perturb = false;
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite");
  verify->add_option("--only", only, "Run only these criterion ids")->delimiter(',');
  // Fault injection for testing the suite itself.
  verify->add_flag("--perturb-closed-form", perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (zeck->parsed()) return cmd_zeck(zeck_value, decode);
    if (ftm->parsed()) return cmd_ftm(parse_natural(start_text), parse_natural(end_text));
    if (prove->parsed()) return cmd_prove(script_path);
    if (profile->parsed()) return cmd_profile(parse_natural(n_text), method);
    if (ratios->parsed()) return cmd_ratios(parse_natural(n_text), output);
    if (export_dot->parsed()) return cmd_export_dot(def_name, script_path, output);
    if (verify->parsed()) return cmd_verify_all(perturb, only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
