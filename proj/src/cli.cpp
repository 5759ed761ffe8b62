#include "trigsum/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "trigsum/errors.hpp"
#include "trigsum/functionals.hpp"
#include "trigsum/grid.hpp"
#include "trigsum/harness.hpp"
#include "trigsum/report.hpp"
#include "trigsum/summability.hpp"

namespace trigsum::cli {
namespace {

const std::vector<std::string> kCommands = {"corpus", "conditions", "partial",
                                            "mean",   "diff",       "verify"};

// Option values are kept as the strings the user typed so --dump-config can
// write them back verbatim.
class Settings {
 public:
  std::string& slot(const std::string& key) { return values_[key]; }

  const std::string& get(const std::string& key) const { return values_.at(key); }

  double number(const std::string& key) const {
    const std::string& s = get(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InvalidArgument(fmt::format("--{} expects a number, got '{}'", key, s));
    }
    return v;
  }

 private:
  std::map<std::string, std::string> values_;
};

struct Leaf {
  std::vector<std::string> command;
  std::vector<std::string> keys;  // in declaration order
};

class Parser {
 public:
  Parser() : app_("Trigonometric integrals: partial integrals, Lebesgue means, theorem checks", "trigsum") {
    app_.set_help_flag("--help", "print this help message and exit");
    app_.fallthrough();
    app_.require_subcommand(1);
    settings_.slot("tol") = "1e-8";
    settings_.slot("format") = "table";
    app_.add_option("--tol", settings_.slot("tol"), "absolute tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app_.add_option("--format", settings_.slot("format"), "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}))
        ->capture_default_str();
    app_.add_option("--out", settings_.slot("out"), "output path (default standard output)");
    app_.add_option("--config", settings_.slot("config"),
                    "flat key = value file with the same keys as the flags");
    app_.add_option("--dump-config", settings_.slot("dump-config"),
                    "write the resolved configuration to this path");

    auto* corpus = sub(app_, "corpus", "inspect the test-function catalogue");
    corpus->require_subcommand(1);
    leaf(*corpus, "list", "list catalogue entries", {"corpus", "list"}, {});

    auto* cond = leaf(app_, "conditions", "M(T) and Q(T) on a T grid", {"conditions"},
                      {"function", "t-grid", "t1"});
    require(cond, "function");
    require(cond, "t-grid");

    auto* partial = leaf(app_, "partial", "partial integral I_T(x)", {"partial"},
                         {"function", "x", "T"});
    for (const char* k : {"function", "x", "T"}) require(partial, k);
    for (const char* name : {"mean", "diff"}) {
      auto* s = leaf(app_, name,
                     name == std::string("mean") ? "Lebesgue mean at (x, h)"
                                                 : "mean minus I_{1/h} at (x, h)",
                     {name}, {"function", "x", "h"});
      for (const char* k : {"function", "x", "h"}) require(s, k);
    }

    auto* verify = sub(app_, "verify", "theorem and lemma checks");
    verify->require_subcommand(1);
    require(leaf(*verify, "theorem2", "uniform sweep of D over an x window",
                 {"verify", "theorem2"}, {"function", "x-grid", "h-seq"}),
            "function");
    require(leaf(*verify, "theorem3", "pointwise check at x0", {"verify", "theorem3"},
                 {"function", "x0", "h-seq", "t-grid"}),
            "function");
    require(leaf(*verify, "lemma2", "Q decay for vanishing-M functions", {"verify", "lemma2"},
                 {"function", "t-grid"}),
            "function");
    require(leaf(*verify, "lemma3", "Q <= 4 B_hat beyond T1", {"verify", "lemma3"},
                 {"function", "t-grid", "t1"}),
            "function");
  }

  CLI::App& app() { return app_; }
  Settings& settings() { return settings_; }

  const Leaf& active() const {
    for (const auto& [app, l] : leaves_) {
      if (app->parsed()) return l;
    }
    throw InvalidArgument("no command given");
  }

  // Defaults depend on the command (t-grid differs between conditions and
  // theorem3), so they are filled in after parsing.
  void apply_defaults(const Leaf& l) {
    auto fill = [&](const char* key, std::string value) {
      std::string& s = settings_.slot(key);
      if (s.empty()) s = std::move(value);
    };
    const std::string& cmd = l.command.back();
    if (cmd == "theorem2") {
      fill("x-grid", "linear:-10:10:41");
      fill("h-seq", "geometric:1:0.001:4");
    } else if (cmd == "theorem3") {
      fill("x0", "1");
      fill("h-seq", "geometric:1:0.001:4");
    } else if (cmd == "lemma2" || cmd == "lemma3") {
      fill("t-grid", "geometric:1:10000:40");
      fill("t1", "1");
    } else if (cmd == "conditions") {
      fill("t1", "1");
    }
  }

 private:
  CLI::App* sub(CLI::App& parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent.add_subcommand(name, help);
    s->fallthrough();
    return s;
  }

  CLI::App* leaf(CLI::App& parent, const std::string& name, const std::string& help,
                 std::vector<std::string> command, std::vector<std::string> keys) {
    CLI::App* s = sub(parent, name, help);
    for (const std::string& k : keys) {
      CLI::Option* opt = s->add_option("--" + k, settings_.slot(k));
      if (k != "function" && k.find('-') == std::string::npos) opt->check(CLI::Number);
    }
    leaves_.emplace_back(s, Leaf{std::move(command), std::move(keys)});
    return s;
  }

  static void require(CLI::App* s, const std::string& key) { s->get_option("--" + key)->required(); }

  CLI::App app_;
  Settings settings_;
  std::vector<std::pair<CLI::App*, Leaf>> leaves_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot read config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

// Merges config entries into the argument list; explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  const std::string path = config_path(args);
  if (path.empty()) return args;
  const bool has_command = std::any_of(args.begin(), args.end(), [](const std::string& a) {
    return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
  });
  for (const auto& [key, value] : parse_config(read_file(path))) {
    if (key == "command") {
      if (has_command) continue;
      std::vector<std::string> words;
      std::istringstream ss(value);
      for (std::string w; ss >> w;) words.push_back(w);
      args.insert(args.begin(), words.begin(), words.end());
      continue;
    }
    if (key == "config" || key == "dump-config" || has_flag(args, key)) continue;
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

void dump_config(const std::string& path, const Leaf& l, const Settings& s) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument(fmt::format("cannot write config file '{}'", path));
  std::string command;
  for (const auto& w : l.command) command += (command.empty() ? "" : " ") + w;
  fmt::print(out, "command = {}\n", command);
  for (const std::string& k : l.keys) {
    if (!s.get(k).empty()) fmt::print(out, "{} = {}\n", k, s.get(k));
  }
  for (const char* k : {"tol", "format", "out"}) {
    if (!s.get(k).empty()) fmt::print(out, "{} = {}\n", k, s.get(k));
  }
}

int execute(const Leaf& l, const Settings& s, std::ostream& os) {
  const report::Format fmt = report::parse_format(s.get("format"));
  const double tol = s.number("tol");
  const std::string& cmd = l.command.back();

  if (cmd == "list") {
    report::write_catalogue(os, corpus::list(), fmt);
    return kExitOk;
  }
  const corpus::TestFunction& fn = corpus::get(s.get("function"));

  if (cmd == "conditions") {
    const std::vector<double> T = grid::parse(s.get("t-grid"));
    report::write_lemma(os, functionals::lemma_report(fn, T, s.number("t1"), tol),
                        report::Lemma::none, fmt);
    return kExitOk;
  }
  if (cmd == "partial") {
    const double x = s.number("x");
    const double T = s.number("T");
    report::write_partial(os, fn.name, x, T, summability::partial_integral(fn, x, T, tol), fmt);
    return kExitOk;
  }
  if (cmd == "mean") {
    const double x = s.number("x");
    const double h = s.number("h");
    report::write_mean(os, fn.name, x, h, summability::lebesgue_mean(fn, x, h, tol), fmt);
    return kExitOk;
  }
  if (cmd == "diff") {
    const double x = s.number("x");
    const double h = s.number("h");
    report::write_diff(os, fn.name, x, h, summability::mean_minus_partial(fn, x, h, tol), fmt);
    return kExitOk;
  }
  if (cmd == "theorem2") {
    const harness::SweepReport r = harness::abelian_sweep(fn, grid::parse(s.get("x-grid")),
                                                          grid::parse(s.get("h-seq")), tol);
    report::write_sweep(os, r, fmt);
    return r.verdict == harness::Verdict::converging ? kExitOk : kExitFailure;
  }
  if (cmd == "theorem3") {
    const double x0 = s.number("x0");
    const std::vector<double> T_seq = s.get("t-grid").empty()
                                          ? harness::default_tauberian_T_seq(x0)
                                          : grid::parse(s.get("t-grid"));
    const harness::ConvergenceReport r =
        harness::tauberian_check(fn, x0, T_seq, grid::parse(s.get("h-seq")), tol);
    report::write_convergence(os, r, fmt);
    return r.verdict == harness::Verdict::converging ? kExitOk : kExitFailure;
  }
  const std::vector<double> T = grid::parse(s.get("t-grid"));
  if (cmd == "lemma2") {
    const functionals::LemmaReport r = functionals::verify_lemma2(fn, T, tol);
    report::write_lemma(os, r, report::Lemma::lemma2, fmt);
    return r.lemma2_verdict == functionals::Verdict::pass ? kExitOk : kExitFailure;
  }
  const functionals::LemmaReport r = functionals::verify_lemma3(fn, s.number("t1"), T, tol);
  report::write_lemma(os, r, report::Lemma::lemma3, fmt);
  return r.lemma3_verdict == functionals::Verdict::pass ? kExitOk : kExitFailure;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(fmt::format("config line {}: expected key = value", line_no));
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidArgument(fmt::format("config line {}: empty key", line_no));
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parser parser;
  try {
    std::vector<std::string> merged = merge_config(args);
    std::reverse(merged.begin(), merged.end());
    parser.app().parse(merged);
  } catch (const CLI::ParseError& e) {
    const int code = parser.app().exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }

  Settings& s = parser.settings();
  try {
    const Leaf& l = parser.active();
    parser.apply_defaults(l);
    if (!s.get("dump-config").empty()) dump_config(s.get("dump-config"), l, s);

    std::ostringstream buffer;
    const int code = execute(l, s, buffer);
    if (s.get("out").empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(s.get("out"), std::ios::binary);
      if (!file || !(file << buffer.str())) {
        fmt::print(err, "error: cannot write '{}'\n", s.get("out"));
        return kExitUsage;
      }
    }
    return code;
  } catch (const UnknownFunction& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const GridTooSmall& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace trigsum::cli
