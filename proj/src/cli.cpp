#include "cyforge/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cyforge/cyverify.hpp"
#include "cyforge/errors.hpp"

namespace cyforge {

using Json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::optional<int> n;
  std::optional<int> deg_min;
  std::optional<int> weight_max;
  int len_max = 6;
  int u_order = 3;
  int columns = 0;
  std::string format = "json";
  std::string out;
  bool stability_recheck = false;
};

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Inconclusive: return 3;
  }
  return 1;
}

Json window_json(const Window& w) {
  return Json{{"deg_min", w.deg_min},
              {"weight_max", w.weight_max},
              {"len_max", w.len_max},
              {"u_order", w.u_order},
              {"columns", w.columns}};
}

Json check_json(const Check& c) {
  Json d = Json::object();
  for (const auto& [k, v] : c.details) d[k] = v;
  return Json{{"name", c.name}, {"status", to_string(c.status)}, {"summary", c.summary}, {"details", d}};
}

Json table_json(const HomologyTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back(Json{{"degree", e.degree}, {"weight", e.weight}, {"dim", e.dim}});
  return Json{{"kind", to_string(t.kind)},
              {"euler_ok", t.euler_ok},
              {"stable", t.stable},
              {"exact_lengths", t.exact_lengths},
              {"entries", entries}};
}

Json report_json(const std::string& command, const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  Json homology = Json::array();
  for (const auto& t : r.homology) homology.push_back(table_json(t));
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command},
              {"spec_sha256", r.spec_sha256},
              {"n", r.n},
              {"window", window_json(r.window)},
              {"checks", checks},
              {"homology", homology},
              {"verdict", to_string(r.verdict)}};
}

std::string render_text(const Json& j) {
  std::ostringstream os;
  os << j["tool"].get<std::string>() << " " << j["version"].get<std::string>() << "  "
     << j["command"].get<std::string>() << "  n=" << j["n"].get<int>() << "\n";
  os << "spec sha256 " << j["spec_sha256"].get<std::string>() << "\n";
  const auto& w = j["window"];
  os << "window: deg_min " << w["deg_min"] << ", weight_max " << w["weight_max"] << ", len_max "
     << w["len_max"] << ", u_order " << w["u_order"] << ", columns " << w["columns"] << "\n";
  for (const auto& c : j["checks"]) {
    os << "\n[" << c["status"].get<std::string>() << "] " << c["name"].get<std::string>() << ": "
       << c["summary"].get<std::string>() << "\n";
    for (const auto& [k, v] : c["details"].items()) {
      std::string s = v.get<std::string>();
      if (s.find('\n') == std::string::npos) {
        os << "    " << k << ": " << s << "\n";
      } else {
        os << "    " << k << ":\n";
        std::istringstream lines(s);
        for (std::string line; std::getline(lines, line);) os << "      " << line << "\n";
      }
    }
  }
  for (const auto& t : j["homology"]) {
    os << "\n" << t["kind"].get<std::string>() << " (degree x weight -> dim)";
    if (!t["stable"].get<bool>()) os << " [unstable]";
    os << "\n";
    if (t["entries"].empty()) os << "    all zero in window\n";
    for (const auto& e : t["entries"])
      os << "    degree " << std::setw(3) << e["degree"].get<int>() << "  weight " << e["weight"].get<int>()
         << "  dim " << e["dim"].get<std::size_t>() << "\n";
  }
  os << "\nverdict: " << j["verdict"].get<std::string>() << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read spec '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Window make_window(const RunConfig& c, int n) {
  Window w;
  w.deg_min = c.deg_min.value_or(-(2 * n + 1));
  w.weight_max = c.weight_max.value_or(n + 1);
  w.len_max = c.len_max;
  w.u_order = c.u_order;
  w.columns = c.columns;
  if (w.deg_min > 0) throw InputError("--deg-min must be <= 0");
  if (w.weight_max < 0) throw InputError("--weight-max must be >= 0");
  if (w.len_max < 0) throw InputError("--len-max must be >= 0");
  if (w.u_order < 0) throw InputError("--u-order must be >= 0");
  if (w.columns < 0) throw InputError("--columns must be >= 0");
  return w;
}

VerificationReport homology_report(const ParsedSpec& spec, int n, const Window& w) {
  VerificationReport r;
  r.n = n;
  r.window = w;
  int top = 0;
  if (spec.potential)
    if (auto l = potential_length(*spec.potential); l && *l >= 2) top = *l;
  auto B = cy_completion(make_graded_base(spec.presentation), n, top);
  r.homology.push_back(reduced_hochschild(B, w));
  r.homology.push_back(reduced_cyclic(B, w));
  Check c;
  c.name = "homology-tables";
  bool euler = r.homology[0].euler_ok && r.homology[1].euler_ok;
  c.details.emplace_back("euler", euler ? "yes" : "no");
  c.details.emplace_back("stable", r.homology[1].stable ? "yes" : "no");
  if (!euler) {
    c.status = Status::Fail;
    c.summary = "Euler identity violated";
  } else if (!r.homology[1].stable) {
    c.status = Status::Inconclusive;
    c.summary = "cyclic table changes with the column count";
  } else {
    c.summary = "reduced tables of the completion";
  }
  r.checks.push_back(c);
  r.verdict = overall(r.checks);
  return r;
}

std::string dims_string(const std::vector<std::size_t>& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

Check presentation_check(const std::string& name, const DgPresentation& p) {
  Check c;
  c.name = name;
  auto issues = audit_presentation(p);
  c.status = issues.empty() ? Status::Pass : Status::Fail;
  c.summary = issues.empty() ? "valid dg presentation" : issues.front().message;
  c.details.emplace_back("arrows", std::to_string(p.quiver.arrow_count()));
  c.details.emplace_back("presentation", pretty_print(p));
  return c;
}

VerificationReport run_command(const RunConfig& cfg, const ParsedSpec& spec, int n, const Window& w) {
  if (cfg.command == "verify") return verify_cy(spec, n, w);
  if (cfg.command == "homology") return homology_report(spec, n, w);
  VerificationReport r;
  r.n = n;
  r.window = w;
  if (cfg.command == "complete") {
    auto B = cy_completion(make_graded_base(spec.presentation), n);
    r.checks.push_back(presentation_check("completion", B.presentation()));
  } else if (cfg.command == "ginzburg") {
    if (!spec.potential) throw InputError("ginzburg needs a potential in the spec");
    auto B = ginzburg(spec.presentation, *spec.potential);
    r.checks.push_back(presentation_check("ginzburg", B.presentation()));
  } else if (cfg.command == "jacobian") {
    if (!spec.potential) throw InputError("jacobian needs a potential in the spec");
    auto jac = jacobian_algebra(spec.presentation, *spec.potential, w.len_max);
    auto B = ginzburg(spec.presentation, *spec.potential);
    auto h0 = h0_dimensions(*B.b, w.len_max);
    Check c;
    c.name = "jacobian";
    c.details.emplace_back("jacobian", dims_string(jac.dims));
    c.details.emplace_back("jacobian_total", std::to_string(jac.total()));
    c.details.emplace_back("h0", dims_string(h0.dims));
    c.details.emplace_back("stable", h0.stable ? "yes" : "no");
    if (jac.dims != h0.dims) {
      c.status = h0.exact ? Status::Fail : Status::Inconclusive;
      c.summary = "H0 of the Ginzburg algebra differs from the Jacobian algebra";
    } else if (!h0.stable) {
      c.status = Status::Inconclusive;
      c.summary = "H0 not stable at len_max + 2";
    } else {
      c.summary = "H0 of the Ginzburg algebra equals the Jacobian algebra";
    }
    r.checks.push_back(c);
  }
  r.verdict = overall(r.checks);
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Calabi-Yau completions of dg quivers: construction and verification"};
  app.require_subcommand(1);
  RunConfig cfg;
  for (const char* name : {"verify", "homology", "complete", "ginzburg", "jacobian"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", cfg.spec_path, "spec file")->required();
    sub->add_option("--n", cfg.n, "Calabi-Yau dimension (default 3 with a potential, else 2)");
    sub->add_option("--deg-min", cfg.deg_min, "lowest cohomological degree (default -(2n+1))");
    sub->add_option("--weight-max", cfg.weight_max, "highest weight (default n+1)");
    sub->add_option("--len-max", cfg.len_max, "highest path length");
    sub->add_option("--u-order", cfg.u_order, "order of negative cyclic lifts");
    sub->add_option("--columns", cfg.columns, "periodic columns (0 = as needed)");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "write the report here instead of standard output");
    sub->add_flag("--stability-recheck", cfg.stability_recheck, "rerun at a larger window and compare");
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Json report;
  Status verdict = Status::Pass;
  try {
    const std::string text = read_file(cfg.spec_path);
    ParsedSpec spec;
    try {
      spec = parse_spec(text);
    } catch (const Error& e) {
      throw InputError(cfg.spec_path + ":" + e.what());
    }
    const int n = cfg.n.value_or(spec.potential ? 3 : 2);
    if (n < 1) throw InputError("--n must be positive");
    if (spec.potential && cfg.command != "homology" && cfg.command != "complete" && n != 3)
      throw InputError("a potential needs --n 3");
    const Window w = make_window(cfg, n);
    VerificationReport r = run_command(cfg, spec, n, w);
    r.spec_sha256 = sha256_hex(text);
    if (cfg.stability_recheck) {
      Window bigger = w;
      bigger.len_max += 2;
      bigger.weight_max += 1;
      VerificationReport again = run_command(cfg, spec, n, bigger);
      Check c;
      c.name = "stability";
      c.details.emplace_back("window_verdict", to_string(r.verdict));
      c.details.emplace_back("enlarged_verdict", to_string(again.verdict));
      if (r.verdict == again.verdict) {
        c.summary = "verdict unchanged at len_max + 2, weight_max + 1";
      } else {
        c.status = Status::Inconclusive;
        c.summary = "verdict changes with the window";
      }
      r.checks.push_back(c);
      r.verdict = overall(r.checks);
    }
    verdict = r.verdict;
    report = report_json(cfg.command, r);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string body = cfg.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return 2;
    }
    f << body;
  }
  return exit_code(verdict);
}

}  // namespace cyforge
