// Command-line front end: eigs | monotone | glue | branch | verify | report.
// Writes CSV/JSON artifacts plus a run manifest under --out; exit codes:
// 0 success, 1 solver error (JSON error report), 2 usage error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kellerpath/continuation.hpp"
#include "kellerpath/errors.hpp"
#include "kellerpath/gluing.hpp"
#include "kellerpath/green.hpp"
#include "kellerpath/manifest.hpp"
#include "kellerpath/monotone.hpp"
#include "kellerpath/spectrum.hpp"
#include "kellerpath/svg.hpp"
#include "kellerpath/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Cli {
  int dim = 3;
  double mu = 100.0;
  double a = 0.0;
  double b = 1.0;
  int k = 1;
  int count = 4;
  int index = 2;
  double mu_max = 0.0;
  std::string sign = "minus";
  std::string direction = "increasing";
  std::string suite = "all";
  std::string out = "out";
  std::string config;
  bool plot = false;
  bool boundary_layer = false;
  bool annulus_left = false;
  bool profiles = false;
};

class Timer {
 public:
  explicit Timer(std::map<std::string, double>& sink, std::string key)
      : sink_(sink), key_(std::move(key)), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const auto t1 = std::chrono::steady_clock::now();
    sink_[key_] = std::chrono::duration<double>(t1 - t0_).count();
  }

 private:
  std::map<std::string, double>& sink_;
  std::string key_;
  std::chrono::steady_clock::time_point t0_;
};

void apply_config(CLI::App& app, const std::string& path) {
  const std::map<std::string, std::string> kv = ks::config_load(path);
  for (const auto& [key, val] : kv) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (!opt) {
      for (CLI::App* sub : app.get_subcommands({})) {
        opt = sub->get_option_no_throw("--" + key);
        if (opt) break;
      }
    }
    if (!opt)
      throw ks::SolverError(ks::errc::bad_config,
                            path + ": unknown key '" + key + "'");
    if (opt->count() == 0) {  // flags given on the command line win
      opt->add_result(val);
      opt->run_callback();
    }
  }
}

void csv_open(std::FILE*& f, const std::string& path, const char* header) {
  f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fputs(header, f);
}

json params_json(const Cli& c, const std::string& command) {
  json j{{"command", command}, {"dim", c.dim},           {"mu", c.mu},
         {"a", c.a},           {"b", c.b},               {"k", c.k},
         {"count", c.count},   {"i", c.index},           {"sign", c.sign},
         {"mu_max", c.mu_max}, {"suite", c.suite},       {"plot", c.plot},
         {"direction", c.direction},
         {"boundary_layer", c.boundary_layer},
         {"annulus_left", c.annulus_left},
         {"ode_rtol", ks::defaults::ode_rtol},
         {"ode_atol", ks::defaults::ode_atol},
         {"u_cap", ks::defaults::u_cap},
         {"collocation_nodes", ks::defaults::collocation_nodes},
         {"multistart_seed", 20240901}};
  return j;
}

int run_eigs(const Cli& c) {
  ks::Params p{c.dim, std::max(c.mu, 2.0), c.a, c.b};
  ks::RunManifest man;
  man.command = "eigs";
  man.params = params_json(c, "eigs");
  std::vector<ks::EigenPair> eigs;
  {
    Timer t(man.timings, "solve");
    eigs = ks::radial_neumann_eigs(p, c.count);
  }
  fs::create_directories(c.out);
  const std::string path = c.out + "/eigs.csv";
  std::FILE* f = nullptr;
  csv_open(f, path, "i,lambda,cubic_integral\n");
  for (const auto& e : eigs)
    std::fprintf(f, "%d,%.17g,%.17g\n", e.index, e.lam, ks::cubic_integral(e));
  std::fclose(f);
  man.outputs.push_back(path);
  if (c.plot) {
    ks::SvgSeries s;
    s.label = "phi_" + std::to_string(c.count);
    const ks::Profile& phi = eigs.back().phi;
    s.x = phi.grid;
    s.y = phi.u;
    const std::string svg = c.out + "/eigenfunction.svg";
    ks::write_svg_chart(svg, "radial Neumann eigenfunction", "r", "phi", {s});
    man.outputs.push_back(svg);
  }
  ks::write_manifest(man, c.out);
  return 0;
}

int run_monotone(const Cli& c) {
  ks::Params p{c.dim, c.mu, c.a, c.b};
  ks::RunManifest man;
  man.command = "monotone";
  man.params = params_json(c, "monotone");
  ks::MonotoneSolution sol;
  {
    Timer t(man.timings, "solve");
    sol = (c.direction == "decreasing") ? ks::solve_decreasing(p)
                                        : ks::solve_increasing(p);
  }
  fs::create_directories(c.out);
  const std::string csv = c.out + "/profile.csv";
  ks::write_csv(sol.profile, csv);
  man.outputs.push_back(csv);
  json j{{"mu", sol.mu},
         {"N", c.dim},
         {"a", c.a},
         {"b", c.b},
         {"direction", c.direction == "decreasing" ? "decreasing" : "increasing"},
         {"boundary_value", sol.boundary_value},
         {"energy", sol.energy},
         {"residual", sol.residual},
         {"iterations", sol.iterations}};
  const std::string jpath = c.out + "/monotone.json";
  std::ofstream(jpath) << j.dump(2) << "\n";
  man.outputs.push_back(jpath);
  if (c.plot) {
    ks::SvgSeries s;
    s.label = "u";
    s.x = sol.profile.grid;
    s.y = sol.profile.u;
    const std::string svg = c.out + "/profile.svg";
    ks::write_svg_chart(svg, "monotone radial solution", "r", "u", {s});
    man.outputs.push_back(svg);
  }
  ks::write_manifest(man, c.out);
  return 0;
}

int run_glue(const Cli& c) {
  ks::Params p{c.dim, c.mu, c.a, c.b};
  ks::RunManifest man;
  man.command = "glue";
  man.params = params_json(c, "glue");
  ks::LayerSolution sol;
  {
    Timer t(man.timings, "solve");
    sol = ks::k_layer(p, c.k, c.boundary_layer, c.annulus_left);
  }
  fs::create_directories(c.out);
  const std::string csv = c.out + "/glued_profile.csv";
  ks::write_csv(sol.profile, csv);
  man.outputs.push_back(csv);
  json j{{"mu", sol.mu},
         {"N", c.dim},
         {"k", sol.k},
         {"betas", sol.betas},
         {"alphas", sol.alphas},
         {"amps", sol.limit.amps},
         {"match_residual", sol.match_residual},
         {"s_bar_infty", sol.s_bar_infty},
         {"boundary_layer", sol.boundary_layer},
         {"annulus_left", sol.annulus_left},
         {"converged", sol.converged}};
  const std::string jpath = c.out + "/glue.json";
  std::ofstream(jpath) << j.dump(2) << "\n";
  man.outputs.push_back(jpath);
  if (c.plot) {
    ks::SvgSeries s;
    s.label = "u";
    s.x = sol.profile.grid;
    s.y = sol.profile.u;
    const std::string svg = c.out + "/glued_profile.svg";
    ks::write_svg_chart(svg, "k-layer solution", "r", "u", {s});
    man.outputs.push_back(svg);
  }
  ks::write_manifest(man, c.out);
  return sol.converged ? 0 : 1;
}

int run_branch(const Cli& c) {
  ks::Params p{c.dim, std::max(c.mu, 2.0), c.a, c.b};
  const double mu_max = c.mu_max > 0 ? c.mu_max : 2.0 * 25.0;
  ks::RunManifest man;
  man.command = "branch";
  man.params = params_json(c, "branch");
  ks::Branch branch;
  {
    Timer t(man.timings, "trace");
    ks::TraceOptions opt;
    opt.keep_profiles = c.profiles;
    branch = ks::trace_branch(p, c.index,
                              c.sign == "plus" ? ks::BranchSign::plus
                                               : ks::BranchSign::minus,
                              mu_max, opt);
  }
  fs::create_directories(c.out);
  const std::string csv = c.out + "/branch.csv";
  std::FILE* f = nullptr;
  csv_open(f, csv, "mu,u0,sup_norm,c1_norm,zeros,min_eig\n");
  for (const auto& rec : branch.records)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", rec.mu, rec.u0,
                 rec.sup_norm, rec.c1_norm, rec.zeros_of_u_minus_1,
                 rec.min_linearized_eig);
  std::fclose(f);
  man.outputs.push_back(csv);
  if (c.profiles) {
    for (std::size_t i = 0; i < branch.profiles.size(); ++i) {
      const std::string path =
          c.out + "/" + branch.records[i].profile_ref + ".csv";
      ks::write_csv(branch.profiles[i], path);
      man.outputs.push_back(path);
    }
  }
  json j{{"i", branch.index},
         {"sign", c.sign},
         {"records", branch.records.size()},
         {"stop_reason", branch.stop_reason}};
  const std::string jpath = c.out + "/branch.json";
  std::ofstream(jpath) << j.dump(2) << "\n";
  man.outputs.push_back(jpath);
  if (c.plot) {
    ks::SvgSeries s;
    s.label = "B_" + std::to_string(branch.index) + (c.sign == "plus" ? "+" : "-");
    for (const auto& rec : branch.records) {
      s.x.push_back(rec.mu);
      s.y.push_back(rec.u0);
    }
    const std::string svg = c.out + "/bifurcation.svg";
    ks::write_svg_chart(svg, "bifurcation diagram", "mu", "u(0)", {s});
    man.outputs.push_back(svg);
  }
  ks::write_manifest(man, c.out);
  return 0;
}

int run_verify(const Cli& c) {
  ks::Params p{c.dim, c.mu, c.a, c.b};
  ks::RunManifest man;
  man.command = "verify";
  man.params = params_json(c, "verify");
  std::vector<ks::CheckReport> reports;
  {
    Timer t(man.timings, "checks");
    reports = ks::run_suite(c.suite, p);
  }
  fs::create_directories(c.out);
  const std::string jpath = c.out + "/report.json";
  std::ofstream(jpath) << ks::to_json(reports).dump(2) << "\n";
  man.outputs.push_back(jpath);
  bool all_pass = true;
  for (const auto& r : reports) {
    std::printf("%-36s %s gap=%.3e\n", r.name.c_str(), r.pass ? "pass" : "FAIL",
                r.gap);
    all_pass = all_pass && r.pass;
  }
  if (c.plot) {
    std::vector<ks::SvgSeries> series;
    for (const auto& r : reports) {
      if (r.trend.empty()) continue;
      ks::SvgSeries s;
      s.label = r.name;
      for (const auto& [m, g] : r.trend) {
        s.x.push_back(m);
        s.y.push_back(g);
      }
      series.push_back(std::move(s));
    }
    if (!series.empty()) {
      const std::string svg = c.out + "/trends.svg";
      ks::write_svg_chart(svg, "verification trends", "mu", "gap", series);
      man.outputs.push_back(svg);
    }
  }
  ks::write_manifest(man, c.out);
  return all_pass ? 0 : 1;
}

int run_report(const Cli& c) {
  const std::string jpath = c.out + "/report.json";
  std::ifstream in(jpath);
  if (!in)
    throw ks::SolverError(ks::errc::bad_config, "no report.json under " + c.out);
  json arr = json::parse(in);
  int fails = 0;
  std::printf("%-36s %-6s %-12s %s\n", "check", "state", "gap", "trend");
  for (const auto& r : arr) {
    const bool pass = r.value("pass", false);
    fails += pass ? 0 : 1;
    std::string trend;
    if (r.contains("trend"))
      for (const auto& t : r["trend"]) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%g, %.2e) ", t[0].get<double>(),
                      t[1].get<double>());
        trend += buf;
      }
    std::printf("%-36s %-6s %-12.3e %s\n", r.value("name", "?").c_str(),
                pass ? "pass" : "FAIL", r.value("gap", 0.0), trend.c_str());
  }
  std::printf("%d checks, %d failing\n", static_cast<int>(arr.size()), fails);
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial Keller-Segel steady states: continuation, gluing, "
               "verification"};
  app.require_subcommand(1);
  Cli c;

  app.add_option("--config", c.config, "key=value config file (flags win)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", c.dim, "space dimension N >= 2");
    sub->add_option("--mu", c.mu, "parameter mu > 1");
    sub->add_option("--a", c.a, "inner radius");
    sub->add_option("--b", c.b, "outer radius");
    sub->add_option("--out", c.out, "output directory");
    sub->add_flag("--plot", c.plot, "emit SVG charts");
  };

  CLI::App* eigs = app.add_subcommand("eigs", "radial Neumann eigenpairs");
  add_common(eigs);
  eigs->add_option("--count", c.count, "number of eigenpairs");

  CLI::App* monotone = app.add_subcommand("monotone", "monotone layer solution");
  add_common(monotone);
  monotone->add_option("--direction", c.direction, "increasing|decreasing")
      ->check(CLI::IsMember({"increasing", "decreasing"}));

  CLI::App* glue = app.add_subcommand("glue", "k-layer glued solution");
  add_common(glue);
  glue->add_option("--k", c.k, "number of layers");
  glue->add_flag("--boundary-layer", c.boundary_layer, "last maximum at r=b");
  glue->add_flag("--annulus-left", c.annulus_left, "first maximum at r=a");

  CLI::App* branch = app.add_subcommand("branch", "trace a bifurcation branch");
  add_common(branch);
  branch->add_option("--i", c.index, "branch index i >= 2");
  branch->add_option("--sign", c.sign, "minus|plus")
      ->check(CLI::IsMember({"minus", "plus"}));
  branch->add_option("--mu-max", c.mu_max, "right end of the trace");
  branch->add_flag("--profiles", c.profiles, "write per-record profile CSVs");

  CLI::App* verify = app.add_subcommand("verify", "quantitative checks");
  add_common(verify);
  verify->add_option("--suite", c.suite, "check suite")
      ->check(CLI::IsMember(ks::suite_names()));

  CLI::App* report = app.add_subcommand("report", "summarize a report.json");
  report->add_option("--out", c.out, "directory holding report.json");

  try {
    app.parse(argc, argv);
    if (!c.config.empty()) apply_config(app, c.config);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ks::SolverError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  try {
    if (eigs->parsed()) return run_eigs(c);
    if (monotone->parsed()) return run_monotone(c);
    if (glue->parsed()) return run_glue(c);
    if (branch->parsed()) return run_branch(c);
    if (verify->parsed()) return run_verify(c);
    if (report->parsed()) return run_report(c);
    return 2;
  } catch (const ks::SolverError& e) {
    json err{{"error", e.what()}, {"where", e.where()}};
    std::filesystem::create_directories(c.out);
    std::ofstream(c.out + "/error.json") << err.dump(2) << "\n";
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}
