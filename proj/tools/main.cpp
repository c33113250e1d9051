#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfchan/bounds.hpp"
#include "tfchan/localization.hpp"
#include "tfchan/report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace tfchan;
using channel::CaseTag;
using channel::SupportRegion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitPartial = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  // a manifest is accepted in place of its config
  if (j.contains("config") && j.contains("tool")) return j["config"];
  return j;
}

CaseTag parse_case(const json& j) {
  const std::string c = j.value("case", "C1");
  if (c == "C1") return CaseTag::c1();
  if (c == "C2") return CaseTag::c2();
  throw ConfigError("case must be C1 or C2");
}

double parse_q(const json& j) {
  if (j.contains("q") && j["q"].is_string()) {
    if (j["q"] == "inf") return std::numeric_limits<double>::infinity();
    throw ConfigError("q must be a number or \"inf\"");
  }
  return j.value("q", 2.0);
}

SupportRegion parse_region(const json& j) {
  const std::string shape = j.value("shape", "disc");
  if (shape == "disc") return SupportRegion::disc_of_measure(j.at("U").get<double>());
  if (shape == "square")
    return SupportRegion::centered_square_of_measure(j.at("U").get<double>());
  if (shape == "rect")
    return SupportRegion::centered_rect(j.at("tau_half").get<double>(),
                                        j.at("nu_half").get<double>());
  if (shape == "grid")
    return SupportRegion::grid_union(j.value("K", 4), j.at("u").get<double>());
  throw ConfigError("shape must be disc, square, rect or grid");
}

mc::McConfig parse_mc(const json& j) {
  mc::McConfig cfg;
  cfg.runs = j.value("N", 1000L);
  cfg.grid_order = j.value("K", 4);
  cfg.p = j.value("p", 2.0);
  cfg.q = parse_q(j);
  cfg.tag = parse_case(j);
  cfg.alpha = tfcore::Polarization{j.value("alpha", 0.0)};
  if (j.contains("U_law")) {
    cfg.u_size_lo = j["U_law"].at(0).get<double>();
    cfg.u_size_hi = j["U_law"].at(1).get<double>();
  }
  cfg.mu_half_width = j.value("mu_half_width", 5.0);
  cfg.delta = j.value("Delta", 1e-8);
  cfg.master_seed = j.value("master_seed", 1ULL);
  return cfg;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& config, uint64_t master_seed,
                    const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "tfchan";
  m["version"] = report::kToolVersion;
  m["command"] = command;
  m["master_seed"] = master_seed;
  m["config"] = config;
  m["outputs"] = outputs;
  m["timestamp"] = static_cast<long>(std::time(nullptr));
  std::ofstream f(out_dir / "manifest.json");
  f << m.dump(2) << "\n";
}

int cmd_bounds(const json& cfg, const fs::path& out_dir, bool as_json) {
  bounds::BoundInputs in;
  in.U = parse_region(cfg);
  in.tag = parse_case(cfg);
  in.p = cfg.value("p", 2.0);
  in.q = parse_q(cfg);
  in.alpha = tfcore::Polarization{cfg.value("alpha", 0.0)};
  if (!(in.p >= 1.0)) throw ConfigError("p must be >= 1");

  const auto rep = bounds::assemble_report(in);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_manifest(out_dir, "bounds", cfg, 0, {"bounds.txt"});
    std::ofstream f(out_dir / "bounds.txt");
    f << report::bound_report_text(rep);
  }
  if (as_json) {
    json j = json::array();
    for (const auto& row : rep)
      j.push_back({{"name", row.name},
                   {"value", row.applicable ? json(row.value) : json()},
                   {"applicable", row.applicable},
                   {"note", row.note}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report::bound_report_text(rep);
  }
  return kExitOk;
}

int cmd_mc(const json& cfg_json, const fs::path& out_dir, bool svg, int threads,
           uint64_t seed_override, bool has_seed) {
  mc::McConfig cfg = parse_mc(cfg_json);
  if (has_seed) cfg.master_seed = seed_override;
  cfg.threads = threads;

  fs::create_directories(out_dir);
  std::vector<std::string> outputs{"results.csv"};
  if (svg) outputs.push_back("scatter.svg");
  json echo = cfg_json;
  echo["master_seed"] = cfg.master_seed;
  write_manifest(out_dir, "mc", echo, cfg.master_seed, outputs);

  std::vector<mc::McRecord> records;
  try {
    records = mc::run_mc(cfg);
  } catch (const mc::McAborted& e) {
    std::cerr << e.what() << "\n";
    return kExitPartial;
  }

  {
    std::ofstream f(out_dir / "results.csv", std::ios::binary);
    f << report::csv_document(records, cfg);
  }
  if (svg) {
    std::ofstream f(out_dir / "scatter.svg", std::ios::binary);
    f << report::svg_scatter(records, cfg);
  }

  long failed = 0;
  double max_ratio_gl = 0.0, sum_gu = 0.0;
  std::vector<double> gl_over_uniform;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
      continue;
    }
    if (std::isfinite(r.gl_bound) && r.gl_bound > 0)
      max_ratio_gl = std::max(max_ratio_gl, r.ratio / r.gl_bound);
    if (std::isfinite(r.gl_bound) && r.uniform_bound > 0) {
      gl_over_uniform.push_back(r.gl_bound / r.uniform_bound);
      sum_gu += r.gl_bound / r.uniform_bound;
    }
  }
  double median_gu = 0.0;
  if (!gl_over_uniform.empty()) {
    std::sort(gl_over_uniform.begin(), gl_over_uniform.end());
    median_gu = gl_over_uniform[gl_over_uniform.size() / 2];
  }
  std::cout << "runs: " << records.size() << "  failed: " << failed
            << "  max(ratio/gl): " << report::format_double(max_ratio_gl)
            << "  median(gl/uniform): " << report::format_double(median_gu)
            << "  mean(gl/uniform): "
            << report::format_double(
                   gl_over_uniform.empty() ? 0.0 : sum_gu / gl_over_uniform.size())
            << "\n";
  return failed > 0 ? kExitPartial : kExitOk;
}

int cmd_ep(const json& cfg, bool as_json) {
  const int K = cfg.value("K", 4);
  const double u_size = cfg.at("U").get<double>();
  const double u = std::sqrt(u_size) / K;
  std::vector<Complex> c;
  if (cfg.contains("coefficients")) {
    for (const auto& entry : cfg["coefficients"])
      c.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
    if (static_cast<int>(c.size()) != K * K)
      throw ConfigError("coefficients must hold K^2 entries");
  } else {
    mc::Rng rng(cfg.value("seed", 1ULL));
    c = mc::sample_channel(K, u_size, rng).c;
  }
  const tfcore::PhasePoint mu{cfg.at("mu").at(0).get<double>(),
                              cfg.at("mu").at(1).get<double>()};
  const double p = cfg.value("p", 2.0);
  const double q = parse_q(cfg);
  const auto tag = parse_case(cfg);
  const tfcore::Polarization pol{cfg.value("alpha", 0.0)};
  const double Delta = cfg.value("Delta", 1e-8);

  if (mc::cell_integral_has_fast_path(tag, pol))
    std::cerr << "route: analytic fast path (C2, alpha = 1/2)\n";

  try {
    const auto r = mc::ep_certified(c, u, mu, p, q, tag, pol, Delta);
    if (as_json) {
      json j{{"ratio", r.ratio}, {"certificate", r.certificate}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "ratio: " << report::format_double(r.ratio)
                << "  certificate: " << report::format_double(r.certificate) << "\n";
    }
    return kExitOk;
  } catch (const specfun::AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what()
              << "  best: " << report::format_double(e.best_value.real()) << "\n";
    return kExitAccuracy;
  }
}

int cmd_loc(const json& cfg, bool as_json) {
  const auto U = parse_region(cfg);
  const int M = cfg.value("M", 32);
  const double r = cfg.value("r", 2.0);
  const double tol = cfg.value("tol", 1e-8);

  json out;
  out["measure"] = U.measure();
  out["N1"] = localization::fidelity_bound(U.measure(), 1.0);
  out["N2"] = localization::fidelity_bound(U.measure(), 2.0);
  out["N_r"] = localization::fidelity_bound(U.measure(), r);
  out["r"] = r;

  if (U.origin_symmetric()) {
    auto q = localization::localization_matrix(U, M, tol);
    out["lambda_max_Q"] = localization::top_eigenvalue(q, localization::EigWhich::kQ);
    out["lambda_max_QstarQ"] =
        localization::top_eigenvalue(q, localization::EigWhich::kQstarQ);
    json lowers = json::array();
    for (int m = 0; m <= 3; ++m)
      lowers.push_back(localization::laguerre_lower_bound(U, m));
    out["laguerre_lower_bounds"] = lowers;
  } else {
    out["note"] = "non-symmetric support: eigenvalue block omitted";
  }

  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "|U| = " << report::format_double(U.measure()) << "\n";
  if (U.origin_symmetric()) {
    const double lqq = out["lambda_max_QstarQ"];
    std::cout << "lambda_max(Q)      = "
              << report::format_double(out["lambda_max_Q"]) << "\n";
    std::cout << "lambda_max(Q*Q)    = " << report::format_double(lqq) << "\n";
    for (int m = 0; m <= 3; ++m)
      std::cout << "laguerre_lower[" << m << "] = "
                << report::format_double(out["laguerre_lower_bounds"][m]) << "\n";
    std::cout << "chain: laguerre_lower[0] <= lambda_max(Q*Q) <= N2: "
              << report::format_double(out["laguerre_lower_bounds"][0])
              << " <= " << report::format_double(lqq)
              << " <= " << report::format_double(out["N2"]) << "\n";
  } else {
    std::cout << "non-symmetric support: eigenvalue block omitted\n";
  }
  std::cout << "N1 = " << report::format_double(out["N1"]) << "\n";
  std::cout << "N2 = " << report::format_double(out["N2"]) << "\n";
  std::cout << "N_r(r=" << r << ") = " << report::format_double(out["N_r"]) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate-eigenstructure bounds for doubly-dispersive channels"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool svg = false, as_json = false;
  int threads = 0;
  uint64_t seed = 0;
  bool has_seed = false;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    auto* out = sub->add_option("--out", out_dir, "output directory");
    if (needs_out) out->required();
    sub->add_flag("--json", as_json, "machine-readable output");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    sub->add_option("--seed", seed, "override the master seed")
        ->each([&](const std::string&) { has_seed = true; });
  };

  auto* b = app.add_subcommand("bounds", "evaluate every analytic bound");
  add_common(b, false);
  auto* m = app.add_subcommand("mc", "seeded Monte-Carlo campaign");
  add_common(m, true);
  m->add_flag("--svg", svg, "emit a log-log scatter plot");
  auto* e = app.add_subcommand("ep", "one certified E_p ratio");
  add_common(e, false);
  auto* l = app.add_subcommand("loc", "localization eigenvalue report");
  add_common(l, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  if (const char* env = std::getenv("TFCHAN_THREADS")) threads = std::atoi(env);

  try {
    const json cfg = load_config(config_path);
    if (b->parsed()) return cmd_bounds(cfg, out_dir, as_json);
    if (m->parsed()) return cmd_mc(cfg, out_dir, svg, threads, seed, has_seed);
    if (e->parsed()) return cmd_ep(cfg, as_json);
    if (l->parsed()) return cmd_loc(cfg, as_json);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const specfun::AccuracyError& err) {
    std::cerr << "accuracy failure: " << err.what() << "\n";
    return kExitAccuracy;
  }
  return kExitConfig;
}
