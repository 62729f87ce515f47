// spectra: track eigenvalue branches of parametrized Hermitian families,
// build contour projectors, and certify Hoelder regularity of selections.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectra/certification.hpp"
#include "spectra/errors.hpp"
#include "spectra/io.hpp"

namespace fs = std::filesystem;
using spectra::Json;

namespace {

struct Options {
  std::string spec;
  std::string grid = "-1:1:101";
  double alpha = -1.0;  // <= 0: use the family's claimed exponent
  std::string strategy = "secant";
  std::string out;
  long long seed = -1;  // < 0: unset
  int start_index = 1;
  bool selections = false;
  bool refine = false;
  double tol_switch = -1.0;
  double tol_crossing = -1.0;
  double claimed_bound = std::numeric_limits<double>::quiet_NaN();
  double center = std::numeric_limits<double>::quiet_NaN();
  double radius = std::numeric_limits<double>::quiet_NaN();
  int target_index = 0;
  int qnodes = 64;
  std::string pair_policy = "auto";
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> nodes;
  if (text.find(':') != std::string::npos) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':')
      throw std::invalid_argument("grid: expected lo:hi:nodes, got \"" + text +
                                  "\"");
    if (n < 2) throw std::invalid_argument("grid: nodes must be >= 2");
    if (!(lo < hi)) throw std::invalid_argument("grid: need lo < hi");
    return spectra::linspace(lo, hi, n);
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) nodes.push_back(std::stod(item));
  if (nodes.size() < 2) throw std::invalid_argument("grid: need at least 2 nodes");
  return nodes;
}

Json load_spec(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--spec is required");
  if (text.front() == '{') return Json::parse(text);
  std::ifstream in(text);
  if (!in) throw std::invalid_argument("cannot open spec file \"" + text + "\"");
  return Json::parse(in);
}

spectra::ParamFamily make_family(const Options& opt) {
  std::optional<std::uint64_t> seed;
  if (opt.seed >= 0) seed = static_cast<std::uint64_t>(opt.seed);
  return spectra::family_from_json(load_spec(opt.spec), seed);
}

spectra::SelectionStrategy parse_strategy(const std::string& name) {
  if (name == "ordered") return spectra::SelectionStrategy::kOrdered;
  if (name == "secant") return spectra::SelectionStrategy::kSecant;
  if (name == "strict") return spectra::SelectionStrategy::kStrict;
  throw std::invalid_argument("strategy must be ordered, secant, or strict");
}

spectra::PairPolicy parse_policy(const std::string& name) {
  if (name == "all") return spectra::PairPolicy::kAll;
  if (name == "dyadic") return spectra::PairPolicy::kDyadic;
  if (name == "auto") return spectra::PairPolicy::kAuto;
  throw std::invalid_argument("pair policy must be all, dyadic, or auto");
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_json(const fs::path& path, const Json& value) {
  write_text(path, value.dump(2) + "\n");
}

// Runs a subcommand body, maps exceptions to the exit-code contract
// (1: a requested check failed or a numerical guard fired, 2: bad input)
// and always emits a machine-readable summary, even on failure.
int run_guarded(const Options& opt, const std::string& command,
                const std::function<int(Json&)>& body) {
  Json summary{{"command", command}};
  int code = 0;
  try {
    code = body(summary);
  } catch (const Json::exception& e) {
    summary["error"] = e.what();
    code = 2;
  } catch (const std::invalid_argument& e) {
    summary["error"] = e.what();
    code = 2;
  } catch (const spectra::SpectralError& e) {
    summary["error"] = e.what();
    code = 1;
  } catch (const std::exception& e) {
    summary["error"] = e.what();
    code = 1;
  }
  summary["passed"] = (code == 0);
  summary["exit_code"] = code;
  if (!opt.out.empty()) {
    fs::create_directories(opt.out);
    write_json(fs::path(opt.out) / "summary.json", summary);
  }
  std::cout << summary.dump(2) << "\n";
  return code;
}

int cmd_gen(const Options& opt) {
  Json summary;
  int code = 0;
  try {
    const auto family = make_family(opt);
    summary = spectra::family_summary(family);
    if (!opt.out.empty()) {
      fs::create_directories(opt.out);
      write_json(fs::path(opt.out) / "family.json", summary);
    }
    std::cout << summary.dump(2) << "\n";
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  }
  return code;
}

int cmd_track(const Options& opt) {
  return run_guarded(opt, "track", [&](Json& summary) {
    const auto family = make_family(opt);
    const auto grid = parse_grid(opt.grid);
    auto samples = spectra::sample_grid(family, grid);
    auto events = spectra::detect_crossings(samples, opt.tol_crossing);
    if (opt.refine) {
      samples = spectra::refine_crossing_brackets(family, samples, events);
      events = spectra::detect_crossings(samples, opt.tol_crossing);
    }
    const auto branches = spectra::ordered_branches(samples);

    fs::create_directories(opt.out);
    {
      std::ostringstream csv;
      spectra::write_branches_csv(csv, branches);
      write_text(fs::path(opt.out) / "branches.csv", csv.str());
    }
    write_json(fs::path(opt.out) / "crossings.json", spectra::crossings_json(events));

    int total_switches = 0;
    if (opt.selections) {
      std::vector<spectra::Branch> picks;
      const auto strategy = parse_strategy(opt.strategy);
      for (int k = 1; k <= family.matrix_dim; ++k)
        picks.push_back(spectra::continuous_selection(samples, k, strategy,
                                                      opt.tol_switch));
      for (const auto& b : picks)
        total_switches += static_cast<int>(b.switch_points.size());
      std::ostringstream csv;
      spectra::write_branches_csv(csv, picks);
      write_text(fs::path(opt.out) / "selections.csv", csv.str());
    }

    summary["family"] = spectra::family_summary(family);
    summary["nodes"] = samples.size();
    summary["branches"] = branches.size();
    summary["crossings"] = events.size();
    if (opt.selections) summary["selection_switches"] = total_switches;
    return 0;
  });
}

int cmd_certify(const Options& opt) {
  return run_guarded(opt, "certify", [&](Json& summary) {
    const auto family = make_family(opt);
    const auto grid = parse_grid(opt.grid);
    const auto samples = spectra::sample_grid(family, grid);
    const auto strategy = parse_strategy(opt.strategy);
    const auto policy = parse_policy(opt.pair_policy);
    const auto selection = spectra::continuous_selection(
        samples, opt.start_index, strategy, opt.tol_switch);

    const double alpha = opt.alpha > 0.0 ? opt.alpha : family.claimed_alpha;
    std::optional<double> claimed;
    if (!std::isnan(opt.claimed_bound)) claimed = opt.claimed_bound;
    const auto cert = spectra::holder_constant(selection, alpha, policy, claimed);
    const auto transfer =
        spectra::verify_transfer_bound(samples, selection, alpha, policy);

    Json report = spectra::certificate_json(cert);
    report["note"] =
        "certified over the tested pairs of a compact grid; not a proof of "
        "the local Hoelder bound";
    report["transfer"] = spectra::transfer_json(transfer);
    bool all_ok = cert.passed && transfer.holds;
    if (alpha == 1.0) {
      const auto model = spectra::estimate_growth_constant(selection);
      const auto gron = spectra::gronwall_check(selection, model);
      report["gronwall"] = spectra::gronwall_json(model, gron);
      all_ok = all_ok && gron.holds;
    } else {
      report["gronwall"] = nullptr;
    }

    fs::create_directories(opt.out);
    write_json(fs::path(opt.out) / "certificate.json", report);
    summary["certificate"] = report;
    return all_ok ? 0 : 1;
  });
}

int cmd_project(const Options& opt) {
  return run_guarded(opt, "project", [&](Json& summary) {
    const auto family = make_family(opt);
    const auto grid = parse_grid(opt.grid);
    const auto samples = spectra::sample_grid(family, grid);

    spectra::Contour gamma;
    if (!std::isnan(opt.center) && !std::isnan(opt.radius)) {
      gamma = {spectra::Complex(opt.center, 0.0), opt.radius, opt.qnodes};
    } else if (opt.target_index >= 1) {
      gamma = spectra::default_contour(samples.front().values, opt.target_index);
      gamma.nodes = opt.qnodes;
    } else {
      throw std::invalid_argument(
          "project: pass --center and --radius, or --target-index");
    }
    gamma.validate();

    Json nodes = Json::array();
    bool any_failed = false;
    bool rank_constant = true;
    int first_rank = -1;
    double max_dev = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      Json entry{{"t", samples[j].t}};
      try {
        const auto a = family.eval(samples[j].t);
        const auto p = spectra::contour_projector(a, gamma);
        entry["rank"] = p.rank;
        entry["trace"] = p.matrix.trace().real();
        entry["idempotency_defect"] = p.idempotency_defect;
        const auto block = spectra::project_block(a, p);
        Json values = Json::array();
        if (block) {
          const auto beig = spectra::eig_ordered(*block);
          int offset = 0;
          for (double mu : samples[j].values)
            if (mu < gamma.center.real() - gamma.radius) ++offset;
          for (int k = 0; k < p.rank; ++k) {
            values.push_back(beig.values[k]);
            max_dev = std::max(max_dev, std::abs(beig.values[k] -
                                                 samples[j].values[offset + k]));
          }
        }
        entry["block_eigenvalues"] = values;
        if (first_rank < 0)
          first_rank = p.rank;
        else if (p.rank != first_rank)
          rank_constant = false;
      } catch (const spectra::SpectralError& e) {
        entry["error"] = e.what();
        any_failed = true;
      }
      nodes.push_back(entry);
    }

    Json report{{"center", gamma.center.real()},
                {"radius", gamma.radius},
                {"quadrature_nodes", gamma.nodes},
                {"nodes", nodes},
                {"rank_constant", rank_constant},
                {"max_branch_deviation", max_dev},
                {"passed", !any_failed && rank_constant}};
    fs::create_directories(opt.out);
    write_json(fs::path(opt.out) / "projector_report.json", report);
    summary["projector"] = report;
    return (!any_failed && rank_constant) ? 0 : 1;
  });
}

int cmd_report(const Options& opt) {
  return run_guarded(opt, "report", [&](Json& summary) {
    if (opt.out.empty()) throw std::invalid_argument("report: --out is required");
    Json checks = Json::object();
    bool all_ok = true;
    bool any = false;
    auto consume = [&](const std::string& file, auto&& extract) {
      const fs::path path = fs::path(opt.out) / file;
      if (!fs::exists(path)) return;
      std::ifstream in(path);
      Json value = Json::parse(in);
      extract(value);
      any = true;
    };
    consume("certificate.json", [&](const Json& v) {
      checks["certificate_passed"] = v.at("passed");
      all_ok = all_ok && v.at("passed").get<bool>();
      if (v.contains("transfer")) {
        checks["transfer_holds"] = v.at("transfer").at("holds");
        all_ok = all_ok && v.at("transfer").at("holds").get<bool>();
      }
      if (v.contains("gronwall") && !v.at("gronwall").is_null()) {
        checks["gronwall_holds"] = v.at("gronwall").at("holds");
        all_ok = all_ok && v.at("gronwall").at("holds").get<bool>();
      }
    });
    consume("projector_report.json", [&](const Json& v) {
      checks["projector_passed"] = v.at("passed");
      all_ok = all_ok && v.at("passed").get<bool>();
    });
    consume("crossings.json", [&](const Json& v) {
      checks["crossings"] = v.size();
    });
    if (!any) throw std::invalid_argument("report: no artifacts found in " + opt.out);
    Json report{{"checks", checks}, {"passed", all_ok}};
    write_json(fs::path(opt.out) / "report.json", report);
    summary["report"] = report;
    return all_ok ? 0 : 1;
  });
}

void add_common(CLI::App* cmd, Options& opt, bool needs_out) {
  cmd->add_option("--spec", opt.spec, "family spec: JSON file path or inline JSON")
      ->required();
  cmd->add_option("--grid", opt.grid, "lo:hi:nodes or comma-separated nodes");
  cmd->add_option("--alpha", opt.alpha, "exponent override (default: family's)");
  cmd->add_option("--strategy", opt.strategy, "ordered | secant | strict");
  cmd->add_option("--seed", opt.seed, "default seed for seeded families");
  auto* out = cmd->add_option("--out", opt.out, "output directory");
  if (needs_out) out->required();
  cmd->add_option("--tol-switch", opt.tol_switch,
                  "selection switch tolerance (default 1e-6 * scale)");
  cmd->add_option("--tol-crossing", opt.tol_crossing,
                  "crossing detection tolerance (default 1e-6 * scale)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eigenvalue tracking, Riesz spectral projectors, and Hoelder "
      "regularity certificates for parametrized Hermitian families"};
  app.require_subcommand(1);
  Options opt;

  auto* gen = app.add_subcommand("gen", "resolve a family spec and echo its metadata");
  gen->add_option("--spec", opt.spec, "family spec: JSON file path or inline JSON")
      ->required();
  gen->add_option("--seed", opt.seed, "default seed for seeded families");
  gen->add_option("--out", opt.out, "output directory");

  auto* track = app.add_subcommand(
      "track", "sample ordered branches and detect crossings");
  add_common(track, opt, true);
  track->add_flag("--selections", opt.selections,
                  "also reconstruct a continuous selection per start index");
  track->add_flag("--refine", opt.refine,
                  "one dyadic refinement pass on flagged crossing brackets");

  auto* certify = app.add_subcommand(
      "certify", "Hoelder certificate plus transfer and Gronwall reports");
  add_common(certify, opt, true);
  certify->add_option("--start-index", opt.start_index,
                      "1-based ordered index the selection starts on");
  certify->add_option("--claimed-bound", opt.claimed_bound,
                      "bound the certificate is checked against");
  certify->add_option("--pair-policy", opt.pair_policy, "all | dyadic | auto");

  auto* project = app.add_subcommand(
      "project", "contour projector diagnostics across a parameter window");
  add_common(project, opt, true);
  project->add_option("--center", opt.center, "contour center (real axis)");
  project->add_option("--radius", opt.radius, "contour radius");
  project->add_option("--target-index", opt.target_index,
                      "derive the contour from this eigenvalue group instead");
  project->add_option("--qnodes", opt.qnodes, "initial quadrature node count");

  auto* report = app.add_subcommand("report", "aggregate artifacts in --out");
  report->add_option("--out", opt.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad command line is bad input
  }

  if (gen->parsed()) return cmd_gen(opt);
  if (track->parsed()) return cmd_track(opt);
  if (certify->parsed()) return cmd_certify(opt);
  if (project->parsed()) return cmd_project(opt);
  if (report->parsed()) return cmd_report(opt);
  return 2;
}
