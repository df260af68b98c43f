// SPDX-License-Identifier: Apache-2.0
//
// bclab: command-line front end over the C API. Each run writes its outputs
// into --out and finishes with manifest.json listing them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bclab/bclab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure {
  int code;
  std::string message;
};

void check(bc_status st) {
  if (st != BC_OK) throw Failure{static_cast<int>(st), bc_last_error()};
}

[[noreturn]] void usage(const std::string& msg) { throw Failure{BC_ERR_USAGE, msg}; }

// Owning wrapper for strings returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  bc_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PointSetPtr = std::unique_ptr<bc_pointset, Deleter<bc_pointset, bc_pointset_free>>;
using CdfPtr = std::unique_ptr<bc_cdf, Deleter<bc_cdf, bc_cdf_free>>;
using SequencePtr = std::unique_ptr<bc_sequence, Deleter<bc_sequence, bc_sequence_free>>;
using SpacingsPtr = std::unique_ptr<bc_spacings, Deleter<bc_spacings, bc_spacings_free>>;
using HistogramPtr = std::unique_ptr<bc_histogram, Deleter<bc_histogram, bc_histogram_free>>;

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) usage(std::string("empty ") + what);
  return out;
}

class Run {
 public:
  Run(std::string subcommand, std::vector<std::string> argv, fs::path dir)
      : subcommand_(std::move(subcommand)), argv_(std::move(argv)), dir_(std::move(dir)),
        start_(std::chrono::steady_clock::now()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) usage("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) usage("cannot write " + (dir_ / name).string());
    f << content;
    outputs_.push_back(name);
  }

  // For files produced by the library itself.
  fs::path reserve(const std::string& name) {
    outputs_.push_back(name);
    return dir_ / name;
  }

  void seed(std::uint64_t s) { seed_ = s; }

  void finish() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json m{{"subcommand", subcommand_},
           {"argv", argv_},
           {"seed", seed_ ? json(*seed_) : json(nullptr)},
           {"versions", {{"bclab", bc_version()}}},
           {"outputs", outputs_},
           {"wall_time_s", wall}};
    std::ofstream f(dir_ / "manifest.json", std::ios::binary);
    if (!f) usage("cannot write manifest");
    f << m.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  std::vector<std::string> argv_;
  fs::path dir_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
  std::optional<std::uint64_t> seed_;
};

unsigned default_workers() {
  if (const char* env = std::getenv("BCLAB_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

// Plot script overlaying Pois[s, ell, N] = 0.1 ell 2^N s^(ell-1) e^-s / (ell-1)!.
std::string plot_script(double lambda, unsigned n, unsigned ell, const std::string& rescale,
                        const std::string& csv) {
  std::ostringstream o;
  o << "# gnuplot script: spacing histogram with Poisson overlay\n"
    << "# lambda = " << real(lambda) << ", N = " << n << ", ell = " << ell << ", rescale = " << rescale << "\n"
    << "set datafile separator ','\n"
    << "set key top right\n"
    << "set xrange [0:" << 5 * ell << "]\n"
    << "set style fill solid 0.4\n"
    << "ell = " << ell << "\n"
    << "N = " << n << "\n"
    << "Pois(s, ell, N) = .1*ell*2**N*s**(ell-1)*exp(-s)/gamma(ell)\n"
    << "plot '" << csv << "' every ::1 using (($1+$2)/2):3:($2-$1) with boxes title 'spacings', \\\n"
    << "     Pois(x, ell, N) with lines lw 2 title 'Poisson'\n";
  return o.str();
}

void cmd_spacings(Run& run, double lambda, unsigned n, unsigned ell, const std::string& rescale, bool primed) {
  if (primed && rescale != "none") usage("--primed conflicts with --rescale " + rescale);
  bc_pointset* raw = nullptr;
  check(bc_generate(lambda, n, primed ? BC_FORM_PRIMED : BC_FORM_STANDARD, &raw));
  PointSetPtr ps(raw);
  if (bc_pointset_outside_range(ps.get())) std::cerr << "warning: lambda <= 1/2 is outside (1/2, 1)\n";

  bc_spacings* sp_raw = nullptr;
  if (rescale == "none") {
    check(bc_spacings_pointset(ps.get(), ell, &sp_raw));
  } else {
    bc_cdf* cdf_raw = nullptr;
    if (rescale == "sqrt-half") {
      check(bc_cdf_sqrt_half(&cdf_raw));
    } else if (rescale.rfind("empirical:", 0) == 0) {
      const std::string m = rescale.substr(10);
      char* end = nullptr;
      const unsigned long level = std::strtoul(m.c_str(), &end, 10);
      if (m.empty() || *end != '\0') usage("bad --rescale level: " + m);
      check(bc_cdf_empirical(lambda, static_cast<unsigned>(level), 4096, &cdf_raw));
    } else {
      usage("--rescale must be none, sqrt-half or empirical:M");
    }
    CdfPtr cdf(cdf_raw);
    bc_sequence* seq_raw = nullptr;
    check(bc_rescale(ps.get(), cdf.get(), &seq_raw));
    SequencePtr seq(seq_raw);
    for (std::size_t i = 0; i < bc_sequence_warning_count(seq.get()); ++i)
      std::cerr << "warning: " << bc_sequence_warning(seq.get(), i) << '\n';
    check(bc_spacings_sequence(seq.get(), ell, &sp_raw));
  }
  SpacingsPtr sp(sp_raw);

  bc_histogram* h_raw = nullptr;
  check(bc_histogram_build(sp.get(), &h_raw));
  HistogramPtr h(h_raw);
  char* csv = nullptr;
  check(bc_histogram_csv(h.get(), &csv));
  char* gof = nullptr;
  check(bc_gof_json(sp.get(), &gof));
  json g = json::parse(take(gof));
  g["lambda"] = lambda;
  g["N"] = n;
  g["ell"] = ell;
  g["rescale"] = rescale;
  g["overflow"] = bc_histogram_overflow(h.get());

  run.write("histogram.csv", take(csv));
  run.write("gof.json", g.dump(2) + "\n");
  run.write("spacings.gp", plot_script(lambda, n, ell, rescale, "histogram.csv"));
  std::cout << "ks " << real(g["ks"].get<double>()) << "\nchi2 " << real(g["chi2"].get<double>()) << '\n';
}

void cmd_paircorr(Run& run, double lambda, unsigned n, const std::string& grid_text,
                  const std::string& interval, bool primed) {
  const auto grid = parse_list(grid_text, "--s-grid");
  bc_pointset* raw = nullptr;
  check(bc_generate(lambda, n, primed ? BC_FORM_PRIMED : BC_FORM_STANDARD, &raw));
  PointSetPtr ps(raw);
  std::vector<double> r(grid.size());
  if (interval.empty()) {
    check(bc_pair_correlation(ps.get(), grid.data(), grid.size(), r.data()));
  } else {
    if (primed) usage("--interval requires the standard form; drop --primed");
    const auto ab = parse_list(interval, "--interval");
    if (ab.size() != 2) usage("--interval takes a,b");
    std::size_t window = 0;
    check(bc_pair_correlation_interval(ps.get(), ab[0], ab[1], grid.data(), grid.size(), r.data(), &window));
  }
  if (std::find(grid.begin(), grid.end(), 0.0) != grid.end()) {
    // Pairs closer than the default distinctness tolerance 2^-44.
    const double count = static_cast<double>(bc_pointset_size(ps.get()));
    const double s_tol = std::ldexp(count, -44);
    double r_tol = 0.0;
    check(bc_pair_correlation(ps.get(), &s_tol, 1, &r_tol));
    std::cerr << "warning: R2(0) counts coincidences at floating-point resolution ("
              << real(r_tol * count) << " ordered pairs within 2^-44); for an algebraic parameter use "
              << "`bclab exact --minpoly ...` for the exact count\n";
  }
  char* csv = nullptr;
  check(bc_correlation_csv(grid.data(), r.data(), grid.size(), &csv));
  const std::string text = take(csv);
  run.write("paircorr.csv", text);
  std::cout << text;
}

void cmd_exact(Run& run, const std::string& minpoly, unsigned n) {
  char* out = nullptr;
  check(bc_exact_report_json(minpoly.c_str(), n, &out));
  const std::string text = take(out);
  run.write("exact.json", text);
  const json j = json::parse(text);
  std::cout << "distinct_count " << j["distinct_count"] << "\ncoincidence_rate "
            << real(j["coincidence_rate"].get<double>()) << "\nverdict " << j["classification"]["verdict"].get<std::string>()
            << '\n';
  if (!j["reversed_classification"].is_null())
    std::cout << "reversed_verdict " << j["reversed_classification"]["verdict"].get<std::string>() << '\n';
}

void cmd_gaps(Run& run, double lambda, unsigned n, bool primed, double tol) {
  bc_pointset* raw = nullptr;
  check(bc_generate(lambda, n, primed ? BC_FORM_PRIMED : BC_FORM_STANDARD, &raw));
  PointSetPtr ps(raw);
  char* out = nullptr;
  check(bc_gaps_json(ps.get(), tol, &out));
  const std::string text = take(out);
  run.write("gaps.json", text);
  std::cout << text;
}

void cmd_classify(Run& run, const std::string& poly) {
  char* out = nullptr;
  check(bc_classify_json(poly.c_str(), &out));
  const std::string text = take(out);
  run.write("classify.json", text);
  std::cout << json::parse(text)["verdict"].get<std::string>() << '\n';
}

void cmd_greedy(Run& run, double lambda, unsigned k) {
  char* out = nullptr;
  check(bc_greedy_json(lambda, k, &out));
  const std::string text = take(out);
  run.write("greedy.json", text);
  const json j = json::parse(text);
  std::cout << j["nearest_zero"]["poly"].get<std::string>() << '\n'
            << real(j["nearest_zero"]["root"].get<double>()) << '\n';
}

void cmd_growth(Run& run, const std::string& block) {
  char* out = nullptr;
  check(bc_growth_json(block.c_str(), &out));
  const std::string text = take(out);
  run.write("growth.json", text);
  std::cout << real(json::parse(text)["rho"].get<double>()) << '\n';
}

void cmd_generate(Run& run, double lambda, unsigned n, bool primed, const std::string& format) {
  bc_pointset* raw = nullptr;
  check(bc_generate(lambda, n, primed ? BC_FORM_PRIMED : BC_FORM_STANDARD, &raw));
  PointSetPtr ps(raw);
  if (format == "bin") {
    check(bc_pointset_write_binary(ps.get(), run.reserve("points.bin").c_str()));
  } else {
    check(bc_pointset_write_csv(ps.get(), run.reserve("points.csv").c_str()));
  }
}

struct SweepArgs {
  std::string mode = "average";
  double lo = 0.51, hi = 0.66;
  unsigned levels = 14;
  std::string s_grid = "0.5,1,2,4";
  std::size_t samples = 64;
  std::string quadrature = "midpoint";
  std::uint64_t seed = 0;
  bool primed = false;
  bool keep_curves = false;
  bool progress = false;
  unsigned workers = 1;
  unsigned n_min = 10, n_max = 18;
  double alpha_coef = 1.0, alpha_base = 3.0, alpha_power = 1.1;
  unsigned degree = 30;
  std::string rho_grid = "0.01,0.001,0.0001";
  unsigned depth = 1;
  double epsilon = 0.5;
  unsigned n_cap = 20;
};

void cmd_sweep(Run& run, const SweepArgs& a) {
  char* out = nullptr;
  std::string name;
  if (a.mode == "average") {
    const auto grid = parse_list(a.s_grid, "--s-grid");
    if (a.quadrature != "midpoint" && a.quadrature != "monte-carlo")
      usage("--quadrature must be midpoint or monte-carlo");
    bc_sweep_config c{a.lo, a.hi, a.levels, grid.data(), grid.size(), a.samples, a.quadrature == "monte-carlo",
                      a.seed, a.primed ? BC_FORM_PRIMED : BC_FORM_STANDARD, a.workers, a.keep_curves, a.progress};
    run.seed(a.seed);
    check(bc_sweep_average_json(&c, &out));
    name = "sweep_average.json";
  } else if (a.mode == "mingap") {
    std::vector<double> lambdas(a.samples);
    check(bc_sample_lambdas(a.lo, a.hi, a.samples, 1, a.seed, lambdas.data()));
    run.seed(a.seed);
    check(bc_min_gap_scan_json(lambdas.data(), lambdas.size(), a.n_min, a.n_max, a.alpha_coef, a.alpha_base,
                               a.alpha_power, a.workers, &out));
    name = "sweep_mingap.json";
  } else if (a.mode == "transversality") {
    const auto rho = parse_list(a.rho_grid, "--rho-grid");
    run.seed(a.seed);
    check(bc_transversality_json(a.degree, a.samples, a.seed, rho.data(), rho.size(), a.lo, a.hi, a.workers, &out));
    name = "sweep_transversality.json";
  } else if (a.mode == "attract") {
    check(bc_attract_json(a.lo, a.hi, a.depth, a.epsilon, a.n_cap, &out));
    name = "sweep_attract.json";
  } else {
    usage("--mode must be average, mingap, transversality or attract");
  }
  const std::string text = take(out);
  run.write(name, text);
  std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Bernoulli convolution point sets: spacings, pair correlation, exact residues"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bc_version()));

  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  double lambda = 0.0;
  unsigned n = 0;
  bool primed = false;

  auto* sp = app.add_subcommand("spacings", "Spacing histogram, goodness of fit and plot script");
  unsigned ell = 1;
  std::string rescale = "none";
  sp->add_option("--lambda", lambda)->required();
  sp->add_option("--n", n)->required();
  sp->add_option("--ell", ell)->capture_default_str()->check(CLI::PositiveNumber);
  sp->add_option("--rescale", rescale, "none | sqrt-half | empirical:M")->capture_default_str();
  sp->add_flag("--primed", primed);

  auto* pc = app.add_subcommand("paircorr", "Pair correlation curve");
  std::string s_grid, interval;
  pc->add_option("--lambda", lambda)->required();
  pc->add_option("--n", n)->required();
  pc->add_option("--s-grid", s_grid, "Comma-separated s values")->required();
  pc->add_option("--interval", interval, "Restrict to the window a,b");
  pc->add_flag("--primed", primed);

  auto* ex = app.add_subcommand("exact", "Exact residues modulo a minimal polynomial");
  std::string minpoly;
  ex->add_option("--minpoly", minpoly)->required();
  ex->add_option("--n", n)->required();

  auto* gp = app.add_subcommand("gaps", "Minimal and maximal gaps");
  double tol = -1.0;
  gp->add_option("--lambda", lambda)->required();
  gp->add_option("--n", n)->required();
  gp->add_flag("--primed", primed);
  gp->add_option("--distinct-tol", tol, "Absolute tolerance (default relative 2^-44)");

  auto* cl = app.add_subcommand("classify", "Pisot / Garsia classification");
  std::string poly;
  cl->add_option("--poly", poly)->required();

  auto* gr = app.add_subcommand("greedy", "Greedy digits and the nearby {0,+-1} zero");
  unsigned k = 0;
  gr->add_option("--lambda", lambda)->required();
  gr->add_option("--k", k)->required();

  auto* gw = app.add_subcommand("growth", "Growth rate of words avoiding a block");
  std::string block;
  gw->add_option("--block", block)->required();

  auto* ge = app.add_subcommand("generate", "Write a point set");
  std::string format = "csv";
  ge->add_option("--lambda", lambda)->required();
  ge->add_option("--n", n)->required();
  ge->add_flag("--primed", primed);
  ge->add_option("--format", format)->check(CLI::IsMember({"csv", "bin"}))->capture_default_str();

  auto* sw = app.add_subcommand("sweep", "Parameter sweeps");
  SweepArgs sa;
  sa.workers = default_workers();
  sw->add_option("--mode", sa.mode, "average | mingap | transversality | attract")->capture_default_str();
  sw->add_option("--lo", sa.lo)->capture_default_str();
  sw->add_option("--hi", sa.hi)->capture_default_str();
  sw->add_option("--n", sa.levels)->capture_default_str();
  sw->add_option("--s-grid", sa.s_grid)->capture_default_str();
  sw->add_option("--samples", sa.samples)->capture_default_str();
  sw->add_option("--quadrature", sa.quadrature, "midpoint | monte-carlo")->capture_default_str();
  sw->add_option("--seed", sa.seed)->capture_default_str();
  sw->add_flag("--primed", sa.primed);
  sw->add_flag("--keep-curves", sa.keep_curves);
  sw->add_flag("--progress", sa.progress);
  sw->add_option("--workers", sa.workers, "Default from BCLAB_WORKERS")->capture_default_str();
  sw->add_option("--n-min", sa.n_min)->capture_default_str();
  sw->add_option("--n-max", sa.n_max)->capture_default_str();
  sw->add_option("--alpha-coef", sa.alpha_coef)->capture_default_str();
  sw->add_option("--alpha-base", sa.alpha_base)->capture_default_str();
  sw->add_option("--alpha-power", sa.alpha_power)->capture_default_str();
  sw->add_option("--degree", sa.degree)->capture_default_str();
  sw->add_option("--rho-grid", sa.rho_grid)->capture_default_str();
  sw->add_option("--depth", sa.depth)->capture_default_str();
  sw->add_option("--epsilon", sa.epsilon)->capture_default_str();
  sw->add_option("--n-cap", sa.n_cap)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : BC_ERR_USAGE;
  }

  const std::vector<std::string> args(argv, argv + argc);
  try {
    auto* sub = app.get_subcommands().front();
    Run run(sub->get_name(), args, out_dir);
    if (sub == sp) cmd_spacings(run, lambda, n, ell, rescale, primed);
    else if (sub == pc) cmd_paircorr(run, lambda, n, s_grid, interval, primed);
    else if (sub == ex) cmd_exact(run, minpoly, n);
    else if (sub == gp) cmd_gaps(run, lambda, n, primed, tol);
    else if (sub == cl) cmd_classify(run, poly);
    else if (sub == gr) cmd_greedy(run, lambda, k);
    else if (sub == gw) cmd_growth(run, block);
    else if (sub == ge) cmd_generate(run, lambda, n, primed, format);
    else if (sub == sw) cmd_sweep(run, sa);
    run.finish();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return BC_ERR_INTERNAL;
  }
  return 0;
}
