#include "wglab/campaign.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "wglab/config.hpp"
#include "wglab/extremizers.hpp"
#include "wglab/imethod.hpp"
#include "wglab/interval_set.hpp"
#include "wglab/report_io.hpp"
#include "wglab/serialize.hpp"

namespace wglab {

namespace {

namespace fs = std::filesystem;

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct OutputSet {
  fs::path dir;
  std::ofstream summary;

  explicit OutputSet(const std::string& out) : dir(out) {
    fs::create_directories(dir);
    summary.open(dir / "summary.txt");
  }
  std::ofstream open(const std::string& name) {
    std::ofstream os(dir / name);
    if (!os) throw std::runtime_error("cannot open " + (dir / name).string());
    return os;
  }
};

void write_manifest(const Campaign& c, const Config& cfg, const OutputSet& out,
                    double wall_seconds, const std::string& status) {
  nlohmann::json j;
  j["id"] = c.id;
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["schema"] = kCsvSchema;
  j["code_version"] = "wglab-1.0";
  j["wall_time_s"] = wall_seconds;
  j["status"] = status;
  nlohmann::json cj = nlohmann::json::object();
  for (const std::string& k : cfg.keys()) cj[k] = cfg.get_string(k);
  j["config"] = cj;
  std::ofstream os(out.dir / "manifest.json");
  os << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const Campaign& c, const Config& cfg, OutputSet& out) {
  (void)cfg;
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out.summary << (ok ? "pass  " : "FAIL  ") << name << "\n";
    std::cout << (ok ? "pass  " : "FAIL  ") << name << "\n";
    if (!ok) ++failures;
  };

  WaveguideGeometry g{2.0, 16.0, 64, 8};
  SpectralField f = make_seeded_data(g, c.seed + 1, 1.0, 1.0);

  PhysicalField p = inverse_transform(f);
  SpectralField f2 = forward_transform(p);
  double rt = 0.0;
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    rt = std::max(rt, std::abs(f.coeffs[i] - f2.coeffs[i]));
  check("fourier round-trip", rt < 1e-10);
  check("plancherel", std::abs(p.l2_norm_sq() - f.l2_norm_sq()) < 1e-10 * f.l2_norm_sq());

  SpectralField g1 = propagate(f, 0.37);
  check("propagator unitary", std::abs(g1.l2_norm_sq() - f.l2_norm_sq()) < 1e-12);
  SpectralField g2 = propagate(propagate(f, 0.2), 0.17);
  double gl = 0.0;
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    gl = std::max(gl, std::abs(g1.coeffs[i] - g2.coeffs[i]));
  check("propagator group law", gl < 1e-12);

  IntervalSet a = IntervalSet::single(0.0, 2.0).unite(IntervalSet::single(1.0, 3.0));
  check("interval union", std::abs(a.length() - 3.0) < 1e-15 && a.count() == 1);
  IntervalSet b = a.intersect(IntervalSet::single(2.5, 10.0));
  check("interval intersect", std::abs(b.length() - 0.5) < 1e-15);

  MeasureQuery q;
  q.tau = 2.0 * (16.0 + 2.25);
  q.xi = {3.0, 0.0};
  q.lambda = 2.0;
  q.M = 1.0;
  q.theta = 0.125;
  q.N1 = DyadicBand{8.0};
  q.N2 = DyadicBand{4.0};
  q.variant = MeasureVariant::M1_NO_ANGLE;
  double exact = measure(q);
  auto [est, se] = mc_measure(q, 200000, c.seed + 7);
  check("measure vs monte-carlo", std::abs(exact - est) <= 4.0 * se + 1e-12);

  out.summary << (failures == 0 ? "selftest: all pass\n" : "selftest: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

// ----------------------------------------------------------- bilinear-sweep

int cmd_bilinear_sweep(const Campaign& c, const Config& cfg, OutputSet& out) {
  const std::string estimate = cfg.get_string("estimate", "angular");
  const auto lambdas = cfg.get_double_list("lambdas", {1.0, 4.0});
  const auto N1s = cfg.get_double_list("N1s", {16.0});
  const auto N2s = cfg.get_double_list("N2s", {4.0});
  const auto Ms = cfg.get_double_list("Ms", {4.0});
  const auto thetas = cfg.get_double_list("thetas", {0.125});
  const int draws = static_cast<int>(cfg.get_int("draws", 3));
  const int max_modes = static_cast<int>(cfg.get_int("max_modes", 64));
  const double eps = cfg.get_double("eps", 0.1);
  const int slabs = static_cast<int>(cfg.get_int("slabs", 8));

  std::ofstream csv = out.open("reports.csv");
  std::ofstream jsonl = out.open("reports.jsonl");
  csv << estimate_csv_header() << "\n";

  double max_ratio = 0.0;
  uint64_t point = 0;
  for (double lam : lambdas)
    for (double N1 : N1s)
      for (double N2 : N2s) {
        if (N2 > N1) continue;
        for (double M : Ms) {
          if (M > N1) continue;
          for (double th : thetas)
            for (int d = 0; d < draws; ++d) {
              std::mt19937_64 rng(mix_seed(c.seed, point++));
              EstimateReport r;
              if (estimate == "angular" || estimate == "no_angle" ||
                  estimate == "one_angle") {
                AngularDrawParams p{lam, DyadicBand{N1}, DyadicBand{N2}, th, max_modes};
                auto [f1, f2] = draw_angular_pair(p, rng);
                if (estimate == "angular")
                  r = eval_angular_bilinear(lam, {N1}, {N2}, M, th, f1, f2);
                else if (estimate == "no_angle")
                  r = eval_no_angle_bilinear(lam, {N1}, {N2}, M, f1, f2);
                else
                  r = eval_one_angle_bilinear(lam, {N1}, {N2}, M, th, 0, f1, f2);
              } else if (estimate == "global") {
                auto [f1, f2] = draw_band_pair(lam, {N1}, {N2}, max_modes, rng);
                r = eval_global_bilinear(lam, {N1}, {N2}, eps, f1, f2, slabs);
              } else if (estimate == "l4") {
                auto [f1, f2] = draw_band_pair(lam, {N1}, {N2}, max_modes, rng);
                r = eval_l4_strichartz(lam, {N1}, f1);
              } else if (estimate == "multilinear") {
                int k = static_cast<int>(cfg.get_int("k", 3));
                std::vector<DyadicBand> bands{DyadicBand{N1}};
                std::vector<SparseField> fsv;
                for (int j = 1; j <= k; ++j) bands.push_back(DyadicBand{N2});
                for (int j = 0; j <= k; ++j) {
                  double lo = bands[j].N, dmu = std::max(lo / 16.0, 1e-3);
                  fsv.push_back(random_band_field(lam, dmu, lo, 2.0 * lo, std::nullopt,
                                                  max_modes, rng));
                }
                r = eval_multilinear_d2(k, bands, fsv, default_delta_prime(k));
              } else {
                throw ConfigError(cfg.has("estimate") ? cfg.line_of("estimate") : 0,
                                  "unknown estimate '" + estimate + "'");
              }
              csv << estimate_csv_row(r) << "\n";
              jsonl << estimate_json_line(r) << "\n";
              csv.flush();
              max_ratio = std::max(max_ratio, r.ratio);
            }
        }
      }
  out.summary << "estimate: " << estimate << "\nrows: " << point
              << "\nmax_ratio: " << format_double(max_ratio) << "\n";
  if (cfg.has("assert_max_ratio") && max_ratio > cfg.get_double("assert_max_ratio")) {
    out.summary << "assertion FAILED: max_ratio > "
                << format_double(cfg.get_double("assert_max_ratio")) << "\n";
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------ measure-sweep

MeasureVariant variant_of(const std::string& s, const Config& cfg) {
  if (s == "full") return MeasureVariant::M_FULL;
  if (s == "no_angle") return MeasureVariant::M1_NO_ANGLE;
  if (s == "one_angle") return MeasureVariant::M_TILDE_ONE_ANGLE;
  throw ConfigError(cfg.has("variant") ? cfg.line_of("variant") : 0,
                    "unknown variant '" + s + "'");
}

int cmd_measure_sweep(const Campaign& c, const Config& cfg, OutputSet& out) {
  MeasureVariant variant = variant_of(cfg.get_string("variant", "full"), cfg);
  const auto lambdas = cfg.get_double_list("lambdas", {});
  const auto N1s = cfg.get_double_list("N1s", {});
  const auto N2s = cfg.get_double_list("N2s", {});
  const auto Ms = cfg.get_double_list("Ms", {});
  const auto thetas = cfg.get_double_list("thetas", {});
  const int probes = static_cast<int>(cfg.get_int("random_probes", 2));

  std::ofstream csv = out.open("measure.csv");
  std::ofstream jsonl = out.open("measure.jsonl");
  csv << measure_csv_header() << "\n";

  SupSweepReport rep;
  if (!lambdas.empty() && !N1s.empty() && !N2s.empty() && !Ms.empty() && !thetas.empty())
    rep = sup_sweep(variant, lambdas, N1s, N2s, Ms, thetas, probes, c.seed);
  for (const MeasureSweepRow& r : rep.rows) {
    csv << measure_csv_row(r) << "\n";
    jsonl << measure_json_line(r) << "\n";
  }
  out.summary << "variant: " << to_string(variant) << "\nrows: " << rep.rows.size()
              << "\nmax_ratio: " << format_double(rep.max_ratio) << "\n";
  if (cfg.has("assert_max_ratio") && rep.max_ratio > cfg.get_double("assert_max_ratio")) {
    out.summary << "assertion FAILED\n";
    return 1;
  }
  return 0;
}

// -------------------------------------------------------- extremizer-check

int cmd_extremizer_check(const Campaign& c, const Config& cfg, OutputSet& out) {
  (void)c;
  const auto lambdas = cfg.get_double_list("lambdas", {1.0, 16.0});
  const auto N1s = cfg.get_double_list("N1s", {64.0});
  const auto N2s = cfg.get_double_list("N2s", {8.0});
  const auto thetas = cfg.get_double_list("thetas", {1.0 / 64.0});
  const double dmu = cfg.get_double("dmu", 0.0);

  std::ofstream csv = out.open("reports.csv");
  std::ofstream jsonl = out.open("reports.jsonl");
  csv << estimate_csv_header() << "\n";
  double lo = 1e300, hi = 0.0;
  int rows = 0;
  for (double lam : lambdas)
    for (double N1 : N1s)
      for (double N2 : N2s)
        for (double th : thetas) {
          if (!(th < N2 / N1)) continue;
          ExtremizerSpec s{DyadicBand{N1}, DyadicBand{N2}, th, lam};
          EstimateReport r = verify_sharpness(s, dmu);
          csv << estimate_csv_row(r) << "\n";
          jsonl << estimate_json_line(r) << "\n";
          csv.flush();
          lo = std::min(lo, r.ratio);
          hi = std::max(hi, r.ratio);
          ++rows;
        }
  out.summary << "rows: " << rows << "\nratio_min: " << format_double(rows ? lo : 0.0)
              << "\nratio_max: " << format_double(hi) << "\n";
  bool ok = true;
  if (cfg.has("assert_ratio_lo") && rows && lo < cfg.get_double("assert_ratio_lo")) ok = false;
  if (cfg.has("assert_ratio_hi") && rows && hi > cfg.get_double("assert_ratio_hi")) ok = false;
  if (!ok) out.summary << "assertion FAILED\n";
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------ nls-run

int cmd_nls_run(const Campaign& c, const Config& cfg, OutputSet& out) {
  WaveguideGeometry g;
  g.lambda = cfg.get_double("lambda", 1.0);
  g.x_half_length = cfg.get_double("L", 8.0 * g.lambda);
  g.nx = static_cast<int>(cfg.get_int("nx", 256));
  g.ny = static_cast<int>(cfg.get_int("ny", 32));
  g.validate();

  const double s = cfg.get_double("s", 0.6);
  const double N = cfg.get_double("N", 16.0);
  const double delta = cfg.get_double("delta", 0.5);
  const double dt = cfg.get_double("dt", 5e-4);
  const int checkpoints = static_cast<int>(cfg.get_int("checkpoints", 9));
  const double nonlinear = cfg.get_bool("nonlinear", true) ? 1.0 : 0.0;

  E0Options opts;
  opts.norm_const = cfg.get_double("norm_const", 1.0);
  opts.coeff_floor = cfg.get_double("coeff_floor", 1e-7);
  opts.triple_budget = cfg.get_int("triple_budget", 50000000);

  SpectralField u0 = make_seeded_data(g, c.seed, cfg.get_double("amplitude", 1.0),
                                      cfg.get_double("decay", 2.0));
  IMultiplier im{N, s};
  NlsState st{0.0, u0, dt};
  save_field(u0, (out.dir / "initial_field.bin").string());

  std::ofstream csv = out.open("ledger.csv");
  csv << "schema,t,mass,E_Iu,E0,gap\n";
  const int steps = std::max(1, static_cast<int>(std::llround(delta / dt)));
  int done = 0;
  try {
    for (int cp = 0; cp <= checkpoints; ++cp) {
      int target = static_cast<int>(static_cast<int64_t>(steps) * cp / checkpoints);
      st = split_step_evolve(st, target - done, nonlinear);
      done = target;
      EnergyValue e = energy_Iu(st, im);
      E0Value z = modified_energy_E0(st, im, opts);
      csv << kCsvSchema << ',' << format_double(st.t) << ',' << format_double(e.mass) << ','
          << format_double(e.E) << ',' << format_double(z.E0) << ','
          << format_double(std::abs(e.E - z.E0)) << "\n";
      csv.flush();
    }
  } catch (const std::runtime_error& e) {
    out.summary << "run aborted: " << e.what() << "\n";
    return 1;
  }
  save_field(st.u, (out.dir / "final_field.bin").string());
  out.summary << "steps: " << steps << "\nfinal_t: " << format_double(st.t) << "\n";
  return 0;
}

// ------------------------------------------------------------------- report

int cmd_report(const Campaign& c, const Config& cfg, OutputSet& out) {
  (void)cfg;
  fs::path dir = c.output_dir;
  int found = 0;
  for (const char* name : {"reports.csv", "measure.csv", "ledger.csv"}) {
    std::ifstream is(dir / name);
    if (!is) continue;
    ++found;
    std::string line;
    int rows = -1; // header does not count
    while (std::getline(is, line)) ++rows;
    out.summary << name << ": " << rows << " rows\n";
  }
  if (found == 0) {
    out.summary << "no report files found\n";
    return 2;
  }
  return 0;
}

} // namespace

int run_campaign(const Campaign& c) {
  auto t0 = std::chrono::steady_clock::now();
  Config cfg;
  try {
    if (!c.config_path.empty()) cfg = Config::parse_file(c.config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    OutputSet out(c.output_dir);
    int rc;
    if (c.command == "selftest") rc = cmd_selftest(c, cfg, out);
    else if (c.command == "bilinear-sweep") rc = cmd_bilinear_sweep(c, cfg, out);
    else if (c.command == "measure-sweep") rc = cmd_measure_sweep(c, cfg, out);
    else if (c.command == "extremizer-check") rc = cmd_extremizer_check(c, cfg, out);
    else if (c.command == "nls-run") rc = cmd_nls_run(c, cfg, out);
    else if (c.command == "report") rc = cmd_report(c, cfg, out);
    else {
      std::cerr << "error: unknown command '" << c.command << "'\n";
      return 2;
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(c, cfg, out, wall, rc == 0 ? "ok" : "failed");
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace wglab
