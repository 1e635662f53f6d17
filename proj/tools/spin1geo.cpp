// spin1geo: command-line front end for the spin-1 state-geometry library.
//
// Subcommands: classify, qt-min, thermal-scan, boundary-mesh, volume,
// line-family. Exit codes for classify: 0 classical, 1 physical but not
// classical, 2 not physical (or failed validation), 3 parse/IO error.

#include "spinone/spinone.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace spinone;

constexpr int kExitClassical = 0;
constexpr int kExitQuantum = 1;
constexpr int kExitNotPhysical = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
}

Vec3 parse_mu_arg(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ','))
    vals.push_back(detail::parse_double(part, "--mu"));
  if (vals.size() != 3) throw IoError("--mu expects three comma-separated values");
  return {vals[0], vals[1], vals[2]};
}

std::pair<int, int> parse_resolution_arg(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos)
    throw IoError("--resolution expects the form NxM, e.g. 64x64");
  const int nt = std::stoi(s.substr(0, x));
  const int np = std::stoi(s.substr(x + 1));
  return {nt, np};
}

int run_classify(const std::string& input, const std::string& output,
                 Tolerance tol, bool renormalize, bool witness_only) {
  StateInput st;
  try {
    st = parse_state_json(read_file(input), tol, renormalize);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid state: " << e.what() << "\n";
    return kExitNotPhysical;
  }

  if (witness_only) {
    const QuantumnessWitness wit = min_quantumness_direction(st.bp);
    Json j;
    j["qMin"] = wit.q_min;
    j["worstDirection"] = vec3_to_json(wit.direction);
    write_output(output, j.dump(2) + "\n");
    return 0;
  }

  const ClassificationReport rep = classify(st.bp, tol);
  Json j = report_to_json(rep);
  j["u"] = vec3_to_json(st.bp.u);
  j["W"] = mat3_to_json(st.bp.w);
  j["matrix"] = matrix_to_json(st.rho.m);
  write_output(output, j.dump(2) + "\n");

  if (rep.physical == Verdict::Outside) return kExitNotPhysical;
  if (rep.classical && *rep.classical != Verdict::Outside)
    return kExitClassical;
  return kExitQuantum;
}

int run_thermal_scan(double beta_min, double beta_max, int steps,
                     const std::string& output, Tolerance tol) {
  std::vector<ThermalRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  const auto lmin_z = [&](double beta) {
    const BlochPair bp = bloch_from_rho(thermal_state(beta), tol);
    return sym_eigs_3x3(z_matrix(bp).z, tol)(0);
  };
  for (int i = 0; i < steps; ++i) {
    const double beta =
        beta_min + (beta_max - beta_min) * static_cast<double>(i) / (steps - 1);
    const double lm = lmin_z(beta);
    rows.push_back({beta, lm, verdict_from_min(lm, tol)});
  }

  // Transition by bisection on the sign of lambda_min(Z).
  double lo = beta_min, hi = beta_max;
  double beta_star = std::numeric_limits<double>::quiet_NaN();
  if (lmin_z(lo) > 0.0 && lmin_z(hi) < 0.0) {
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (lmin_z(mid) > 0.0 ? lo : hi) = mid;
    }
    beta_star = 0.5 * (lo + hi);
  }
  write_output(output, thermal_to_csv(rows, beta_star));
  return 0;
}

int run_boundary_mesh(const Vec3& mu, int n_theta, int n_phi,
                      const std::string& family, const std::string& output,
                      const std::string& format) {
  std::vector<MeshRow> rows;
  std::vector<Vec3> pts_n, pts_c;
  if (family == "N" || family == "both") {
    pts_n = mesh_ellipsoid(ellipsoid_spec_N(mu), n_theta, n_phi);
    for (const auto& p : pts_n) rows.push_back({p, BoundaryFamily::N});
  }
  if (family == "C" || family == "both") {
    pts_c = mesh_ellipsoid(ellipsoid_spec_C(mu), n_theta, n_phi);
    for (const auto& p : pts_c) rows.push_back({p, BoundaryFamily::C});
  }

  if (format == "json") {
    Json j = Json::array();
    if (!pts_n.empty()) j.push_back(mesh_to_json(mu, BoundaryFamily::N, pts_n));
    if (!pts_c.empty()) j.push_back(mesh_to_json(mu, BoundaryFamily::C, pts_c));
    write_output(output, j.dump(2) + "\n");
  } else {
    write_output(output, mesh_to_csv(rows));
  }
  return 0;
}

int run_volume(std::int64_t samples, std::uint64_t seed,
               const std::string& output, Tolerance tol) {
  const auto t0 = std::chrono::steady_clock::now();
  const VolumeEstimate est = classical_volume_fraction(samples, seed, tol);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  Json j;
  j["fraction"] = est.fraction;
  j["stderr"] = est.std_error;
  j["samples"] = est.n_samples;
  j["inside"] = est.n_inside;
  j["pptInside"] = est.n_ppt_inside;
  j["bandCount"] = est.n_band;
  j["agreementCount"] = est.n_samples - est.n_band - est.n_disagree;
  j["agreementViolations"] = est.n_disagree;
  j["seed"] = seed;
  j["tol"] = tol.eps;
  j["wallTimeSeconds"] = secs;
  write_output(output, j.dump(2) + "\n");
  return est.n_disagree == 0 ? 0 : 1;
}

int run_line_family(int steps, const std::string& output, Tolerance tol) {
  std::vector<LineFamilyRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double v = -1.0 + 2.0 * static_cast<double>(i) / (steps - 1);
    const BlochPair bp = bloch_from_rho(coherent_mixture_line(v), tol);
    const double lm = sym_eigs_3x3(z_matrix(bp).z, tol)(0);
    rows.push_back({v, verdict_from_min(lm, tol), lm});
  }
  write_output(output, line_family_to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic geometry of spin-1 quantum states"};
  app.require_subcommand(1);

  double tol_eps = kDefaultTol;
  app.add_option("--tol", tol_eps, "verdict tolerance band")
      ->envname("QG_TOL")
      ->check(CLI::PositiveNumber);

  std::string input, output;
  bool renormalize = false;

  auto* classify = app.add_subcommand("classify", "classify a state file");
  classify->add_option("--input", input, "state JSON file")->required();
  classify->add_option("--output", output, "output file (default stdout)");
  classify->add_flag("--renormalize", renormalize,
                     "rescale the trace to 1 instead of rejecting");

  auto* qtmin = app.add_subcommand(
      "qt-min", "minimal quantumness witness and its direction");
  qtmin->add_option("--input", input, "state JSON file")->required();
  qtmin->add_option("--output", output, "output file (default stdout)");
  qtmin->add_flag("--renormalize", renormalize,
                  "rescale the trace to 1 instead of rejecting");

  double beta_min = 0.0, beta_max = 2.0;
  int steps = 100;
  auto* thermal = app.add_subcommand(
      "thermal-scan", "lambda_min(Z) along the thermal family");
  thermal->add_option("--beta-min", beta_min, "scan start");
  thermal->add_option("--beta-max", beta_max, "scan end");
  thermal->add_option("--steps", steps, "number of rows")
      ->check(CLI::Range(2, 1000000));
  thermal->add_option("--output", output, "output file (default stdout)");

  std::string mu_arg = "0.05,0.4,0.55";
  std::string resolution = "64x64";
  std::string family = "both";
  std::string format = "csv";
  auto* mesh = app.add_subcommand("boundary-mesh",
                                  "sample boundary ellipsoids in u-space");
  mesh->add_option("--mu", mu_arg, "spectrum of W as x,y,z");
  mesh->add_option("--resolution", resolution, "lat-long grid as NxM");
  mesh->add_option("--family", family, "which surface")
      ->check(CLI::IsMember({"N", "C", "both"}));
  mesh->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  mesh->add_option("--output", output, "output file (default stdout)");

  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  auto* volume = app.add_subcommand(
      "volume", "Monte-Carlo classical volume fraction with PPT audit");
  volume->add_option("--samples", samples, "number of samples")
      ->check(CLI::PositiveNumber);
  volume->add_option("--seed", seed, "RNG seed")->required();
  volume->add_option("--output", output, "output file (default stdout)");

  int line_steps = 201;
  auto* line = app.add_subcommand(
      "line-family", "the straight line of coherent mixtures on the boundary");
  line->add_option("--steps", line_steps, "number of rows")
      ->check(CLI::Range(2, 1000000));
  line->add_option("--output", output, "output file (default stdout)");

  // App-level options (--tol) may appear after the subcommand name.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const Tolerance tol{tol_eps};

  try {
    if (classify->parsed())
      return run_classify(input, output, tol, renormalize, false);
    if (qtmin->parsed())
      return run_classify(input, output, tol, renormalize, true);
    if (thermal->parsed())
      return run_thermal_scan(beta_min, beta_max, steps, output, tol);
    if (mesh->parsed()) {
      const auto [nt, np] = parse_resolution_arg(resolution);
      return run_boundary_mesh(parse_mu_arg(mu_arg), nt, np, family, output,
                               format);
    }
    if (volume->parsed()) return run_volume(samples, seed, output, tol);
    if (line->parsed()) return run_line_family(line_steps, output, tol);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotPhysical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
