#pragma once

#include "spinone/boundary.hpp"
#include "spinone/classicality.hpp"
#include "spinone/oracles.hpp"
#include "spinone/state.hpp"
#include "spinone/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace spinone {

/// Parse or file-format failure; the message carries line/column where known.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// 17 significant digits: lossless round-trip for IEEE doubles.
inline std::string fmt_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::pair<int, int> line_col_at(const std::string& text,
                                       std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Vec3 vec3_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw IoError(std::string(what) + ": expected an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

/// A parsed state input: always carries both representations.
struct StateInput {
  DensityMatrix rho;
  BlochPair bp;
};

/// Accepts either {"matrix": [[[re,im] x3] x3]} or
/// {"u": [ux,uy,uz], "W": [[..] x3]}. Validation tolerance applies to
/// Hermiticity / symmetry / trace; with renormalize set, the trace is
/// rescaled to 1 instead of rejected.
inline StateInput parse_state_json(const std::string& text, Tolerance tol = {},
                                   bool renormalize = false) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = detail::line_col_at(text, e.byte);
    throw IoError("JSON parse error at line " + std::to_string(line) +
                  ", column " + std::to_string(col) + ": " + e.what());
  }

  try {
    if (j.contains("matrix")) {
      const Json& m = j["matrix"];
      if (!m.is_array() || m.size() != 3)
        throw IoError("matrix: expected 3 rows");
      CMat3 rho;
      for (int r = 0; r < 3; ++r) {
        if (!m[r].is_array() || m[r].size() != 3)
          throw IoError("matrix: expected 3 entries per row");
        for (int c = 0; c < 3; ++c) {
          const Json& e = m[r][c];
          if (!e.is_array() || e.size() != 2)
            throw IoError("matrix: entries must be [re, im] pairs");
          rho(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
      }
      if (renormalize) {
        const double tr = rho.trace().real();
        detail::require(std::abs(tr) > 1e-12, "matrix trace is zero");
        rho /= tr;
      }
      DensityMatrix dm = make_density_matrix(rho, tol);
      return {dm, bloch_from_rho(dm, tol)};
    }
    if (j.contains("u") && j.contains("W")) {
      const Vec3 u = detail::vec3_from(j["u"], "u");
      const Json& wj = j["W"];
      if (!wj.is_array() || wj.size() != 3) throw IoError("W: expected 3 rows");
      Mat3 w;
      for (int r = 0; r < 3; ++r) w.row(r) = detail::vec3_from(wj[r], "W row");
      if (renormalize) {
        w += (1.0 - w.trace()) / 3.0 * Mat3::Identity();
        w = 0.5 * (w + w.transpose()).eval();
      }
      BlochPair bp = make_bloch_pair(u, w, tol);
      return {rho_from_bloch(bp, tol), bp};
    }
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed state JSON: ") + e.what());
  }
  throw IoError("state JSON must contain either \"matrix\" or \"u\" and \"W\"");
}

inline Json vec3_to_json(const Vec3& v) { return Json{v(0), v(1), v(2)}; }

inline Json matrix_to_json(const CMat3& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c)
      row.push_back(Json{m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline Json mat3_to_json(const Mat3& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back(Json{m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

inline Json report_to_json(const ClassificationReport& rep) {
  Json j;
  j["physical"] = to_string(rep.physical);
  j["classical"] =
      rep.classical ? Json(to_string(*rep.classical)) : Json(nullptr);
  j["rhoEigs"] = vec3_to_json(rep.rho_eigs);
  j["zEigs"] = vec3_to_json(rep.z_eigs);
  j["qMin"] = rep.q_min;
  j["worstDirection"] = vec3_to_json(rep.worst_direction);
  j["caseN"] = to_string(rep.case_n);
  j["caseC"] = to_string(rep.case_c);
  j["tol"] = rep.tol;
  return j;
}

inline Json decomposition_to_json(const Decomposition& dec) {
  Json dirs = Json::array();
  for (const auto& [theta, phi] : dec.directions)
    dirs.push_back(Json{theta, phi});
  Json j;
  j["directions"] = dirs;
  j["weights"] = dec.weights;
  j["residual"] = dec.residual;
  return j;
}

// --- CSV emitters and their parsers (round-trip partners) ---

struct MeshRow {
  Vec3 u;
  BoundaryFamily family;
};

inline std::string mesh_to_csv(const std::vector<MeshRow>& rows) {
  std::string out = "ux,uy,uz,family\n";
  for (const auto& r : rows) {
    out += fmt_g17(r.u(0)) + "," + fmt_g17(r.u(1)) + "," + fmt_g17(r.u(2)) +
           "," + to_string(r.family) + "\n";
  }
  return out;
}

inline Json mesh_to_json(const Vec3& mu, BoundaryFamily family,
                         const std::vector<Vec3>& points) {
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(Json{p(0), p(1), p(2)});
  Json j;
  j["mu"] = vec3_to_json(mu);
  j["family"] = to_string(family);
  j["points"] = pts;
  return j;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

inline double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError(std::string(what) + ": trailing junk");
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string(what) + ": not a number: " + s);
  }
}

}  // namespace detail

inline std::vector<MeshRow> parse_mesh_csv(const std::string& text) {
  std::vector<MeshRow> rows;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      if (line != "ux,uy,uz,family") throw IoError("mesh CSV: bad header");
      header = false;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 4) throw IoError("mesh CSV: expected 4 fields");
    MeshRow r;
    r.u = {detail::parse_double(f[0], "ux"), detail::parse_double(f[1], "uy"),
           detail::parse_double(f[2], "uz")};
    if (f[3] == "N") r.family = BoundaryFamily::N;
    else if (f[3] == "C") r.family = BoundaryFamily::C;
    else throw IoError("mesh CSV: unknown family " + f[3]);
    rows.push_back(r);
  }
  return rows;
}

struct ThermalRow {
  double beta;
  double lambda_min_z;
  Verdict verdict;
};

inline Verdict parse_verdict(const std::string& s) {
  if (s == "inside") return Verdict::Inside;
  if (s == "boundary") return Verdict::Boundary;
  if (s == "outside") return Verdict::Outside;
  throw IoError("unknown verdict: " + s);
}

inline std::string thermal_to_csv(const std::vector<ThermalRow>& rows,
                                  double beta_star) {
  std::string out = "beta,lambdaMinZ,verdict\n";
  for (const auto& r : rows)
    out += fmt_g17(r.beta) + "," + fmt_g17(r.lambda_min_z) + "," +
           to_string(r.verdict) + "\n";
  out += "# transition betaStar=" + fmt_g17(beta_star) +
         " absDiffFromLn2=" + fmt_g17(std::abs(beta_star - std::log(2.0))) +
         "\n";
  return out;
}

inline std::vector<ThermalRow> parse_thermal_csv(const std::string& text) {
  std::vector<ThermalRow> rows;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      if (line != "beta,lambdaMinZ,verdict")
        throw IoError("thermal CSV: bad header");
      header = false;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 3) throw IoError("thermal CSV: expected 3 fields");
    rows.push_back({detail::parse_double(f[0], "beta"),
                    detail::parse_double(f[1], "lambdaMinZ"),
                    parse_verdict(f[2])});
  }
  return rows;
}

struct LineFamilyRow {
  double v;
  Verdict verdict;
  double lambda_min_z;
};

inline std::string line_family_to_csv(const std::vector<LineFamilyRow>& rows) {
  std::string out = "v,verdict,lambdaMinZ\n";
  for (const auto& r : rows)
    out += fmt_g17(r.v) + "," + to_string(r.verdict) + "," +
           fmt_g17(r.lambda_min_z) + "\n";
  return out;
}

inline std::vector<LineFamilyRow> parse_line_family_csv(
    const std::string& text) {
  std::vector<LineFamilyRow> rows;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      if (line != "v,verdict,lambdaMinZ")
        throw IoError("line-family CSV: bad header");
      header = false;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 3) throw IoError("line-family CSV: expected 3 fields");
    rows.push_back({detail::parse_double(f[0], "v"), parse_verdict(f[1]),
                    detail::parse_double(f[2], "lambdaMinZ")});
  }
  return rows;
}

}  // namespace spinone
