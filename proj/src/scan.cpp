#include "ewit/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ewit/choi.hpp"
#include "ewit/linalg.hpp"
#include "ewit/parallel.hpp"
#include "ewit/witness.hpp"

namespace ewit {

namespace {

void append_number(std::string& out, double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  out.append(buf, static_cast<std::size_t>(n));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.emplace_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("cannot parse number '" + s + "'");
  return x;
}

Region region_for(double value, bool ppt, bool on_ppt_edge, const Tolerances& tol) {
  if (std::abs(value) <= tol.boundary || on_ppt_edge) return Region::Boundary;
  if (!ppt) return Region::Npt;
  return value < 0.0 ? Region::PptDetected : Region::PptUndetected;
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Npt:
      return "NPT";
    case Region::PptDetected:
      return "PPT_DETECTED";
    case Region::PptUndetected:
      return "PPT_UNDETECTED";
    case Region::Boundary:
      return "BOUNDARY";
  }
  return "UNKNOWN";
}

Region parse_region(std::string_view name) {
  for (Region r : {Region::Npt, Region::PptDetected, Region::PptUndetected, Region::Boundary})
    if (to_string(r) == name) return r;
  throw DomainError("unknown region '" + std::string(name) + "'");
}

std::vector<double> Grid::values() const {
  std::vector<double> out;
  if (steps == 0) return out;
  if (steps == 1) return {start};
  out.reserve(steps);
  const double step = (stop - start) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i + 1 < steps; ++i) out.push_back(start + step * static_cast<double>(i));
  out.push_back(stop);
  return out;
}

Grid parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("grid must look like start:stop:steps, got '" + std::string(text) + "'");
  Grid g;
  g.start = parse_double(parts[0]);
  g.stop = parse_double(parts[1]);
  const double steps = parse_double(parts[2]);
  if (steps < 0.0 || steps != std::floor(steps)) throw DomainError("grid steps must be a non-negative integer");
  g.steps = static_cast<std::size_t>(steps);
  return g;
}

RegionPoint classify(const DensityMatrix& rho, const Tolerances& tol) {
  RegionPoint point;
  const double min_pt = min_eigenvalue(partial_transpose(rho.matrix, rho.dim_a, rho.dim_b, Subsystem::A), tol);
  point.ppt = min_pt >= -tol.npt;
  point.detection_value = detection_value(rho, tol).value;
  point.classification = region_for(point.detection_value, point.ppt, false, tol);
  return point;
}

ScanResult scan_1d(std::string_view family, const Grid& grid, unsigned workers, const Tolerances& tol) {
  std::string param;
  if (family == "horodecki-alpha") {
    param = "alpha";
  } else if (family == "horodecki-a") {
    param = "a";
  } else {
    bool known = false;
    for (const auto& f : state_families()) known = known || f.name == family;
    throw DomainError(known ? "family '" + std::string(family) + "' has no single scalar parameter to scan"
                            : "unknown state family '" + std::string(family) + "'");
  }
  ScanResult result{std::string(family), 3, {param}, {}, 0};
  const auto values = grid.values();
  std::vector<std::optional<RegionPoint>> slots(values.size());
  parallel_for(values.size(), workers, [&](std::size_t i) {
    FamilyArgs args;
    args.scalars[param] = values[i];
    DensityMatrix rho;
    try {
      rho = make_family_state(family, args);
    } catch (const DomainError&) {
      return;
    }
    RegionPoint point = classify(rho, tol);
    point.params = {values[i]};
    slots[i] = std::move(point);
  });
  for (auto& s : slots) {
    if (s) {
      result.points.push_back(std::move(*s));
    } else {
      ++result.skipped;
    }
  }
  return result;
}

RegionPoint classify_choi(const ChoiParams& params, bool use_closed_form, const Tolerances& tol) {
  RegionPoint point;
  point.detection_value =
      use_closed_form ? detection_closed_form(params) : detection_value(choi_state(params), tol).value;
  const double bound = ppt_bound(params.mu, params.d);
  point.ppt = params.p <= bound + tol.ppt_bound;
  point.classification = region_for(point.detection_value, point.ppt, std::abs(params.p - bound) <= tol.boundary, tol);
  return point;
}

ScanResult scan_choi(const ChoiScanOptions& options, const Tolerances& tol) {
  const std::size_t d = options.d;
  ScanResult result;
  result.family = "choi";
  result.d = d;
  switch (d) {
    case 3:
      result.param_names = {"mu1", "p"};
      break;
    case 4:
      result.param_names = {"mu1", "mu3", "p"};
      break;
    case 5:
      result.param_names = {"mu3", "mu4", "p"};
      break;
    default:
      throw DomainError("scan_choi: supported dimensions are 3, 4 and 5, got " + std::to_string(d));
  }

  const auto axis = Grid{0.0, 1.0, options.mu_steps}.values();
  const auto p_values = Grid{0.0, 1.0 / static_cast<double>(d), options.p_steps}.values();
  const std::size_t outer = axis.size();
  const std::size_t cells = d == 3 ? outer : outer * outer;

  struct Cell {
    std::vector<RegionPoint> points;
    std::size_t skipped = 0;
  };
  std::vector<Cell> slots(cells);

  parallel_for(cells, options.workers, [&](std::size_t c) {
    Cell& cell = slots[c];
    std::vector<double> coords;
    std::vector<double> mu;
    if (d == 3) {
      coords = {axis[c]};
      mu = {axis[c], 1.0 - axis[c]};
    } else if (d == 4) {
      const double mu1 = axis[c / outer];
      const double mu3 = axis[c % outer];
      coords = {mu1, mu3};
      const double mu2 = 1.0 - mu1 - mu3;
      if (mu2 < -tol.simplex) {
        cell.skipped = p_values.size();
        return;
      }
      mu = {mu1, std::max(0.0, mu2), mu3};
    } else {
      const double mu3 = axis[c / outer];
      const double mu4 = axis[c % outer];
      coords = {mu3, mu4};
      auto solved = d5_imv1_zero_mu(mu3, mu4, tol);
      if (!solved) {
        cell.skipped = p_values.size();
        return;
      }
      mu = std::move(*solved);
    }
    // Rounding in 1 - mu1 - mu3 can leave the sum a few ulps off; push it onto the largest entry.
    double sum = 0.0;
    for (double m : mu) sum += m;
    *std::max_element(mu.begin(), mu.end()) += 1.0 - sum;

    cell.points.reserve(p_values.size());
    for (double p : p_values) {
      ChoiParams params{d, p, mu};
      RegionPoint point = classify_choi(params, options.use_closed_form, tol);
      point.params = coords;
      point.params.push_back(p);
      cell.points.push_back(std::move(point));
    }
  });

  std::size_t total = 0;
  for (const auto& cell : slots) total += cell.points.size();
  result.points.reserve(total);
  for (auto& cell : slots) {
    result.skipped += cell.skipped;
    for (auto& p : cell.points) result.points.push_back(std::move(p));
  }
  return result;
}

EmitFormat parse_emit_format(std::string_view name) {
  if (name == "csv") return EmitFormat::Csv;
  if (name == "json") return EmitFormat::Json;
  throw DomainError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string to_csv(const ScanResult& result) {
  std::string out = "family,d";
  for (const auto& name : result.param_names) out += "," + name;
  out += ",detection_value,ppt,classification\n";
  out.reserve(out.size() + result.points.size() * (24 * (result.param_names.size() + 1) + 32));
  const std::string prefix = result.family + "," + std::to_string(result.d);
  for (const auto& pt : result.points) {
    out += prefix;
    for (double x : pt.params) {
      out += ',';
      append_number(out, x);
    }
    out += ',';
    append_number(out, pt.detection_value);
    out += pt.ppt ? ",1," : ",0,";
    out += to_string(pt.classification);
    out += '\n';
  }
  return out;
}

std::string to_json(const ScanResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : result.points) {
    nlohmann::json params = nlohmann::json::object();
    for (std::size_t i = 0; i < result.param_names.size() && i < pt.params.size(); ++i)
      params[result.param_names[i]] = pt.params[i];
    points.push_back({{"params", std::move(params)},
                      {"detection_value", pt.detection_value},
                      {"ppt", pt.ppt},
                      {"classification", std::string(to_string(pt.classification))}});
  }
  nlohmann::json j{{"family", result.family},
                   {"d", result.d},
                   {"param_names", result.param_names},
                   {"skipped", result.skipped},
                   {"points", std::move(points)}};
  return j.dump();
}

void emit(const ScanResult& result, EmitFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const std::string text = format == EmitFormat::Csv ? to_csv(result) : to_json(result) + "\n";
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

ScanResult read_csv(std::string_view text) {
  ScanResult result;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    pos = end + 1;
    return true;
  };
  std::string_view line;
  if (!next_line(line)) throw DomainError("read_csv: empty input");
  const auto header = split(line, ',');
  if (header.size() < 5 || header[0] != "family" || header[1] != "d" ||
      header[header.size() - 3] != "detection_value" || header[header.size() - 2] != "ppt" ||
      header.back() != "classification") {
    throw DomainError("read_csv: unexpected header '" + std::string(line) + "'");
  }
  result.param_names.assign(header.begin() + 2, header.end() - 3);
  const std::size_t n_params = result.param_names.size();
  while (next_line(line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw DomainError("read_csv: row has wrong field count");
    result.family = fields[0];
    result.d = static_cast<std::size_t>(parse_double(fields[1]));
    RegionPoint pt;
    for (std::size_t i = 0; i < n_params; ++i) pt.params.push_back(parse_double(fields[2 + i]));
    pt.detection_value = parse_double(fields[2 + n_params]);
    pt.ppt = fields[3 + n_params] == "1";
    pt.classification = parse_region(fields[4 + n_params]);
    result.points.push_back(std::move(pt));
  }
  return result;
}

}  // namespace ewit
