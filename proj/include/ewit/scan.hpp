#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ewit/error.hpp"
#include "ewit/states.hpp"
#include "ewit/tolerances.hpp"

namespace ewit {

enum class Region { Npt, PptDetected, PptUndetected, Boundary };

/// "NPT", "PPT_DETECTED", "PPT_UNDETECTED", "BOUNDARY"
std::string_view to_string(Region region);
Region parse_region(std::string_view name);

struct RegionPoint {
  std::vector<double> params;  // in the order of ScanResult::param_names
  double detection_value = 0.0;
  bool ppt = false;
  Region classification = Region::PptUndetected;
};

struct ScanResult {
  std::string family;
  std::size_t d = 0;
  std::vector<std::string> param_names;
  std::vector<RegionPoint> points;
  std::size_t skipped = 0;  // grid points outside the family's parameter domain
};

/// Inclusive linear grid; steps == 0 is empty, steps == 1 is {start}.
struct Grid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 0;

  std::vector<double> values() const;
};

/// Parses "start:stop:steps".
Grid parse_grid(std::string_view text);

/// NPT when the partial transpose has an eigenvalue below -tol.npt, otherwise
/// PPT_DETECTED / PPT_UNDETECTED by the sign of the detection value (unit bases),
/// BOUNDARY when |value| <= tol.boundary.
RegionPoint classify(const DensityMatrix& rho, const Tolerances& tol = kTol);

/// Sweeps one scalar parameter of a catalog family (horodecki-alpha, horodecki-a).
ScanResult scan_1d(std::string_view family, const Grid& grid, unsigned workers = 0, const Tolerances& tol = kTol);

struct ChoiScanOptions {
  std::size_t d = 4;
  std::size_t mu_steps = 200;  // per mu axis
  std::size_t p_steps = 100;   // p in [0, 1/d]
  bool use_closed_form = true; // false: detection through the correlation-matrix SVD
  unsigned workers = 0;
};

/// Choi-family region scan.
///   d = 3: (mu1, p);  d = 4: (mu1, mu3, p) with mu2 = 1 - mu1 - mu3;
///   d = 5: (mu3, mu4, p) along the Im V_1 = 0 locus.
/// PPT from the closed-form bound. Out-of-simplex points are skipped and counted.
ScanResult scan_choi(const ChoiScanOptions& options, const Tolerances& tol = kTol);

/// Classification of one Choi point, shared by the scanner and the CLI.
RegionPoint classify_choi(const ChoiParams& params, bool use_closed_form, const Tolerances& tol = kTol);

enum class EmitFormat { Csv, Json };
EmitFormat parse_emit_format(std::string_view name);

/// family,d,<params...>,detection_value,ppt,classification; numbers with 17 significant digits.
std::string to_csv(const ScanResult& result);
std::string to_json(const ScanResult& result);

/// Writes the result to `path`; throws IoError on failure.
void emit(const ScanResult& result, EmitFormat format, const std::string& path);

/// Parses text produced by to_csv.
ScanResult read_csv(std::string_view text);

}  // namespace ewit
