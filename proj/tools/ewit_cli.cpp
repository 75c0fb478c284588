// ewit: entanglement witnesses from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ewit/choi.hpp"
#include "ewit/linalg.hpp"
#include "ewit/scan.hpp"
#include "ewit/witness.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kBadArgs = 2, kInvalid = 3, kIo = 4 };

struct StateArgs {
  std::string family;
  std::string state_file;
  std::optional<double> alpha, a, p;
  std::size_t d = 3;
  std::string mu;
};

struct Loaded {
  ewit::DensityMatrix rho;
  json description;
  std::optional<ewit::ChoiParams> choi;
};

void add_state_options(CLI::App* cmd, StateArgs& s) {
  cmd->add_option("--state", s.family, "State family (see `ewit catalog`)");
  cmd->add_option("--state-file", s.state_file, "JSON density matrix {dA, dB, matrix:[[[re,im],..],..]}");
  cmd->add_option("--alpha", s.alpha, "horodecki-alpha parameter, 0 <= alpha <= 5");
  cmd->add_option("--a", s.a, "horodecki-a parameter, 0 < a < 1");
  cmd->add_option("--d", s.d, "choi dimension")->check(CLI::Range(2, 64));
  cmd->add_option("--p", s.p, "choi weight, 0 <= p <= 1/d");
  cmd->add_option("--mu", s.mu, "choi mu_1..mu_{d-1}, comma separated; the last may be omitted");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ewit::IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ewit::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw ewit::IoError("failed writing '" + path + "'");
}

Loaded load_state(const StateArgs& s) {
  if (s.family.empty() == s.state_file.empty()) throw ewit::DomainError("give exactly one of --state and --state-file");
  Loaded out;
  if (!s.state_file.empty()) {
    out.rho = ewit::load_density_json(read_file(s.state_file));
    out.description = {{"family", "file"}, {"path", s.state_file}};
    return out;
  }
  ewit::FamilyArgs args;
  json params = json::object();
  if (s.alpha) args.scalars["alpha"] = params["alpha"] = *s.alpha;
  if (s.a) args.scalars["a"] = params["a"] = *s.a;
  if (s.p) args.scalars["p"] = params["p"] = *s.p;
  if (s.family == "choi") {
    if (s.mu.empty()) throw ewit::DomainError("choi: missing parameter --mu");
    args.d = s.d;
    args.mu = ewit::parse_mu_list(s.mu, s.d);
    params["d"] = s.d;
    params["mu"] = args.mu;
  }
  out.rho = ewit::make_family_state(s.family, args);
  if (s.family == "choi") out.choi = ewit::ChoiParams{args.d, args.scalars.at("p"), args.mu};
  out.description = {{"family", s.family}, {"params", params}};
  return out;
}

std::string fixed6(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  // "-0.000000" reads badly next to a "boundary" status.
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

void print(const json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::cout << key << ": ";
    if (value.is_number_float()) {
      std::cout << fixed6(value.get<double>());
    } else if (value.is_string()) {
      std::cout << value.get<std::string>();
    } else {
      std::cout << value.dump();
    }
    std::cout << '\n';
  }
}

json detection_json(const Loaded& st, ewit::BasisKind kind, const ewit::DetectionReport& r) {
  return {{"state", st.description},
          {"dA", st.rho.dim_a},
          {"dB", st.rho.dim_b},
          {"basis", std::string(ewit::to_string(kind))},
          {"nuclear_norm", r.nuclear_norm},
          {"detection_value", r.value},
          {"detected", r.detected},
          {"status", std::string(ewit::to_string(r.status))}};
}

std::string families_help() {
  std::string out = "State families:\n";
  for (const auto& f : ewit::state_families()) {
    out += "  " + f.name + ": " + f.description + "\n";
    for (const auto& p : f.params) out += "      --" + p.name + "  " + p.range + "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses for bipartite d x d states"};
  app.require_subcommand(1);
  app.footer(families_help());

  StateArgs state;
  std::string basis_name = "unit";
  std::string format = "text";
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--basis", basis_name, "Operator set on both parties")->check(CLI::IsMember({"unit", "generator"}));
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* detect = app.add_subcommand("detect", "Detection value 1 - ||rho~||_1 of the optimal witness");
  add_state_options(detect, state);
  add_output(detect);

  std::string emit_path;
  auto* witness = app.add_subcommand("witness", "Build the optimal witness and export its coefficients");
  add_state_options(witness, state);
  add_output(witness);
  witness->add_option("--emit", emit_path, "Write the witness JSON here");

  auto* ppt = app.add_subcommand("ppt", "Partial-transpose test");
  add_state_options(ppt, state);
  ppt->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::uint64_t seed = 0;
  std::size_t restarts = 50, iters = 200;
  unsigned workers = 0;
  auto* validate = app.add_subcommand("validate", "Check witness positivity on product states by see-saw");
  add_state_options(validate, state);
  add_output(validate);
  validate->add_option("--seed", seed, "RNG seed");
  validate->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
  validate->add_option("--iters", iters, "Alternating updates per restart")->check(CLI::PositiveNumber);
  validate->add_option("--workers", workers, "Threads, 0 = all cores");

  std::string scan_family, grid_text, out_path, scan_format = "csv";
  std::size_t scan_d = 4, mu_steps = 200, p_steps = 100;
  bool use_svd = false;
  auto* scan = app.add_subcommand("scan", "Region scan, CSV or JSON");
  scan->add_option("--family", scan_family, "choi, horodecki-alpha or horodecki-a")
      ->required()
      ->check(CLI::IsMember({"choi", "horodecki-alpha", "horodecki-a"}));
  scan->add_option("--d", scan_d, "choi dimension (3, 4 or 5)");
  scan->add_option("--grid", grid_text, "start:stop:steps for the one-parameter families");
  scan->add_option("--mu-steps", mu_steps, "Points per mu axis (choi)");
  scan->add_option("--p-steps", p_steps, "Points in p over [0, 1/d] (choi)");
  scan->add_flag("--svd", use_svd, "Detection through the correlation-matrix SVD instead of the closed form");
  scan->add_option("--out", out_path, "Output file (default: stdout)");
  scan->add_option("--format", scan_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--workers", workers, "Threads, 0 = all cores");

  auto* catalog = app.add_subcommand("catalog", "List state families and parameter ranges");
  catalog->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArgs;
  }

  const bool as_json = format == "json";
  try {
    if (app.got_subcommand(catalog)) {
      if (as_json) {
        json fams = json::array();
        for (const auto& f : ewit::state_families()) {
          json params = json::object();
          for (const auto& p : f.params) params[p.name] = p.range;
          fams.push_back({{"name", f.name}, {"description", f.description}, {"params", params}});
        }
        std::cout << fams.dump(2) << '\n';
      } else {
        std::cout << families_help();
      }
      return kOk;
    }

    if (app.got_subcommand(scan)) {
      ewit::ScanResult result;
      if (scan_family == "choi") {
        ewit::ChoiScanOptions opts;
        opts.d = scan_d;
        opts.mu_steps = mu_steps;
        opts.p_steps = p_steps;
        opts.use_closed_form = !use_svd;
        opts.workers = workers;
        result = ewit::scan_choi(opts);
      } else {
        if (grid_text.empty()) throw ewit::DomainError(scan_family + ": --grid start:stop:steps is required");
        result = ewit::scan_1d(scan_family, ewit::parse_grid(grid_text), workers);
      }
      const auto fmt = ewit::parse_emit_format(scan_format);
      if (out_path.empty()) {
        std::cout << (fmt == ewit::EmitFormat::Csv ? ewit::to_csv(result) : ewit::to_json(result) + "\n");
      } else {
        ewit::emit(result, fmt, out_path);
      }
      std::cerr << "points " << result.points.size() << ", skipped " << result.skipped << '\n';
      return kOk;
    }

    const Loaded st = load_state(state);
    const auto kind = ewit::parse_basis_kind(basis_name);
    const auto basis_a = ewit::make_basis(kind, st.rho.dim_a);
    const auto basis_b = ewit::make_basis(kind, st.rho.dim_b);

    if (app.got_subcommand(detect)) {
      print(detection_json(st, kind, ewit::detection_value(st.rho, basis_a, basis_b)), as_json);
      return kOk;
    }

    if (app.got_subcommand(witness)) {
      const auto report = ewit::detection_value(st.rho, basis_a, basis_b);
      const auto built = ewit::assemble_witness(report.a, basis_a, basis_b);
      if (!emit_path.empty()) write_file(emit_path, ewit::witness_to_json(built.witness, report) + "\n");
      json out = detection_json(st, kind, report);
      out["sigma_max_A"] = ewit::validate_constraint(report.a).max_singular_value;
      out["rank_A"] = [&] {
        std::size_t r = 0;
        for (double s : ewit::singular_values(report.a)) r += s > 0.5 ? 1 : 0;
        return r;
      }();
      if (!emit_path.empty()) out["emitted"] = emit_path;
      print(out, as_json);
      return kOk;
    }

    if (app.got_subcommand(ppt)) {
      const double min_eig = ewit::min_eigenvalue(
          ewit::partial_transpose(st.rho.matrix, st.rho.dim_a, st.rho.dim_b, ewit::Subsystem::A));
      json out{{"state", st.description},
               {"dA", st.rho.dim_a},
               {"dB", st.rho.dim_b},
               {"min_pt_eigenvalue", min_eig},
               {"ppt", min_eig >= -ewit::kTol.npt}};
      if (st.choi) {
        const auto r = ewit::choi_report(*st.choi);
        out["ppt_bound"] = r.ppt_bound;
        out["ppt_closed_form"] = r.ppt;
      }
      print(out, as_json);
      return kOk;
    }

    if (app.got_subcommand(validate)) {
      const auto report = ewit::detection_value(st.rho, basis_a, basis_b);
      const auto built = ewit::assemble_witness(report.a, basis_a, basis_b);
      ewit::SeesawOptions opts;
      opts.restarts = restarts;
      opts.iterations = iters;
      opts.seed = seed;
      opts.workers = workers;
      const auto min = ewit::seesaw_min_separable(built.matrix, st.rho.dim_a, st.rho.dim_b, opts);
      const auto constraint = ewit::validate_constraint(report.a);
      const bool pass = min.min_value >= ewit::kTol.seesaw_valid && constraint.pass;
      json out = detection_json(st, kind, report);
      out["seesaw_min"] = min.min_value;
      out["restarts"] = restarts;
      out["seed"] = seed;
      out["sigma_max_A"] = constraint.max_singular_value;
      out["valid"] = pass;
      print(out, as_json);
      if (!pass) {
        std::cerr << "witness invalid: product-state minimum " << min.min_value << '\n';
        return kInvalid;
      }
      return kOk;
    }
  } catch (const ewit::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ewit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  }
  return kOk;
}
