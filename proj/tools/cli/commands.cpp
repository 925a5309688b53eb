#include "commands.hpp"

#include "format.hpp"

#include <diracsea/circuit.hpp>
#include <diracsea/fock.hpp>
#include <diracsea/lattice.hpp>
#include <diracsea/walk1d.hpp>
#include <diracsea/walk3d.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace diracsea::cli {

namespace {

// Numerical self-check failed; maps to exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string model = "dirac";
  double mdt = 0.2;
  std::string theta = "auto";
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model, "dirac or modified")
      ->check(CLI::IsMember({"dirac", "modified"}))
      ->capture_default_str();
  sub->add_option("--mdt", c.mdt, "m c^2 dt")->capture_default_str();
  sub->add_option("--theta", c.theta, "rotation angle (e.g. 3pi/8) or auto")
      ->capture_default_str();
  sub->add_option("--out", c.out, "output CSV path (default stdout)");
}

void check_mdt(double mdt) {
  if (!std::isfinite(mdt) || mdt < 0.0) {
    throw std::invalid_argument("--mdt must be a non-negative finite number");
  }
}

double resolve_theta(const std::string& text, double mdt) {
  return text == "auto" ? find_theta(mdt) : parse_angle(text);
}

WalkParams make_params(const Common& c) {
  check_mdt(c.mdt);
  const Model model = parse_model(c.model);
  if (model == Model::dirac) return WalkParams::from_mass_phase(model, c.mdt);
  return WalkParams::from_mass_phase(model, c.mdt, resolve_theta(c.theta, c.mdt));
}

void require_count(long value, long minimum, const char* flag) {
  if (value < minimum) {
    throw std::invalid_argument(std::string(flag) + " must be at least " + std::to_string(minimum));
  }
}

class Csv {
 public:
  explicit Csv(std::ostringstream& os) : os_(os) {}
  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }

  std::ostringstream& os_;
};

// ---- dispersion -----------------------------------------------------------

struct DispersionOpts {
  Common common;
  long grid = 512;
  double dx = 1.0;
  double c = 1.0;
  bool physical = false;
};

void cmd_dispersion(const DispersionOpts& o, std::ostringstream& os) {
  require_count(o.grid, 1, "--grid");
  WalkParams params = make_params(o.common);
  if (o.physical) {
    if (!(o.dx > 0.0) || !(o.c > 0.0)) throw std::invalid_argument("--dx and --c must be positive");
    const double scale = params.model() == Model::dirac ? 1.0 : 2.0 * std::cos(params.theta());
    const double dt = scale * o.dx / o.c;
    const double mass = params.mass_phase() / (o.c * o.c * dt);
    params = params.model() == Model::dirac ? WalkParams::dirac(mass, o.c, o.dx)
                                            : WalkParams::modified(mass, o.c, o.dx, params.theta());
  }
  Csv csv(os);
  if (o.physical) {
    csv.row("p", "E_plus", "E_minus");
  } else {
    csv.row("p_dx", "E_plus_dt", "E_minus_dt");
  }
  const double dx = params.dx();
  const double dt = params.dt();
  for (long j = 0; j < o.grid; ++j) {
    const double k = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(o.grid);
    const double p = k / dx;
    if (unitarity_defect(bloch_matrix(p, params)) > 1e-10) {
      throw NumericalFailure("Bloch matrix lost unitarity at p dx = " + fmt(k));
    }
    const BlochResult r = dispersion(p, params);
    if (o.physical) {
      csv.row(p, r.e_plus, r.e_minus);
    } else {
      csv.row(k, r.e_plus * dt, r.e_minus * dt);
    }
  }
}

// ---- gap-scan -------------------------------------------------------------

struct GapScanOpts {
  std::string mdt = "0.1,0.2,0.5,1.0,1.5";
  std::string theta = "auto";
  double margin = 0.0;
  long grid = 4096;
  std::string out;
};

void cmd_gap_scan(const GapScanOpts& o, std::ostringstream& os) {
  require_count(o.grid, 64, "--grid");
  const std::vector<double> values = parse_angle_list(o.mdt);
  Csv csv(os);
  csv.row("mdt", "theta", "max_abs_E_dt", "gapped");
  bool claim_failed = false;
  for (double mdt : values) {
    check_mdt(mdt);
    if (mdt >= kPi / 2) {
      throw OutOfHypothesisError("m c^2 dt = " + fmt(mdt) + " lies outside [0, pi/2)");
    }
    const bool automatic = o.theta == "auto";
    const double theta = automatic ? find_theta(mdt, o.margin) : parse_angle(o.theta);
    const WalkParams params = WalkParams::from_mass_phase(Model::modified, mdt, theta);
    const GapCertificate cert = gap_certificate(params, static_cast<std::size_t>(o.grid));
    csv.row(mdt, theta, cert.max_abs_energy * params.dt(), cert.gapped);
    claim_failed = claim_failed || (automatic && !cert.gapped);
  }
  if (claim_failed) throw NumericalFailure("an automatically chosen theta failed its certificate");
}

// ---- evolve ---------------------------------------------------------------

struct EvolveOpts {
  Common common;
  long sites = 64;
  long steps = 10;
  long start_site = -1;
  std::string start_comp = "r";
  bool require_zone_edge = false;
};

void cmd_evolve(const EvolveOpts& o, std::ostringstream& os) {
  const WalkParams params = make_params(o.common);
  require_count(o.sites, params.model() == Model::dirac ? 2 : 4, "--sites");
  require_count(o.steps, 0, "--steps");
  if (o.require_zone_edge && o.sites % 2 != 0) {
    throw std::invalid_argument("--require-zone-edge needs an even number of sites");
  }
  const long start = o.start_site < 0 ? o.sites / 2 : o.start_site;
  if (start >= o.sites) throw std::invalid_argument("--start-site must be below --sites");
  const auto n = static_cast<std::size_t>(o.sites);

  LatticeState state = LatticeState::delta(
      n, static_cast<std::size_t>(start), o.start_comp == "l" ? Chirality::l : Chirality::r);
  std::ostringstream header;
  header << "step,norm";
  for (std::size_t s = 0; s < n; ++s) header << ",site_" << s;
  os << header.str() << '\n';

  double worst = 0.0;
  for (long t = 0; t <= o.steps; ++t) {
    if (t > 0) state = step(state, params);
    const double norm = state.norm();
    worst = std::max(worst, std::abs(norm - 1.0));
    os << t << ',' << fmt(norm);
    for (double prob : state.probabilities()) os << ',' << fmt(prob);
    os << '\n';
  }
  if (worst > 1e-9) throw NumericalFailure("norm drift " + fmt(worst) + " exceeds 1e-9");
}

// ---- circuit-verify -------------------------------------------------------

struct CircuitOpts {
  Common common;
  long sites = 2;
  double tol = 1e-10;
};

void cmd_circuit_verify(const CircuitOpts& o, std::ostringstream& os) {
  if (o.sites != 2 && o.sites != 4) {
    throw UnsupportedSizeError("--sites must be 2 or 4 for dense verification");
  }
  const WalkParams params = make_params(o.common);
  const EquivalenceReport report = equivalence_report(static_cast<std::size_t>(o.sites), params);
  Csv csv(os);
  csv.row("model", "sites", "mdt", "theta", "parity", "boundary_sign", "deviation", "leakage");
  for (const auto& s : report.sectors) {
    csv.row(to_string(params.model()), static_cast<long>(o.sites), params.mass_phase(),
            params.theta(), s.parity == 0 ? "even" : "odd", s.boundary_sign, s.deviation,
            report.leakage);
  }
  if (report.max_deviation() > o.tol || report.leakage > o.tol) {
    throw NumericalFailure("circuit deviates from the reference by " +
                           fmt(std::max(report.max_deviation(), report.leakage)));
  }
}

// ---- sea ------------------------------------------------------------------

struct SeaOpts {
  Common common;
  long sites = 64;
  std::string scenario = "all";
};

void cmd_sea(const SeaOpts& o, std::ostringstream& os) {
  require_count(o.sites, 2, "--sites");
  const WalkParams params = make_params(o.common);
  const auto n = static_cast<std::size_t>(o.sites);
  std::vector<PairScenario> rows;
  const bool all = o.scenario == "all";
  if (all || o.scenario == "low-boundary") rows.push_back(low_boundary_pair(n, params));
  if (all || o.scenario == "fold-boundary") rows.push_back(fold_boundary_pair(n, params));
  if (all || o.scenario == "exhaustive-min") rows.push_back(min_pair_over_grid(n, params));

  const double dt = params.dt();
  Csv csv(os);
  csv.row("scenario", "k_particle", "k_hole", "eps1_dt", "eps2_dt", "raw_dE_dt", "folded_dE_dt");
  for (const auto& r : rows) {
    csv.row(r.name, r.k_particle, r.k_hole, r.eps1 * dt, r.eps2 * dt, r.raw_delta_e * dt,
            r.folded_delta_e * dt);
  }
}

// ---- dispersion3d ---------------------------------------------------------

struct Dispersion3Opts {
  Common common;
  std::string slice = "x:0,0";
  long grid = 256;
};

struct SliceSpec {
  std::size_t axis;
  Momentum3 fixed;  // dimensionless; the swept component is ignored
};

SliceSpec parse_slice(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != 1 || text.size() < 3) {
    throw std::invalid_argument("--slice must look like x:VALUE,VALUE");
  }
  SliceSpec s{};
  switch (text[0]) {
    case 'x':
      s.axis = 0;
      break;
    case 'y':
      s.axis = 1;
      break;
    case 'z':
      s.axis = 2;
      break;
    default:
      throw std::invalid_argument("--slice axis must be x, y or z");
  }
  const std::vector<double> v = parse_angle_list(std::string_view(text).substr(2));
  if (v.size() != 2) throw std::invalid_argument("--slice needs exactly two fixed components");
  double comps[3] = {0.0, 0.0, 0.0};
  std::size_t next = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    if (a != s.axis) comps[a] = v[next++];
  }
  s.fixed = {comps[0], comps[1], comps[2]};
  return s;
}

void cmd_dispersion3d(const Dispersion3Opts& o, std::ostringstream& os) {
  require_count(o.grid, 2, "--grid");
  const SliceSpec slice = parse_slice(o.slice);
  const WalkParams params = make_params(o.common);
  const double dx = params.dx();
  const double dt = params.dt();
  const Momentum3 fixed{slice.fixed.x / dx, slice.fixed.y / dx, slice.fixed.z / dx};
  const auto path =
      dispersion3_slice(params, slice.axis, fixed, static_cast<std::size_t>(o.grid));
  Csv csv(os);
  csv.row("p_x_dx", "p_y_dx", "p_z_dx", "E1_dt", "E2_dt", "E3_dt", "E4_dt");
  for (const auto& r : path) {
    if (unitarity_defect(bloch_matrix3(r.p, params)) > 1e-10) {
      throw NumericalFailure("3-D Bloch matrix lost unitarity");
    }
    csv.row(r.p.x * dx, r.p.y * dx, r.p.z * dx, r.energies[0] * dt, r.energies[1] * dt,
            r.energies[2] * dt, r.energies[3] * dt);
  }
}

int emit(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) {
    err << "error: cannot write " << path << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-spacetime Dirac walks, fermionic QCA bookkeeping and qubit circuits",
               "diracsea"};
  app.set_config("--config", "", "key = value defaults; subcommand keys under [subcommand]");
  app.require_subcommand(1);

  DispersionOpts disp;
  auto* s_disp = app.add_subcommand("dispersion", "1-D band structure on a uniform grid");
  add_common(s_disp, disp.common);
  s_disp->add_option("--grid", disp.grid, "number of momenta")->capture_default_str();
  auto* dx_opt = s_disp->add_option("--dx", disp.dx, "lattice spacing for physical output");
  auto* c_opt = s_disp->add_option("--c", disp.c, "speed of light for physical output");

  GapScanOpts gap;
  auto* s_gap = app.add_subcommand("gap-scan", "gap certificates for the modified walk");
  s_gap->add_option("--mdt", gap.mdt, "comma-separated m c^2 dt values")->capture_default_str();
  s_gap->add_option("--theta", gap.theta, "rotation angle or auto")->capture_default_str();
  s_gap->add_option("--margin", gap.margin, "margin for auto theta")->capture_default_str();
  s_gap->add_option("--grid", gap.grid, "momentum grid size (>= 64)")->capture_default_str();
  s_gap->add_option("--out", gap.out, "output CSV path (default stdout)");

  EvolveOpts evo;
  auto* s_evo = app.add_subcommand("evolve", "position-space evolution of a single excitation");
  add_common(s_evo, evo.common);
  s_evo->add_option("--sites", evo.sites, "ring size")->capture_default_str();
  s_evo->add_option("--steps", evo.steps, "number of steps")->capture_default_str();
  s_evo->add_option("--start-site", evo.start_site, "initial site (default N/2)");
  s_evo->add_option("--start-comp", evo.start_comp, "initial chirality r or l")
      ->check(CLI::IsMember({"r", "l"}))
      ->capture_default_str();
  s_evo->add_flag("--require-zone-edge", evo.require_zone_edge,
                  "reject odd N, whose momentum grid misses pi/dx");

  CircuitOpts circ;
  auto* s_circ = app.add_subcommand("circuit-verify", "qubit circuit versus fermionic QCA");
  add_common(s_circ, circ.common);
  s_circ->add_option("--sites", circ.sites, "2 or 4")->capture_default_str();
  s_circ->add_option("--tol", circ.tol, "maximum accepted deviation")->capture_default_str();

  SeaOpts sea;
  auto* s_sea = app.add_subcommand("sea", "pair creation on the Dirac sea");
  add_common(s_sea, sea.common);
  s_sea->add_option("--sites", sea.sites, "momentum grid size")->capture_default_str();
  s_sea->add_option("--scenario", sea.scenario, "all, low-boundary, fold-boundary, exhaustive-min")
      ->check(CLI::IsMember({"all", "low-boundary", "fold-boundary", "exhaustive-min"}))
      ->capture_default_str();

  Dispersion3Opts d3;
  auto* s_d3 = app.add_subcommand("dispersion3d", "band-tracked slice of the 3-D walk");
  add_common(s_d3, d3.common);
  s_d3->add_option("--slice", d3.slice, "swept axis and fixed components, e.g. z:pi,pi/2")
      ->capture_default_str();
  s_d3->add_option("--grid", d3.grid, "points along the slice")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::ostringstream os;
  std::string path;
  try {
    if (s_disp->parsed()) {
      disp.physical = dx_opt->count() > 0 || c_opt->count() > 0;
      path = disp.common.out;
      cmd_dispersion(disp, os);
    } else if (s_gap->parsed()) {
      path = gap.out;
      cmd_gap_scan(gap, os);
    } else if (s_evo->parsed()) {
      path = evo.common.out;
      cmd_evolve(evo, os);
    } else if (s_circ->parsed()) {
      path = circ.common.out;
      cmd_circuit_verify(circ, os);
    } else if (s_sea->parsed()) {
      path = sea.common.out;
      cmd_sea(sea, os);
    } else if (s_d3->parsed()) {
      path = d3.common.out;
      cmd_dispersion3d(d3, os);
    }
  } catch (const NumericalFailure& e) {
    // The data are still written so the failure can be inspected.
    emit(path, os.str(), out, err);
    err << "numerical check failed: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const OutOfHypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return emit(path, os.str(), out, err);
}

}  // namespace diracsea::cli
