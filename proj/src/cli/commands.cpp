#include "cbs/cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "cbs/cli/output.hpp"
#include "cbs/coherence.hpp"
#include "cbs/errors.hpp"
#include "cbs/single_atom.hpp"

namespace cbs::cli {

namespace {

const AtomResonance kRes = AtomResonance::make();

Drive checked_drive(double delta, double s, const char* s_field) {
  if (!std::isfinite(delta)) throw ConfigError("delta", "must be finite");
  try {
    return Drive::make(delta, s, kRes);
  } catch (const Error& e) {
    throw ConfigError(s_field, e.what());
  }
}

Drive checked_drive_s0(double delta, double s0) {
  if (!std::isfinite(delta)) throw ConfigError("delta", "must be finite");
  try {
    return Drive::from_s0(delta, s0, kRes);
  } catch (const Error& e) {
    throw ConfigError("s0", e.what());
  }
}

// Canonical key=value text of a configuration, hashed into the CSV comment.
class ConfigText {
 public:
  explicit ConfigText(std::string command) : text_(std::move(command)) {}
  ConfigText& add(const char* key, double v) {
    text_ += std::string(";") + key + "=" + format_double(v);
    return *this;
  }
  ConfigText& add(const char* key, const std::vector<double>& v) {
    text_ += std::string(";") + key + "=";
    for (std::size_t i = 0; i < v.size(); ++i) text_ += (i ? "," : "") + format_double(v[i]);
    return *this;
  }
  ConfigText& add(const char* key, const std::string& v) {
    text_ += std::string(";") + key + "=" + v;
    return *this;
  }
  std::string hash() const { return fnv1a_hex(text_); }

 private:
  std::string text_;
};

nlohmann::ordered_json number(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  return out;
}

const char* mode_name(two_atom::PropagationMode m) {
  return m == two_atom::PropagationMode::exact_phase ? "exact-phase" : "phase-neglect";
}

}  // namespace

nlohmann::ordered_json cmd_spectrum(const SpectrumConfig& config) {
  if (config.deltas.empty()) throw ConfigError("delta", "list of detunings is empty");
  if (config.points < 3) throw ConfigError("points", "need at least 3 grid points");
  std::vector<Drive> drives;
  double half_width = 0.0;
  for (double d : config.deltas) {
    drives.push_back(checked_drive(d, config.s, "s"));
    half_width = std::max(half_width, single_atom::default_half_width(drives.back(), kRes));
  }
  if (config.half_width) {
    if (!(*config.half_width > 0.0)) throw ConfigError("half_width", "must be positive");
    half_width = *config.half_width;
  }
  for (const auto& drive : drives) {
    try {
      single_atom::single_atom_intensities(drive, kRes);
    } catch (const ValidityError& e) {
      throw ConfigError("s", e.what());
    }
  }

  const auto grid = single_atom::symmetric_grid(half_width, config.points);
  const auto hash = ConfigText("spectrum")
                        .add("delta", config.deltas)
                        .add("s", config.s)
                        .add("points", static_cast<double>(config.points))
                        .add("half_width", half_width)
                        .hash();
  CsvWriter csv(config.out,
                "cbs spectrum config_hash=" + hash + " units: delta and omega-omega_L in Gamma, P_in in eta/Gamma",
                {"delta_in_Gamma", "omega_minus_omegaL_in_Gamma", "P_in_per_eta"});

  nlohmann::ordered_json side;
  side["command"] = "spectrum";
  side["config_hash"] = hash;
  side["s"] = config.s;
  side["half_width"] = half_width;
  side["points"] = config.points;
  auto& runs = side["runs"] = nlohmann::ordered_json::array();
  for (const auto& drive : drives) {
    const auto spec = single_atom::inelastic_spectrum(drive, kRes, grid);
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
      const std::array<double, 3> row{drive.delta(), spec.grid[i], spec.values[i]};
      csv.row(row);
    }
    nlohmann::ordered_json run;
    run["delta"] = drive.delta();
    run["inelastic_norm"] = spec.norm;
    run["elastic_weight"] = spec.elastic_weight;
    run["captured_fraction"] = spec.captured_fraction;
    run["trapezoid_integral"] = single_atom::trapezoid_integral(spec);
    auto& peaks = run["peaks"] = nlohmann::ordered_json::array();
    for (const auto& p : single_atom::find_peaks(spec))
      peaks.push_back({{"position", number(p.position)}, {"height", number(p.height)}, {"fwhm", number(p.fwhm)}});
    run["warnings"] = spec.warnings;
    runs.push_back(std::move(run));
  }
  csv.close();
  write_json(sidecar_path(config.out), side);
  return side;
}

nlohmann::ordered_json cmd_enhancement(const EnhancementConfig& config) {
  std::vector<double> s0 = config.s0;
  if (s0.empty())
    for (int i = 0; i <= 80; ++i) s0.push_back(i / 10.0);
  auto alpha = [&](double v) {
    const auto drive = checked_drive_s0(config.delta, v);
    try {
      return two_atom::cbs_signal(drive, kRes).alpha;
    } catch (const ValidityError& e) {
      throw ConfigError("s0", e.what());
    }
  };

  const auto hash = ConfigText("enhancement").add("delta", config.delta).add("s0", s0).hash();
  CsvWriter csv(config.out, "cbs enhancement config_hash=" + hash + " units: s0 dimensionless, alpha dimensionless",
                {"s0", "alpha_exact", "alpha_large_detuning", "alpha_linear"});
  for (double v : s0) {
    const std::array<double, 4> row{v, alpha(v), two_atom::alpha_large_detuning(v), two_atom::alpha_linear(v)};
    csv.row(row);
  }
  csv.close();

  const double h = 1e-4;
  const double slope = (-3.0 * alpha(0.0) + 4.0 * alpha(h) - alpha(2.0 * h)) / (2.0 * h);
  nlohmann::ordered_json side;
  side["command"] = "enhancement";
  side["config_hash"] = hash;
  side["delta"] = config.delta;
  side["slope_at_s0_zero"] = slope;
  side["slope_step"] = h;
  side["alpha_at_s0_zero"] = alpha(0.0);
  write_json(sidecar_path(config.out), side);
  return side;
}

nlohmann::ordered_json cmd_cone(const ConeConfig& config) {
  const auto drive = config.s0 ? checked_drive_s0(config.delta, *config.s0) : checked_drive(config.delta, config.s, "s");
  const double r_perp = config.r_perp_wavelengths.value_or(config.r12_wavelengths);
  std::optional<PairGeometry> geometry;
  try {
    geometry = PairGeometry::make(config.r12_wavelengths, {1.0, 0.0, 0.0}, 0.0, r_perp);
  } catch (const DomainError& e) {
    throw ConfigError(config.r_perp_wavelengths ? "r_perp_in_wavelengths" : "r12_in_wavelengths", e.what());
  }
  if (!(r_perp > 0.0)) throw ConfigError("r_perp_in_wavelengths", "must be positive");
  if (config.points < 2) throw ConfigError("points", "need at least 2 angles");
  const double k_r12 = geometry->k_r12();
  const double k_rperp = geometry->k_rperp();
  const double theta_max = config.theta_max.value_or(3.0 * kPi / k_r12);
  if (!(theta_max > 0.0)) throw ConfigError("theta_max", "must be positive");
  const auto theta = linspace(0.0, theta_max, config.points);

  coherence::ConeProfile cone;
  try {
    cone = coherence::cone_shape(drive, kRes, k_r12, theta);
  } catch (const ValidityError& e) {
    throw ConfigError(config.s0 ? "s0" : "s", e.what());
  }
  const auto fixed = coherence::fixed_frequency_pattern(config.laser_offset, k_rperp, drive, kRes, theta);
  const auto avg = coherence::averaged_pattern(k_rperp, drive, kRes, theta);
  const auto total = coherence::total_pattern(k_rperp, drive, kRes, {});

  const auto hash = ConfigText("cone")
                        .add("delta", drive.delta())
                        .add("s", drive.s())
                        .add("r12", config.r12_wavelengths)
                        .add("r_perp", r_perp)
                        .add("laser_offset", config.laser_offset)
                        .add("theta_max", theta_max)
                        .add("points", static_cast<double>(config.points))
                        .add("mode", std::string(mode_name(config.mode)))
                        .hash();
  CsvWriter csv(config.out,
                "cbs cone config_hash=" + hash +
                    " units: theta in rad, I_fixed normalized to its maximum, other columns in eta~",
                {"theta", "I_fixed", "I_avg_omega", "I_avg_omega_and_positions"});
  const double fixed_max = fixed.maximum();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const std::array<double, 4> row{theta[i], fixed.curve.intensity[i] / fixed_max, avg.curve.intensity[i],
                                    cone.ladder_inelastic + cone.crossed_inelastic.intensity[i]};
    csv.row(row);
  }
  csv.close();

  const two_atom::Propagation prop{config.mode, k_r12};
  const auto ladder_q = two_atom::inelastic_ladder_quadrature(drive, kRes, {}, prop);
  const auto crossed_q = two_atom::crossed_interference_quadrature(drive, kRes, {}, prop);

  nlohmann::ordered_json side;
  side["command"] = "cone";
  side["config_hash"] = hash;
  side["delta"] = drive.delta();
  side["s"] = drive.s();
  side["s0"] = drive.s0();
  side["omega_L_r12"] = k_r12;
  side["omega_L_r_perp"] = k_rperp;
  side["first_zero"] = cone.first_zero;
  side["fixed_frequency"] = {{"laser_offset", config.laser_offset},
                             {"phi0", fixed.phi0},
                             {"modulus_I", fixed.modulus_I},
                             {"modulus_II", fixed.modulus_II}};
  side["averaged"] = {{"I_I", avg.path_I},
                      {"I_II", avg.path_II},
                      {"gamma_I_II", avg.gamma},
                      {"phi", avg.phi},
                      {"contrast", 2.0 * std::sqrt(avg.path_I * avg.path_II) * avg.gamma}};
  side["total"] = {{"L_in", total.ladder_in},
                   {"C_in", total.crossed_in},
                   {"gamma_1_2", total.gamma_atoms},
                   {"gamma_1_2_closed", total.gamma_atoms_closed},
                   {"value_at_theta_zero", cone.ladder_inelastic + cone.crossed_inelastic.intensity.front()}};
  side["quadrature"] = {{"mode", mode_name(config.mode)},
                        {"I_I", ladder_q.path_I.value},
                        {"I_II", ladder_q.path_II.value},
                        {"C_in", 2.0 * crossed_q.value}};
  side["warnings"] = cone.warnings;
  write_json(sidecar_path(config.out), side);
  return side;
}

verify::Report cmd_verify(const VerifyCommandConfig& config) {
  if (config.suite.shards == 0) throw ConfigError("shards", "must be at least 1");
  if (config.suite.tolerance_override && !(*config.suite.tolerance_override >= 0.0))
    throw ConfigError("tol", "must be non-negative");
  verify::Report report;
  report.config = config.suite;
  if (config.criterion) {
    if (*config.criterion < 1 || *config.criterion > verify::kCriterionCount)
      throw ConfigError("criterion", "must be between 1 and 13");
    report.criteria.push_back(verify::run_criterion(*config.criterion, config.suite));
  } else {
    report = verify::run_all(config.suite);
  }
  write_text(config.out, verify::to_json(report));
  return report;
}

int run(int argc, char** argv) {
  CLI::App app{"Coherent backscattering of light by two saturated two-level atoms"};
  app.set_config("--config", "", "INI or TOML file with one section per subcommand; flags override it");
  app.require_subcommand(1);

  SpectrumConfig spectrum;
  auto* sp = app.add_subcommand("spectrum", "Inelastic single-atom spectrum");
  sp->add_option("--delta", spectrum.deltas, "Detunings in Gamma")->delimiter(',')->capture_default_str();
  sp->add_option("--s", spectrum.s, "Saturation parameter")->capture_default_str();
  sp->add_option("--points", spectrum.points, "Grid points")->capture_default_str();
  sp->add_option("--half-width", spectrum.half_width, "Grid half-width in Gamma");
  sp->add_option("--out", spectrum.out, "CSV path; the sidecar JSON goes next to it")->capture_default_str();

  EnhancementConfig enhancement;
  auto* en = app.add_subcommand("enhancement", "Enhancement factor versus s0");
  en->add_option("--delta", enhancement.delta, "Detuning in Gamma")->capture_default_str();
  en->add_option("--s0", enhancement.s0, "On-resonance saturation values")->delimiter(',');
  en->add_option("--out", enhancement.out, "CSV path")->capture_default_str();

  ConeConfig cone;
  const std::map<std::string, two_atom::PropagationMode> modes{
      {"phase-neglect", two_atom::PropagationMode::phase_neglect},
      {"exact-phase", two_atom::PropagationMode::exact_phase}};
  auto* co = app.add_subcommand("cone", "Interference patterns and backscattering cone");
  co->add_option("--delta", cone.delta, "Detuning in Gamma")->capture_default_str();
  auto* s_opt = co->add_option("--s", cone.s, "Saturation parameter")->capture_default_str();
  co->add_option("--s0", cone.s0, "On-resonance saturation; replaces --s")->excludes(s_opt);
  co->add_option("--r12-in-wavelengths", cone.r12_wavelengths, "Atom separation")->capture_default_str();
  co->add_option("--r-perp-in-wavelengths", cone.r_perp_wavelengths, "Transverse separation (default r12)");
  co->add_option("--laser-offset", cone.laser_offset, "omega_D - omega_L for the fixed-frequency column")
      ->capture_default_str();
  co->add_option("--theta-max", cone.theta_max, "Largest angle in rad (default three cone zeros)");
  co->add_option("--points", cone.points, "Number of angles")->capture_default_str();
  co->add_option("--mode", cone.mode, "phase-neglect or exact-phase")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  co->add_option("--out", cone.out, "CSV path")->capture_default_str();

  VerifyCommandConfig verify_cfg;
  auto* ve = app.add_subcommand("verify", "Run the acceptance suite");
  ve->add_option("--seed", verify_cfg.suite.seed, "Monte Carlo seed")->capture_default_str();
  ve->add_option("--tol", verify_cfg.suite.tolerance_override, "Replace every tolerance (0 = fault injection)");
  ve->add_option("--shards", verify_cfg.suite.shards, "Monte Carlo worker threads")->capture_default_str();
  ve->add_option("--criterion", verify_cfg.criterion, "Run a single criterion");
  ve->add_option("--out", verify_cfg.out, "JSON report path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sp) {
      cmd_spectrum(spectrum);
    } else if (*en) {
      cmd_enhancement(enhancement);
    } else if (*co) {
      cmd_cone(cone);
    } else if (*ve) {
      const auto report = cmd_verify(verify_cfg);
      for (const auto& c : report.criteria) {
        std::cout << verify::summary_line(c) << '\n';
        for (const auto& line : verify::detail_lines(c)) std::cout << line << '\n';
      }
      return report.all_passed() ? kOk : kVerifyFailed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace cbs::cli
