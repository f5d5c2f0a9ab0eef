#pragma once

// Command-line front end. run_cli is the whole program; main only forwards.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 physically invalid input.

#include "chiraforce/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace chiraforce {

enum ExitCode : int { exit_ok = 0, exit_verify_failed = 1, exit_usage = 2, exit_physical = 3 };

struct RunConfig {
  std::string subcommand;
  std::string tensor_file;
  std::vector<std::string> model_files;
  std::string beam_file;
  std::string profile_file;
  std::string positions_file;
  std::string out_file;
  std::string format = "json";
  std::optional<double> d_nm;
  std::vector<double> sweep_nm;
  std::uint64_t seed = 42;
  std::uint64_t samples = 0;  // 0: command default
  unsigned workers = 0;
  bool exact = false;
  double tolerance_scale = 1.0;
  std::string filter;
};

namespace cli_detail {

inline io::json command_header(const std::string& command) {
  return io::json{{"schema", io::schema_version}, {"command", command}};
}

inline MolecularModel load_model(const RunConfig& cfg) {
  if (cfg.model_files.size() != 1) throw parse_error("exactly one --model file is required");
  return io::model_from_json(io::read_file(cfg.model_files.front()), cfg.model_files.front());
}

inline io::BeamSetup load_beam(const RunConfig& cfg) {
  if (cfg.beam_file.empty()) throw parse_error("--beam file is required");
  io::BeamSetup setup = io::beam_from_json(io::read_file(cfg.beam_file), cfg.beam_file);
  if (!cfg.profile_file.empty()) {
    const io::json j = io::read_file(cfg.profile_file);
    io::detail::check_schema(j, cfg.profile_file);
    const RealVector3 axis = setup.profile.axis;
    setup.profile = io::profile_from_json(j, cfg.profile_file);
    validate_profile(setup.profile);
    if (setup.profile.axis != axis) {
      throw parse_error(cfg.profile_file + "/axis: must match the beam axis");
    }
    setup.mode = make_beam(setup.mode.handedness, frame_from_axis(axis), setup.wavelength,
                          amplitude_from_intensity(peak_intensity(setup.profile)),
                          setup.mode.linear_angle);
  }
  return setup;
}

inline std::vector<RealVector3> load_positions(const RunConfig& cfg, const io::BeamSetup& setup) {
  if (cfg.positions_file.empty()) return {setup.profile.focus};
  return io::positions_from_json(io::read_file(cfg.positions_file), cfg.positions_file);
}

inline void require_format(const RunConfig& cfg, bool csv_allowed) {
  if (cfg.format == "json" || (csv_allowed && cfg.format == "csv")) return;
  throw parse_error("--format " + cfg.format + " is not available for " + cfg.subcommand);
}

inline std::string csv_row(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += io::format_double(v);
  }
  return s + '\n';
}

}  // namespace cli_detail

/// Executes one subcommand. Writes the result to `out` and returns the exit
/// code; diagnostics go to `err`.
inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  if (!(cfg.tolerance_scale > 0.0) || !std::isfinite(cfg.tolerance_scale)) {
    throw parse_error("--tolerance-scale must be a positive number");
  }
  const Tolerances tol = Tolerances{}.scaled(cfg.tolerance_scale);

  if (cfg.subcommand == "avg") {
    require_format(cfg, false);
    if (cfg.tensor_file.empty()) throw parse_error("--tensor file is required");
    const Tensor t = io::tensor_from_json(io::read_file(cfg.tensor_file), cfg.tensor_file);
    io::json j = command_header("avg");
    if (cfg.exact) {
      j["result"] = io::to_json(rotational_average(to_exact(t)));
    } else if (cfg.samples > 0) {
      j["seed"] = cfg.seed;
      j["result"] = io::to_json(so3_sample_average(t, cfg.samples, cfg.seed, cfg.workers));
    } else {
      j["result"] = io::to_json(rotational_average(t));
    }
    io::write_json(out, j);
    return exit_ok;
  }

  if (cfg.subcommand == "energy") {
    require_format(cfg, false);
    const MolecularModel model = load_model(cfg);
    const io::BeamSetup setup = load_beam(cfg);
    const ResponseTensors t = build_response_tensors(model, setup.mode.omega, tol.detuning_floor);
    io::json j = command_header("energy");
    j["inputs"] = io::json{{"model", io::to_json(model)}, {"beam", io::to_json(setup)}};
    j["exact"] = cfg.exact;
    io::json results = io::json::array();
    for (const RealVector3& r : load_positions(cfg, setup)) {
      const double intensity = intensity_at(setup.profile, r).intensity;
      io::json row{{"position_um", io::vec_json(scaled(r, 1e6))}, {"intensity_W_per_m2", intensity}};
      row["shift"] = cfg.exact ? io::to_json(energy_shift(setup.mode, intensity, to_exact(t), tol))
                               : io::to_json(energy_shift(setup.mode, intensity, t, tol));
      results.push_back(row);
    }
    j["results"] = results;
    io::write_json(out, j);
    return exit_ok;
  }

  if (cfg.subcommand == "force") {
    require_format(cfg, true);
    const MolecularModel model = load_model(cfg);
    const io::BeamSetup setup = load_beam(cfg);
    if (setup.profile.kind != ProfileKind::gaussian) {
      throw physical_input_error("a plane wave exerts no gradient force; use a gaussian profile");
    }
    const ResponseTensors t = build_response_tensors(model, setup.mode.omega, tol.detuning_floor);
    const auto positions = load_positions(cfg, setup);
    if (cfg.format == "csv") {
      out << "x_um,y_um,z_um,intensity_W_per_m2,part_alpha_J,part_G_J,part_A_J,"
             "Fx_N,Fy_N,Fz_N,Fw_x_N,Fw_y_N,Fw_z_N,Fh_x_N,Fh_y_N,Fh_z_N\n";
    }
    io::json rows = io::json::array();
    for (const RealVector3& r : positions) {
      const double intensity = intensity_at(setup.profile, r).intensity;
      const EnergyShift s = energy_shift(setup.mode, intensity, t, tol);
      const ForceResult f = gradient_force(setup.profile, setup.mode, t, r, tol);
      if (cfg.format == "csv") {
        out << csv_row({r[0] * 1e6, r[1] * 1e6, r[2] * 1e6, intensity, s.part_alpha, s.part_G,
                        s.part_A, f.force[0], f.force[1], f.force[2], f.from_grad_w[0],
                        f.from_grad_w[1], f.from_grad_w[2], f.from_grad_h[0], f.from_grad_h[1],
                        f.from_grad_h[2]});
      } else {
        io::json row = io::to_json(f);
        row["position_um"] = io::vec_json(scaled(r, 1e6));
        row["intensity_W_per_m2"] = intensity;
        row["shift"] = io::to_json(s);
        rows.push_back(row);
      }
    }
    if (cfg.format == "json") {
      io::json j = command_header("force");
      j["inputs"] = io::json{{"model", io::to_json(model)}, {"beam", io::to_json(setup)}};
      j["results"] = rows;
      io::write_json(out, j);
    }
    return exit_ok;
  }

  if (cfg.subcommand == "verify") {
    require_format(cfg, false);
    VerifyConfig vc;
    vc.seed = cfg.seed;
    if (cfg.samples > 0) vc.samples = cfg.samples;
    vc.workers = cfg.workers;
    vc.exact = cfg.exact;
    vc.tol = tol;
    if (!cfg.model_files.empty()) {
      vc.models.clear();
      for (const auto& f : cfg.model_files) vc.models.push_back(io::model_from_json(io::read_file(f), f));
    }
    const VerifyReport report = run_checks(vc, cfg.filter);
    if (report.results.empty()) throw parse_error("--filter " + cfg.filter + " matches no check");
    io::write_json(out, to_json(report, vc));
    if (report.passed()) return exit_ok;
    err << "verify: failed checks:";
    for (const auto& r : report.results) {
      if (!r.passed) err << ' ' << r.id;
    }
    err << '\n';
    return exit_verify_failed;
  }

  if (cfg.subcommand == "estimate") {
    if (cfg.d_nm.has_value() == !cfg.sweep_nm.empty()) {
      throw parse_error("estimate takes exactly one of --d-nm or --sweep");
    }
    if (cfg.d_nm) {
      require_format(cfg, false);
      if (!(*cfg.d_nm > 0.0)) throw physical_input_error("molecular dimension must be positive");
      const EstimateReport r = estimate_ratio(*cfg.d_nm * 1e-9);
      io::json j = command_header("estimate");
      j["d_nm"] = *cfg.d_nm;
      j["trace_alpha"] = r.trace_alpha;
      j["trace_G_over_c"] = r.trace_G_over_c;
      j["ratio"] = r.ratio;
      j["chiral_force_ratio_to_10nm"] = r.reference_force_ratio;
      io::write_json(out, j);
      return exit_ok;
    }
    require_format(cfg, true);
    std::vector<double> ds;
    for (double d : cfg.sweep_nm) ds.push_back(d * 1e-9);
    const SweepTable table = scaling_sweep(ds);
    if (cfg.format == "csv") {
      out << "d_nm,chiral_force_N,achiral_force_N,ratio_to_first\n";
      for (const auto& row : table.rows) {
        out << csv_row({row.d * 1e9, row.chiral_force, row.achiral_force, row.ratio_to_first});
      }
      return exit_ok;
    }
    io::json rows = io::json::array();
    for (const auto& row : table.rows) {
      rows.push_back(io::json{{"d_nm", row.d * 1e9}, {"chiral_force_N", row.chiral_force},
                              {"achiral_force_N", row.achiral_force},
                              {"ratio_to_first", row.ratio_to_first}});
    }
    io::json j = command_header("estimate");
    j["sweep"] = rows;
    j["loglog_slope"] = table.loglog_slope;
    io::write_json(out, j);
    return exit_ok;
  }

  throw parse_error("unknown subcommand " + cfg.subcommand);
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  RunConfig cfg;
  cfg.tolerance_scale = tolerance_scale_from_env();

  CLI::App app{"Rotationally averaged optical energy shifts and chiral gradient forces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "chiraforce 1.0");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_file, "Write the result here instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* avg = app.add_subcommand("avg", "Rotational average of a tensor file");
  avg->add_option("--tensor,tensor", cfg.tensor_file, "Tensor JSON file")->required();
  avg->add_flag("--exact", cfg.exact, "Exact rational arithmetic");
  avg->add_option("--samples", cfg.samples, "Monte Carlo SO(3) samples instead of the analytic average");
  avg->add_option("--seed", cfg.seed, "Monte Carlo seed");
  avg->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  common(avg);

  auto* energy = app.add_subcommand("energy", "Energy shift of a model molecule in a beam");
  energy->add_option("--model", cfg.model_files, "Model JSON file")->required()->expected(1);
  energy->add_option("--beam", cfg.beam_file, "Beam JSON file")->required();
  energy->add_option("--profile", cfg.profile_file, "Profile JSON file overriding the beam's");
  energy->add_option("--positions", cfg.positions_file, "Positions JSON file (default: focus)");
  energy->add_flag("--exact", cfg.exact, "Exact rational arithmetic");
  common(energy);

  auto* force = app.add_subcommand("force", "Gradient force at a list of positions");
  force->add_option("--model", cfg.model_files, "Model JSON file")->required()->expected(1);
  force->add_option("--beam", cfg.beam_file, "Beam JSON file")->required();
  force->add_option("--profile", cfg.profile_file, "Profile JSON file overriding the beam's");
  force->add_option("--positions", cfg.positions_file, "Positions JSON file (default: focus)");
  common(force);

  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  verify->add_option("--seed", cfg.seed, "Master seed");
  verify->add_option("--samples", cfg.samples, "Monte Carlo samples per estimate (default 1000000)");
  verify->add_option("--model", cfg.model_files, "Model files (default: built-in examples)");
  verify->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  verify->add_option("--filter", cfg.filter, "Only checks whose id contains this text");
  bool verify_exact = true;
  verify->add_flag("--exact,!--no-exact", verify_exact, "Exact-arithmetic nullity checks (default on)");
  common(verify);

  auto* estimate = app.add_subcommand("estimate", "Size-based order-of-magnitude estimates");
  estimate->add_option("--d-nm", cfg.d_nm, "Molecular dimension in nm");
  estimate->add_option("--sweep", cfg.sweep_nm, "Comma-separated dimensions in nm")->delimiter(',');
  common(estimate);

  for (auto* sub : {avg, energy, force, verify, estimate}) {
    sub->add_option("--tolerance-scale", cfg.tolerance_scale,
                    "Multiplier on all tolerances (default from CHIRAFORCE_TOLERANCE_SCALE)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << "chiraforce 1.0\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return exit_usage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "verify") cfg.exact = verify_exact;

  try {
    if (cfg.out_file.empty()) return run_command(cfg, out, err);
    std::ostringstream buffer;
    const int code = run_command(cfg, buffer, err);
    std::ofstream file(cfg.out_file, std::ios::binary);
    if (!file) throw parse_error("cannot write " + cfg.out_file);
    file << buffer.str();
    return code;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const physical_input_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_physical;
  } catch (const realness_error& e) {
    err << "verification failure: " << e.what() << '\n';
    return exit_verify_failed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace chiraforce
