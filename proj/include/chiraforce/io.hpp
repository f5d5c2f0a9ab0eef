#pragma once

// JSON schemas for tensors, molecular models, beams, profiles and position
// lists, plus a deterministic JSON writer (fixed key order, doubles printed
// with 17 significant digits).
//
// Every file carries "schema": 1. Units in files: energies in eV, dipoles in
// debye, magnetic moments in Bohr magnetons, quadrupoles in e a0^2,
// wavelengths in nm, waists and positions in micrometres.

#include "chiraforce/errors.hpp"
#include "chiraforce/force_engine.hpp"
#include "chiraforce/molecule.hpp"
#include "chiraforce/radiation.hpp"
#include "chiraforce/rot_avg.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace chiraforce::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  // Shortest text that parses back to the same double.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline void write(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(key).dump() << (indent > 0 ? ": " : ":");
        write(os, value, indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays (vectors, [re, im] pairs) stay on one line.
      bool flat = j.size() <= 3;
      for (const auto& v : j) flat = flat && v.is_number();
      if (flat || indent == 0) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << (indent > 0 ? ", " : ",");
          write(os, j[i], 0, 0);
        }
        os << ']';
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline void write_json(std::ostream& os, const json& j, int indent = 2) {
  detail::write(os, j, indent, 0);
  os << '\n';
}

inline std::string to_json_string(const json& j, int indent = 2) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

// ---------------------------------------------------------------------------
// Reading helpers
// ---------------------------------------------------------------------------

/// Parses text as JSON; syntax errors carry line and column.
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(source + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw parse_error(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw parse_error(where + ": missing field \"" + key + "\"");
  return *it;
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw parse_error(where + ": expected a number");
  return j.get<double>();
}

inline std::string string_value(const json& j, const std::string& where) {
  if (!j.is_string()) throw parse_error(where + ": expected a string");
  return j.get<std::string>();
}

inline RealVector3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw parse_error(where + ": expected an array of 3 numbers");
  RealVector3 v{};
  for (std::size_t i = 0; i < 3; ++i) v[i] = number(j[i], where + "/" + std::to_string(i));
  return v;
}

inline Matrix3 mat3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw parse_error(where + ": expected a 3x3 array");
  Matrix3 m{};
  for (std::size_t i = 0; i < 3; ++i) m[i] = vec3(j[i], where + "/" + std::to_string(i));
  return m;
}

inline void check_schema(const json& j, const std::string& where) {
  const json& s = field(j, "schema", where);
  if (!s.is_number_integer() || s.get<int>() != schema_version) {
    throw parse_error(where + ": unsupported schema version (expected " +
                      std::to_string(schema_version) + ")");
  }
}

inline double optional_number(const json& obj, const char* key, double fallback,
                              const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + "/" + key);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tensors
// ---------------------------------------------------------------------------

inline json pair_json(const cplx& z) {
  return json::array({z.real(), z.imag()});
}

inline json to_json(const Tensor& t) {
  json comps = json::array();
  for (const auto& z : t.components()) comps.push_back(pair_json(z));
  return json{{"schema", schema_version}, {"rank", t.rank()}, {"components", comps},
              {"unit_tag", t.unit_tag()}};
}

inline json to_json(const ExactTensor& t) {
  json comps = json::array();
  for (const auto& z : t.components()) {
    comps.push_back(json::array({z.real().str(), z.imag().str()}));
  }
  return json{{"schema", schema_version}, {"rank", t.rank()}, {"components", comps},
              {"unit_tag", t.unit_tag()}, {"exact", true}};
}

inline Tensor tensor_from_json(const json& j, const std::string& where = "tensor") {
  detail::check_schema(j, where);
  const json& r = detail::field(j, "rank", where);
  if (!r.is_number_integer()) throw parse_error(where + "/rank: expected an integer");
  const int rank = r.get<int>();
  if (rank < 0 || rank > max_tensor_rank) throw parse_error(where + "/rank: outside 0..6");
  const json& c = detail::field(j, "components", where);
  if (!c.is_array() || c.size() != pow3(rank)) {
    throw parse_error(where + "/components: expected " + std::to_string(pow3(rank)) +
                      " [re, im] pairs");
  }
  std::vector<cplx> comps;
  comps.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string w = where + "/components/" + std::to_string(i);
    if (!c[i].is_array() || c[i].size() != 2) throw parse_error(w + ": expected [re, im]");
    comps.emplace_back(detail::number(c[i][0], w), detail::number(c[i][1], w));
  }
  std::string tag;
  if (auto it = j.find("unit_tag"); it != j.end()) tag = detail::string_value(*it, where + "/unit_tag");
  return Tensor(rank, std::move(comps), std::move(tag));
}

template <class T>
json coefficients_json(const std::vector<T>& coeffs) {
  json out = json::array();
  for (const auto& z : coeffs) {
    if constexpr (scalar_ops<T>::is_exact) {
      out.push_back(json::array({z.real().str(), z.imag().str()}));
    } else {
      out.push_back(pair_json(z));
    }
  }
  return out;
}

template <class T>
json to_json(const AverageResult<T>& r) {
  json j{{"schema", schema_version}, {"rank", r.rank}, {"method", to_string(r.method)}};
  if (r.rank >= min_average_rank && r.rank <= max_average_rank) {
    j["basis"] = chiraforce::detail::basis_labels(r.rank);
  }
  j["coefficients"] = coefficients_json(r.coefficients);
  j["averaged_tensor"] = to_json(r.averaged_tensor);
  if (r.standard_error) j["standard_error"] = to_json(*r.standard_error);
  if (r.samples) j["samples"] = r.samples;
  return j;
}

// ---------------------------------------------------------------------------
// Molecular models
// ---------------------------------------------------------------------------

inline MolecularModel model_from_json(const json& j, const std::string& where = "model") {
  detail::check_schema(j, where);
  MolecularModel m;
  m.label = detail::string_value(detail::field(j, "label", where), where + "/label");
  m.ground_energy =
      detail::number(detail::field(j, "ground_energy_eV", where), where + "/ground_energy_eV") *
      constants::electron_volt;
  const json& states = detail::field(j, "states", where);
  if (!states.is_array()) throw parse_error(where + "/states: expected an array");
  for (std::size_t n = 0; n < states.size(); ++n) {
    const std::string w = where + "/states/" + std::to_string(n);
    const json& s = states[n];
    ExcitedState st;
    st.energy = detail::number(detail::field(s, "energy_eV", w), w + "/energy_eV") *
                constants::electron_volt;
    st.mu = scaled(detail::vec3(detail::field(s, "mu_D", w), w + "/mu_D"), constants::debye);
    if (auto it = s.find("m_bar_bohr_magnetons"); it != s.end()) {
      st.m_bar = scaled(detail::vec3(*it, w + "/m_bar_bohr_magnetons"), constants::bohr_magneton);
    }
    if (auto it = s.find("Q_au"); it != s.end()) {
      st.quadrupole = detail::mat3(*it, w + "/Q_au");
      for (auto& row : st.quadrupole)
        for (double& q : row) q *= constants::quadrupole_au;
    }
    m.states.push_back(st);
  }
  return m;
}

inline json to_json(const MolecularModel& m) {
  json states = json::array();
  for (const auto& s : m.states) {
    json q = json::array();
    for (const auto& row : s.quadrupole) {
      q.push_back(json::array({row[0] / constants::quadrupole_au, row[1] / constants::quadrupole_au,
                               row[2] / constants::quadrupole_au}));
    }
    auto v = [](const RealVector3& x, double unit) {
      return json::array({x[0] / unit, x[1] / unit, x[2] / unit});
    };
    states.push_back(json{{"energy_eV", s.energy / constants::electron_volt},
                          {"mu_D", v(s.mu, constants::debye)},
                          {"m_bar_bohr_magnetons", v(s.m_bar, constants::bohr_magneton)},
                          {"Q_au", q}});
  }
  return json{{"schema", schema_version}, {"label", m.label},
              {"ground_energy_eV", m.ground_energy / constants::electron_volt},
              {"states", states}};
}

// ---------------------------------------------------------------------------
// Beams, profiles, positions
// ---------------------------------------------------------------------------

struct BeamSetup {
  BeamMode mode;
  BeamProfile profile;
  double wavelength = 0.0;  // m
};

inline Handedness handedness_from_string(const std::string& s, const std::string& where) {
  if (s == "L") return Handedness::left;
  if (s == "R") return Handedness::right;
  if (s == "linear") return Handedness::linear;
  throw parse_error(where + ": handedness must be \"L\", \"R\" or \"linear\"");
}

inline BeamProfile profile_from_json(const json& j, const std::string& where = "profile") {
  BeamProfile p;
  const std::string kind = detail::string_value(detail::field(j, "kind", where), where + "/kind");
  if (kind == "gaussian") {
    p.kind = ProfileKind::gaussian;
    p.power = detail::number(detail::field(j, "power_W", where), where + "/power_W");
    p.waist = detail::number(detail::field(j, "waist_um", where), where + "/waist_um") * 1e-6;
  } else if (kind == "plane_wave") {
    p.kind = ProfileKind::plane_wave;
    p.intensity = detail::number(detail::field(j, "intensity_W_per_m2", where),
                                 where + "/intensity_W_per_m2");
  } else {
    throw parse_error(where + "/kind: expected \"gaussian\" or \"plane_wave\"");
  }
  if (auto it = j.find("axis"); it != j.end()) p.axis = detail::vec3(*it, where + "/axis");
  if (auto it = j.find("focus"); it != j.end()) {
    p.focus = scaled(detail::vec3(*it, where + "/focus"), 1e-6);
  }
  return p;
}

inline BeamSetup beam_from_json(const json& j, const std::string& where = "beam") {
  detail::check_schema(j, where);
  BeamSetup setup;
  setup.profile = profile_from_json(j, where);
  setup.wavelength =
      detail::number(detail::field(j, "wavelength_nm", where), where + "/wavelength_nm") * 1e-9;
  const Handedness h = handedness_from_string(
      detail::string_value(detail::field(j, "handedness", where), where + "/handedness"),
      where + "/handedness");
  const double angle = detail::optional_number(j, "angle_rad", 0.0, where);
  validate_profile(setup.profile);
  setup.mode = make_beam(h, frame_from_axis(setup.profile.axis), setup.wavelength,
                        amplitude_from_intensity(peak_intensity(setup.profile)), angle);
  return setup;
}

inline json to_json(const BeamSetup& b) {
  json j{{"schema", schema_version},
         {"kind", b.profile.kind == ProfileKind::gaussian ? "gaussian" : "plane_wave"},
         {"wavelength_nm", b.wavelength * 1e9}};
  if (b.profile.kind == ProfileKind::gaussian) {
    j["power_W"] = b.profile.power;
    j["waist_um"] = b.profile.waist * 1e6;
  } else {
    j["intensity_W_per_m2"] = b.profile.intensity;
  }
  j["handedness"] = to_string(b.mode.handedness);
  if (b.mode.handedness == Handedness::linear) j["angle_rad"] = b.mode.linear_angle;
  j["axis"] = b.profile.axis;
  j["focus"] = json::array({b.profile.focus[0] * 1e6, b.profile.focus[1] * 1e6,
                            b.profile.focus[2] * 1e6});
  return j;
}

inline std::vector<RealVector3> positions_from_json(const json& j,
                                                    const std::string& where = "positions") {
  detail::check_schema(j, where);
  const json& list = detail::field(j, "positions_um", where);
  if (!list.is_array()) throw parse_error(where + "/positions_um: expected an array");
  std::vector<RealVector3> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(scaled(detail::vec3(list[i], where + "/positions_um/" + std::to_string(i)), 1e-6));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

inline json to_json(const EnergyShift& s) {
  return json{{"total", s.total}, {"part_alpha", s.part_alpha}, {"part_G", s.part_G},
              {"part_A", s.part_A}, {"residual_imag", s.residual_imag}};
}

inline json to_json(const ExactEnergyShift& s) {
  return json{{"total", s.total.str()}, {"part_alpha", s.part_alpha.str()},
              {"part_G", s.part_G.str()}, {"part_A", s.part_A.str()},
              {"residual_imag", s.residual_imag.str()}};
}

inline json vec_json(const RealVector3& v) {
  return json::array({v[0], v[1], v[2]});
}

inline json to_json(const ForceResult& f) {
  return json{{"force", vec_json(f.force)},
              {"decomposition", json{{"from_grad_w", vec_json(f.from_grad_w)},
                                     {"from_grad_h", vec_json(f.from_grad_h)}}}};
}

}  // namespace chiraforce::io
