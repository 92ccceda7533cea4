#include "tensegrity/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "tensegrity/error.hpp"

namespace tensegrity::io {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::parse_error, where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw Error(ErrorKind::parse_error, "unknown key '" + item.key() + "' in " + where);
  }
}

std::vector<Pair> pairs_from(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorKind::parse_error, where + " must be an array");
  std::vector<Pair> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw Error(ErrorKind::parse_error, where + " entries must be [i, j] integer pairs");
    }
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

std::vector<double> numbers_from(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw Error(ErrorKind::parse_error, where + " must be an array");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw Error(ErrorKind::parse_error, where + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

MaterialSpec material_from(const json& obj, const std::string& where) {
  require_keys(obj, {"youngs_modulus", "density", "radius", "compression_stiff"}, where);
  MaterialSpec m;
  try {
    m.youngs_modulus = obj.at("youngs_modulus").get<double>();
    m.density = obj.at("density").get<double>();
    m.radius = obj.at("radius").get<double>();
    m.compression_stiff = obj.value("compression_stiff", true);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, where + ": " + e.what());
  }
  if (!(m.youngs_modulus > 0.0 && m.density > 0.0 && m.radius > 0.0)) {
    throw Error(ErrorKind::parse_error, where + ": material values must be positive");
  }
  return m;
}

json material_to(const MaterialSpec& m) {
  return {{"youngs_modulus", m.youngs_modulus},
          {"density", m.density},
          {"radius", m.radius},
          {"compression_stiff", m.compression_stiff}};
}

json pairs_to(std::span<const Pair> pairs) {
  json arr = json::array();
  for (const Pair& p : pairs) arr.push_back({p.i, p.j});
  return arr;
}

}  // namespace

Model model_from_json(const json& doc) {
  require_keys(doc, {"dimension", "points", "rods", "cables", "rod_lengths", "cable_lengths", "anchors", "materials"},
               "model");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
    throw Error(ErrorKind::parse_error, "model needs an integer 'dimension'");
  }
  const int dim = doc["dimension"].get<int>();
  if (dim != 2 && dim != 3) throw Error(ErrorKind::parse_error, "dimension must be 2 or 3");
  if (!doc.contains("points") || !doc["points"].is_array()) throw Error(ErrorKind::parse_error, "model needs 'points'");

  std::vector<Point> points;
  for (const auto& p : doc["points"]) {
    const auto coords = numbers_from(p, "points");
    if (static_cast<int>(coords.size()) != dim) {
      throw Error(ErrorKind::parse_error, "each point needs " + std::to_string(dim) + " coordinates");
    }
    points.emplace_back(coords[0], coords[1], dim == 3 ? coords[2] : 0.0);
  }
  const auto rods = doc.contains("rods") ? pairs_from(doc["rods"], "rods") : std::vector<Pair>{};
  const auto cables = doc.contains("cables") ? pairs_from(doc["cables"], "cables") : std::vector<Pair>{};
  const auto rod_lengths = doc.contains("rod_lengths") ? numbers_from(doc["rod_lengths"], "rod_lengths") : std::vector<double>{};
  const auto cable_lengths =
      doc.contains("cable_lengths") ? numbers_from(doc["cable_lengths"], "cable_lengths") : std::vector<double>{};
  std::vector<int> anchors;
  if (doc.contains("anchors")) {
    if (!doc["anchors"].is_array()) throw Error(ErrorKind::parse_error, "anchors must be an array");
    for (const auto& a : doc["anchors"]) {
      if (!a.is_number_integer()) throw Error(ErrorKind::parse_error, "anchors must be integers");
      anchors.push_back(a.get<int>());
    }
  }
  std::optional<MaterialMap> materials;
  if (doc.contains("materials")) {
    require_keys(doc["materials"], {"rod", "cable"}, "materials");
    MaterialMap map;
    if (doc["materials"].contains("rod")) map.rod = material_from(doc["materials"]["rod"], "materials.rod");
    if (doc["materials"].contains("cable")) map.cable = material_from(doc["materials"]["cable"], "materials.cable");
    materials = map;
  }
  return Model(dim, std::move(points), rods, cables, rod_lengths, cable_lengths, anchors, materials);
}

json model_to_json(const Model& model) {
  json doc;
  doc["dimension"] = model.dimension();
  json points = json::array();
  for (const Point& p : model.points()) {
    if (model.dimension() == 3) {
      points.push_back({p.x(), p.y(), p.z()});
    } else {
      points.push_back({p.x(), p.y()});
    }
  }
  doc["points"] = points;
  doc["rods"] = pairs_to(model.rods());
  doc["cables"] = pairs_to(model.cables());
  doc["rod_lengths"] = std::vector<double>(model.rod_lengths().begin(), model.rod_lengths().end());
  doc["cable_lengths"] = std::vector<double>(model.cable_lengths().begin(), model.cable_lengths().end());
  if (!model.anchors().empty()) doc["anchors"] = std::vector<int>(model.anchors().begin(), model.anchors().end());
  if (const auto& m = model.materials()) {
    json mats = json::object();
    if (m->rod) mats["rod"] = material_to(*m->rod);
    if (m->cable) mats["cable"] = material_to(*m->cable);
    doc["materials"] = mats;
  }
  return doc;
}

Model parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  try {
    return model_from_json(doc);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) throw;
    throw Error(ErrorKind::parse_error, std::string(to_string(e.kind())) + ": " + e.what());
  }
}

std::string dump_model(const Model& model) { return model_to_json(model).dump(2) + "\n"; }

Model read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model(text.str());
}

void write_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write " + path);
  out << dump_model(model);
}

json report_to_json(const StabilityReport& report, const Model& model) {
  json doc;
  doc["verdict"] = to_string(report.verdict);
  doc["rods"] = report.n;
  doc["cables"] = report.sigma;
  doc["required_cables"] = report.required_sigma;
  doc["minimum_cables"] = report.minimum_sigma;
  doc["dofs"] = report.dofs;
  doc["rigid_rank"] = report.rigid_rank;
  doc["member_rank"] = report.member_rank;
  doc["dependency_dimension"] = report.dependency_dim;
  doc["soft_modes"] = report.soft_mode_count();
  doc["covector_count"] = report.covector_count();
  doc["non_positive_cables"] = pairs_to(report.non_positive_cables);
  if (!report.note.empty()) doc["note"] = report.note;
  const ForceTable table = member_forces(report.self_stress, model);
  json forces = json::array();
  for (const auto& f : table.members) {
    forces.push_back({{"member", {f.pair.i, f.pair.j}},
                      {"kind", to_string(f.kind)},
                      {"force", f.force},
                      {"coefficient", f.coefficient}});
  }
  doc["forces"] = forces;
  if (report.self_stress) {
    doc["gamma"] = report.self_stress->gamma;
    doc["max_equilibrium_residual"] = table.max_equilibrium_residual;
  }
  return doc;
}

std::string format_number(double value) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17) << value;
  return s.str();
}

void write_force_csv(std::ostream& out, const ForceTable& table) {
  out << "member_i,member_j,kind,coefficient,force\n";
  for (const auto& f : table.members) {
    out << f.pair.i << ',' << f.pair.j << ',' << to_string(f.kind) << ',' << format_number(f.coefficient) << ','
        << format_number(f.force) << '\n';
  }
}

void write_modal_csv(std::ostream& out, const ModalResult& result) {
  out << "mode,omega_rad_s,tag\n";
  for (Eigen::Index j = 0; j < result.frequencies.size(); ++j) {
    out << j + 1 << ',' << format_number(result.frequencies(j)) << ','
        << to_string(result.tags[static_cast<std::size_t>(j)]) << '\n';
  }
}

void write_trace(std::ostream& out, const TraceEntry& entry) {
  out << "node=" << entry.node << " depth=" << entry.depth << " active=" << entry.active_size
      << " min_eps=" << (std::isnan(entry.min_epsilon) ? std::string("nan") : format_number(entry.min_epsilon))
      << " action=" << entry.action << '\n';
}

void write_curves_csv(std::ostream& out, double rod_length, int samples) {
  if (samples < 2) throw Error(ErrorKind::invalid_argument, "samples must be at least 2");
  if (!(rod_length > 0.0)) throw Error(ErrorKind::invalid_argument, "rod length must be positive");
  out << "theta_deg,h,red,green,blue,d_red_dtheta,d_green_dtheta,feasible\n";
  for (int k = 0; k < samples; ++k) {
    const double deg = 360.0 * k / samples;
    const Angle theta = Angle::degrees(deg);
    out << format_number(deg) << ',';
    double h = 0.0;
    try {
      h = prism_height(theta, rod_length);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::infeasible_height) throw;
      out << ",,,,,,0\n";
      continue;
    }
    const auto c = cylinder_curves(theta, h);
    const auto g = curve_gradients(theta, h);
    out << format_number(h) << ',' << format_number(c.red) << ',' << format_number(c.green) << ','
        << format_number(c.blue) << ',' << format_number(g.red.d_theta) << ',' << format_number(g.green.d_theta)
        << ",1\n";
  }
}

}  // namespace tensegrity::io
