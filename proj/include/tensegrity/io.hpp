#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tensegrity/formfind.hpp"
#include "tensegrity/geometry.hpp"
#include "tensegrity/modal.hpp"
#include "tensegrity/model.hpp"
#include "tensegrity/stability.hpp"

namespace tensegrity::io {

/// Parses a model document; unknown keys and malformed entries throw
/// parse_error.
Model model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const Model& model);

Model read_model(const std::string& path);
void write_model(const Model& model, const std::string& path);
Model parse_model(const std::string& text);
std::string dump_model(const Model& model);

nlohmann::json report_to_json(const StabilityReport& report, const Model& model);

void write_force_csv(std::ostream& out, const ForceTable& table);
void write_modal_csv(std::ostream& out, const ModalResult& result);
void write_trace(std::ostream& out, const TraceEntry& entry);

/// theta sampled on [0, 360) at `samples` rows, h solved from the rod
/// length. Infeasible rows keep theta and set feasible = 0.
void write_curves_csv(std::ostream& out, double rod_length, int samples);

/// 17 significant digits, shortest of fixed or scientific.
std::string format_number(double value);

}  // namespace tensegrity::io
