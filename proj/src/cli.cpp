#include "tensegrity/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "tensegrity/builders.hpp"
#include "tensegrity/error.hpp"
#include "tensegrity/formfind.hpp"
#include "tensegrity/io.hpp"
#include "tensegrity/modal.hpp"
#include "tensegrity/stability.hpp"

namespace tensegrity::cli {

namespace {

/// Writes to `path`, or to `fallback` when path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorKind::io_error, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Options {
  std::string builtin;
  double theta = 210.0;
  double rod_length = 4.0;
  std::string file;
  std::string output;
  bool require_stable = false;
  std::optional<double> max_length;
  std::optional<int> target;
  int solutions = 1;
  int node_limit = 64;
  bool pool_from_cables = false;
  std::string trace;
  int modes = 12;
  std::vector<int> fix;
  double prestress = 0.0;
  std::optional<double> kevlar_e;
  int samples = 360;
};

Model builtin_model(const Options& o) {
  if (o.builtin == "nine-segrity") return build_nine_segrity(Angle::degrees(o.theta), o.rod_length);
  if (o.builtin == "ten-segrity") return build_ten_segrity();
  if (o.builtin == "kite") return build_kite();
  if (o.builtin == "bead-plane") return build_bead_on_plane().model;
  throw Error(ErrorKind::unknown_builtin, "unknown builtin '" + o.builtin + "'");
}

int cmd_model(const Options& o, std::ostream& out) {
  const Model model = builtin_model(o);
  Sink sink(o.output, out);
  sink.get() << io::dump_model(model);
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Model model = io::read_model(o.file);
  const StabilityReport report = certify_stability(model);
  const std::string text = io::report_to_json(report, model).dump(2) + "\n";
  if (!o.output.empty()) {
    Sink sink(o.output, out);
    sink.get() << text;
  }
  out << text;
  return o.require_stable && report.verdict != Verdict::stable ? kExitNotStable : kExitOk;
}

int cmd_forces(const Options& o, std::ostream& out, std::ostream& err) {
  const Model model = io::read_model(o.file);
  std::optional<SelfStress> stress;
  try {
    stress = self_stress(model);
  } catch (const OverDeterminedStress& e) {
    err << "warning: " << e.what() << '\n';
  }
  if (!stress) err << "warning: no unique self-stress; force table is empty\n";
  Sink sink(o.output, out);
  io::write_force_csv(sink.get(), member_forces(stress, model));
  return kExitOk;
}

int cmd_formfind(const Options& o, std::ostream& out, std::ostream& err) {
  const Model model = io::read_model(o.file);
  CandidateSet candidates;
  if (o.pool_from_cables) {
    candidates.pairs.assign(model.cables().begin(), model.cables().end());
  } else {
    candidates = enumerate_candidates(model, o.max_length);
  }
  Sink trace(o.trace, err);
  FormFindOptions options;
  options.target_sigma = o.target;
  options.max_solutions = o.solutions;
  options.node_limit = o.node_limit;
  options.trace_sink = [&](const TraceEntry& e) { io::write_trace(trace.get(), e); };
  const FormFindResult result = formfind_search(model, candidates, options);
  const Model chosen = model.with_cables(result.solutions.front().cables);
  Sink sink(o.output, out);
  sink.get() << io::dump_model(chosen);
  for (std::size_t k = 1; k < result.solutions.size(); ++k) {
    err << "solution " << k + 1 << ':';
    for (const Pair& p : result.solutions[k].cables) err << " (" << p.i << ',' << p.j << ')';
    err << '\n';
  }
  return kExitOk;
}

int cmd_modal(const Options& o, std::ostream& out, std::ostream& err) {
  const Model model = io::read_model(o.file);
  MaterialMap materials = model.materials().value_or(MaterialMap::steel_and_kevlar());
  if (o.kevlar_e) {
    if (!(*o.kevlar_e > 0.0)) throw Error(ErrorKind::invalid_argument, "--kevlar-E must be positive");
    MaterialSpec cable = materials.cable.value_or(MaterialSpec::kevlar());
    cable.youngs_modulus = *o.kevlar_e;
    materials.cable = cable;
  }
  ModalOptions options;
  options.fixed_nodes = o.fix.empty() ? std::vector<int>(model.anchors().begin(), model.anchors().end()) : o.fix;
  options.prestress_scale = o.prestress;
  options.count = o.modes;
  const ModalResult result = modal_analysis(model, materials, options);
  if (result.indefinite) {
    err << "warning: indefinite stiffness, lowest eigenvalue " << io::format_number(result.min_eigenvalue) << '\n';
  }
  Sink sink(o.output, out);
  io::write_modal_csv(sink.get(), result);
  return kExitOk;
}

int cmd_curves(const Options& o, std::ostream& out) {
  Sink sink(o.output, out);
  io::write_curves_csv(sink.get(), o.rod_length, o.samples);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Linearization stability, forces, form-finding and modal analysis of tensegrities", "tensegrity"};
  app.require_subcommand(1, 1);

  auto* model = app.add_subcommand("model", "Write a builtin model file");
  model->add_option("name", o.builtin, "nine-segrity, ten-segrity, kite or bead-plane")->required();
  model->add_option("--theta", o.theta, "Twist angle in degrees (nine-segrity)")->capture_default_str();
  model->add_option("--rod-length", o.rod_length, "Rod length (nine-segrity)")->capture_default_str();
  model->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Certify linearization stability");
  analyze->add_option("file", o.file, "Model file")->required();
  analyze->add_flag("--require-stable", o.require_stable, "Exit 1 unless the verdict is stable");
  analyze->add_option("-o,--output", o.output, "Also write the report to this file");

  auto* forces = app.add_subcommand("forces", "Member forces of the self-stress as CSV");
  forces->add_option("file", o.file, "Model file")->required();
  forces->add_option("-o,--output", o.output, "Output CSV (default stdout)");

  auto* formfind = app.add_subcommand("formfind", "Search for a positive-stress cable set");
  formfind->add_option("file", o.file, "Model file (rods and points are used)")->required();
  formfind->add_option("--max-length", o.max_length, "Only consider pairs no longer than this");
  formfind->add_option("--target", o.target, "Number of cables (default 5(n-1), 3n-2 in 2D)");
  formfind->add_option("--solutions", o.solutions, "Stop after this many accepted sets")->capture_default_str();
  formfind->add_option("--node-limit", o.node_limit, "Maximum search nodes")->capture_default_str();
  formfind->add_flag("--pool-from-cables", o.pool_from_cables, "Use the model's cables as the candidate pool");
  formfind->add_option("-o,--output", o.output, "Chosen model file (default stdout)");
  formfind->add_option("--trace", o.trace, "Search trace file (default stderr)");

  auto* modal = app.add_subcommand("modal", "Lowest natural frequencies as CSV");
  modal->add_option("file", o.file, "Model file")->required();
  modal->add_option("--modes", o.modes, "Number of modes")->capture_default_str();
  modal->add_option("--fix", o.fix, "Fixed node indices (default: model anchors)")->delimiter(',');
  modal->add_option("--prestress", o.prestress, "Self-stress scale for the geometric stiffness")->capture_default_str();
  modal->add_option("--kevlar-E", o.kevlar_e, "Cable Young's modulus in Pa");
  modal->add_option("-o,--output", o.output, "Output CSV (default stdout)");

  auto* curves = app.add_subcommand("curves", "Nine-segrity constraint curves over theta as CSV");
  curves->add_option("--rod-length", o.rod_length, "Rod length")->required();
  curves->add_option("--samples", o.samples, "Rows over [0, 360) degrees")->capture_default_str();
  curves->add_option("-o,--output", o.output, "Output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (model->parsed()) return cmd_model(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (forces->parsed()) return cmd_forces(o, out, err);
    if (formfind->parsed()) return cmd_formfind(o, out, err);
    if (modal->parsed()) return cmd_modal(o, out, err);
    if (curves->parsed()) return cmd_curves(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::exhausted ? kExitNotStable : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace tensegrity::cli
