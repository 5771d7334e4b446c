// wcop: command-line front end for the weighted composition operator lab.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wcop/analysis.hpp"
#include "wcop/errors.hpp"
#include "wcop/json_writer.hpp"
#include "wcop/spec_io.hpp"

namespace {

struct Options {
  std::string h = R"({"type":"series","coeffs":[[1,0]]})";
  std::string phi = R"({"type":"monomial_power","n":1})";
  std::string space = "hardy";
  double alpha = 0.0;
  int trunc = 1024;
  int grid_levels = 10;
  double p = 1.0;
  std::vector<double> zeta;
  std::vector<double> deltas;
  std::size_t samples = std::size_t{1} << 20;
  std::vector<std::string> criteria;
  std::string out = "-";
  std::string profiles_out;
  std::string thresholds;
  std::optional<double> norm_bound;
  double delta = 0.5;
  std::optional<double> c_delta;
  std::optional<double> tail_bound;
  bool derivative_kernel = false;
  bool timings = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--h", o.h, "weight h: spec file or inline JSON");
  app->add_option("--phi", o.phi, "symbol phi: spec file or inline JSON");
  app->add_option("--space", o.space, "hardy | bergman")
      ->check(CLI::IsMember({"hardy", "bergman"}));
  app->add_option("--alpha", o.alpha, "Bergman weight exponent, > -1");
  app->add_option("--trunc", o.trunc, "truncation order N (<= 4096)");
  app->add_option("--grid-levels", o.grid_levels, "grid levels J (<= 14)");
  app->add_option("--p", o.p, "Schatten exponent, >= 1");
  app->add_option("--zeta", o.zeta, "boundary angles in radians")->delimiter(',');
  app->add_option("--criteria", o.criteria, "criteria ids or aliases")->delimiter(',');
  app->add_option("--out", o.out, "report path, - for stdout");
  app->add_option("--profiles-out", o.profiles_out, "directory for per-criterion CSV profiles");
  app->add_option("--thresholds", o.thresholds, "JSON file overriding evidence thresholds");
  app->add_flag("--timings", o.timings, "record wall-clock time per stage");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw wcop::IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

wcop::RunConfig make_config(const std::string& command, const Options& o) {
  wcop::RunConfig c;
  c.command = command;
  c.h = wcop::load_spec(o.h);
  c.phi = wcop::load_spec(o.phi);
  c.space = o.space == "bergman" ? wcop::SpaceSpec::bergman(o.alpha) : wcop::SpaceSpec::hardy();
  c.trunc = o.trunc;
  c.grid_levels = o.grid_levels;
  c.p = o.p;
  if (!o.zeta.empty()) c.zeta = o.zeta;
  if (!o.deltas.empty()) c.deltas = o.deltas;
  c.samples = o.samples;
  c.criteria = o.criteria;
  c.norm_bound = o.norm_bound;
  c.adelta_delta = o.delta;
  c.c_delta = o.c_delta;
  c.tail_bound = o.tail_bound;
  c.bergman_derivative_kernel = o.derivative_kernel;
  c.timings = o.timings;
  if (!o.thresholds.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.thresholds));
    } catch (const nlohmann::json::parse_error& e) {
      throw wcop::ParseError(std::string("thresholds: ") + e.what());
    }
    c.thresholds = wcop::Thresholds::from_json(j);
  }
  return c;
}

int fail(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json e;
  e["error"]["kind"] = kind;
  e["error"]["message"] = message;
  std::cerr << wcop::write_json(e, 0) << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted composition operators on Hardy and Bergman spaces"};
  // --h is the weight option, so help is long-form only
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", wcop::version());
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "kernel, compactness, Schatten and pointwise checks");
  add_common(analyze, o);
  analyze->add_option("--norm-bound", o.norm_bound, "claimed bound for ||W|| in the pointwise check");
  analyze->add_option("--delta", o.delta, "A_delta level for adelta_bound_check");
  analyze->add_option("--c-delta", o.c_delta, "claimed sup |h| on A_delta");

  auto* boundary = app.add_subcommand("boundary", "Julia-Caratheodory probes and Ahern-Clark sums");
  add_common(boundary, o);
  boundary->add_option("--tail-bound", o.tail_bound, "bound on the omitted Ahern-Clark terms");

  auto* schatten = app.add_subcommand("schatten", "Schatten norms and the kernel integral test");
  add_common(schatten, o);
  schatten->add_flag("--derivative-kernel", o.derivative_kernel,
                     "Bergman integral with the derivative kernel");

  auto* carleson = app.add_subcommand("carleson", "Carleson box measures of the pullback measure");
  add_common(carleson, o);
  carleson->add_option("--deltas", o.deltas, "box sizes in (0, 2]")->delimiter(',');
  carleson->add_option("--samples", o.samples, "boundary samples (Hardy)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto config = make_config(command, o);
    const auto report = wcop::analyze(config);
    std::optional<std::filesystem::path> profiles;
    if (!o.profiles_out.empty()) profiles = o.profiles_out;
    wcop::emit(report, o.out, profiles);
  } catch (const wcop::Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
