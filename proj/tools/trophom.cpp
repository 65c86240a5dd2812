// Command-line front end: parse a problem file, run the requested pipeline
// stage, and emit a machine-readable report.
//
// Exit codes: 0 all paths succeeded, 2 partial or no success, 3 input error,
// 4 genericity failure after retries.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "trophom/io.hpp"

using namespace trophom;

int main(int argc, char** argv) {
  CLI::App app{"trophom: tropical homotopies for parametrized polynomial systems"};
  app.require_subcommand(1);

  std::string file, route_flag = "", valuation_flag = "", format = "json";
  uint64_t seed = 0;
  bool seed_set = false, torus_only = false, elide = false;
  int threads = 0;
  double epsilon = -1, tol = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem JSON file")->required();
    sub->add_option("--route", route_flag, "auto|vertical|transverse|relaxed|bkk");
    sub->add_option("--seed", seed, "valuation seed")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--valuation", valuation_flag, "comma-separated pinned valuations");
    sub->add_option("--threads", threads, "tracking worker count");
    sub->add_option("--epsilon", epsilon, "offset start parameter");
    sub->add_option("--tol", tol, "endpoint residual tolerance");
    sub->add_option("--format", format, "json|text");
    sub->add_flag("--torus-only", torus_only, "drop constant terms first");
    sub->add_flag("--elide", elide, "elide single-monomial modification variables");
  };

  CLI::App* c_solve = app.add_subcommand("solve", "full pipeline: points, starts, tracking");
  CLI::App* c_count = app.add_subcommand("root-count", "generic root count");
  CLI::App* c_trop = app.add_subcommand("tropicalize", "tropical points with multiplicities");
  CLI::App* c_mv = app.add_subcommand("mixed-volume", "mixed volume of the route's system");
  CLI::App* c_mc = app.add_subcommand("mixed-cells", "mixed cells at the given valuation");
  for (CLI::App* sub : {c_solve, c_count, c_trop, c_mv, c_mc}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  Command cmd = Command::solve;
  if (c_count->parsed()) cmd = Command::root_count;
  if (c_trop->parsed()) cmd = Command::tropicalize;
  if (c_mv->parsed()) cmd = Command::mixed_volume_cmd;
  if (c_mc->parsed()) cmd = Command::mixed_cells_cmd;

  try {
    std::ifstream in(file);
    if (!in) fail("SchemaError", "cannot open '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ProblemSpec spec = parse_input(buf.str());

    if (!route_flag.empty()) {
      if (route_flag == "auto") spec.route = Route::automatic;
      else if (route_flag == "vertical") spec.route = Route::vertical;
      else if (route_flag == "transverse") spec.route = Route::transverse;
      else if (route_flag == "relaxed") spec.route = Route::relaxed;
      else if (route_flag == "bkk") spec.route = Route::bkk;
      else fail("SchemaError", "unknown route '" + route_flag + "'");
    }
    if (seed_set) spec.seed = seed;
    if (!valuation_flag.empty()) {
      std::vector<Rational> v;
      std::stringstream ss(valuation_flag);
      std::string tok;
      while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok));
      spec.valuation = std::move(v);
    }
    if (threads > 0) spec.track.threads = threads;
    if (epsilon > 0) spec.track.epsilon_offset = epsilon;
    if (tol > 0) spec.track.endpoint_residual_tol = tol;
    if (torus_only) spec.torus_only = true;
    if (elide) spec.elide = true;

    Report rep = run_pipeline(spec, cmd);
    std::cout << emit_output(rep, format);
    return rep.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind == "SchemaError" || e.kind == "DimensionError") return 3;
    if (e.kind == "GenericityFailure") {
      std::cerr << "hint: redraw with a different --seed or unpin --valuation\n";
      return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
