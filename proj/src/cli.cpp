#include "titscone/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "titscone/bh.hpp"
#include "titscone/garside.hpp"
#include "titscone/svg.hpp"
#include "titscone/verify.hpp"

namespace titscone {

namespace {

unsigned thread_count(const RunConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("TITSCONE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Prepared {
  std::shared_ptr<const CoxeterContext> ctx;
  NodeSet J;
};

Prepared prepare(const RunConfig& config) {
  Prepared p;
  p.ctx = CoxeterContext::make(CoxeterDiagram::parse(config.diagram_json));
  p.J = p.ctx->diagram().parse_node_list(config.j_nodes);
  return p;
}

int map_exception(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const RadiusRequiredError*>(&e)) return kExitRadiusRequired;
  if (dynamic_cast<const NotFiniteTypeError*>(&e)) return kExitNotFiniteType;
  if (dynamic_cast<const DimensionError*>(&e)) return kExitDimension;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  return kExitValidation;
}

nlohmann::json garside_json(const CoxeterDiagram& diagram, const GarsideElement& g) {
  auto factors = nlohmann::json::array();
  for (const auto& f : g.factors()) {
    auto arr = nlohmann::json::array();
    for (unsigned i : f.word()) arr.push_back(diagram.name(i));
    factors.push_back(std::move(arr));
  }
  return factors;
}

nlohmann::json artin_json(const CoxeterDiagram& diagram, const ArtinElement& a) {
  nlohmann::json j;
  j["delta_power"] = a.delta_power();
  j["positive"] = garside_json(diagram, a.positive_part());
  return j;
}

}  // namespace

int cmd_chambers(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Prepared p = prepare(config);
    ArrangementGraph graph = enumerate_chambers(p.ctx, p.J, config.radius);
    if (config.format == "dot") out << graph.to_dot(p.ctx->diagram());
    else if (config.format == "json") out << graph.to_json(p.ctx->diagram()) << "\n";
    else throw ValidationError("chambers: unsupported format " + config.format);
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(err, e);
  }
}

int cmd_presentation(const RunConfig& config, const std::string& target, std::ostream& out,
                     std::ostream& err) {
  try {
    Prepared p = prepare(config);
    const CoxeterDiagram& diagram = p.ctx->diagram();
    ArrangementGraph graph = enumerate_chambers(p.ctx, p.J, config.radius);

    if (target == "coxeter") {
      auto pres = bh_presentation(graph);
      auto vg = vertex_group_presentation(pres);
      if (config.format == "gap") {
        out << vg.to_gap();
        return kExitOk;
      }
      nlohmann::json j;
      j["groupoid"] = nlohmann::json::parse(pres.to_json(diagram));
      j["vertex_group"] = nlohmann::json::parse(vg.to_json());
      j["vertex_group_gap"] = vg.to_gap();
      if (p.ctx->is_finite_type()) {
        if (auto order = coset_enumeration_order(vg.finite_presentation()))
          j["vertex_group_order"] = *order;
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (target == "artin") {
      auto ribbon = ribbon_presentation(graph);  // throws NotFiniteTypeError on bad input
      auto data = vertex_group_data(ribbon);
      auto values = ribbon_vertex_values(ribbon, data);
      if (config.format == "gap") {
        out << data.group.to_gap();
        return kExitOk;
      }
      nlohmann::json j;
      j["groupoid"] = nlohmann::json::parse(ribbon.to_json(diagram));
      j["vertex_group"] = nlohmann::json::parse(data.group.to_json());
      j["vertex_group_gap"] = data.group.to_gap();
      auto vals = nlohmann::json::array();
      for (const auto& v : values) vals.push_back(artin_json(diagram, v));
      j["vertex_group_values"] = std::move(vals);
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (target == "kernel") {
      auto ribbon = ribbon_presentation(graph);
      auto kernel = kernel_presentation(ribbon);
      if (config.format == "gap") {
        out << kernel.presentation.to_gap();
        return kExitOk;
      }
      nlohmann::json j;
      j["presentation"] = nlohmann::json::parse(kernel.presentation.to_json());
      j["presentation_gap"] = kernel.presentation.to_gap();
      auto vals = nlohmann::json::array();
      for (const auto& v : kernel.values) vals.push_back(artin_json(diagram, v));
      j["generator_values"] = std::move(vals);
      auto trans = nlohmann::json::array();
      for (const auto& t : kernel.transversal) {
        auto arr = nlohmann::json::array();
        for (unsigned i : t.word()) arr.push_back(diagram.name(i));
        trans.push_back(std::move(arr));
      }
      j["transversal"] = std::move(trans);
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    throw ValidationError("presentation: unknown target " + target);
  } catch (const std::exception& e) {
    return map_exception(err, e);
  }
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Prepared p = prepare(config);
    ArrangementGraph graph = enumerate_chambers(p.ctx, p.J, config.radius);
    VerifyOptions opts;
    opts.seed = config.seed;
    opts.threads = thread_count(config);

    CheckReport report;
    if (config.suite == "all") report = verify_all(graph, opts);
    else if (config.suite == "arrangement") report = verify_arrangement(graph, opts);
    else if (config.suite == "groupoid") report = verify_groupoid(graph, opts);
    else if (config.suite == "garside") report = verify_garside(graph, opts);
    else throw ValidationError("verify: unknown suite " + config.suite);

    out << "titscone verify report\n";
    out << "diagram: " << p.ctx->diagram().json() << "\n";
    out << "J: " << p.ctx->diagram().set_to_string(p.J) << "\n";
    out << "radius: " << (config.radius ? std::to_string(*config.radius) : std::string("none"))
        << "\n";
    out << "suite: " << config.suite << "\n";
    out << "seed: " << config.seed << "\n";
    out << "chambers: " << graph.size() << "\n";
    out << "saturated: " << (graph.saturated() ? "true" : "false") << "\n";
    unsigned failed = 0;
    for (const auto& item : report.items) {
      out << "check " << item.name << ": " << (item.pass ? "PASS" : "FAIL");
      if (!item.witness.empty()) out << " (" << item.witness << ")";
      out << "\n";
      if (!item.pass) ++failed;
    }
    out << "result: " << (failed == 0 ? "PASS" : "FAIL") << " (" << report.items.size()
        << " checks, " << failed << " failed)\n";
    return failed == 0 ? kExitOk : kExitVerifyFailed;
  } catch (const std::exception& e) {
    return map_exception(err, e);
  }
}

int cmd_svg(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Prepared p = prepare(config);
    ArrangementGraph graph = enumerate_chambers(p.ctx, p.J, config.radius);
    out << render_svg(graph);
    return kExitOk;
  } catch (const std::exception& e) {
    return map_exception(err, e);
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"titscone: Tits cone intersections, Brink-Howlett groupoids, and "
               "normalisers of parabolic subgroups"};
  app.require_subcommand(1);

  std::string diagram_path;
  RunConfig config;
  std::string out_path;
  int radius_flag = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--diagram", diagram_path, "diagram JSON file")->required();
    cmd->add_option("--J", config.j_nodes, "comma-separated node subset");
    cmd->add_option("--radius", radius_flag, "BFS wall-crossing radius (non-finite type)");
    cmd->add_option("--seed", config.seed, "seed for randomized property checks");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  auto* chambers = app.add_subcommand("chambers", "enumerate the chamber graph");
  add_common(chambers);
  chambers->add_option("--format", config.format, "json | dot");

  auto* presentation = app.add_subcommand("presentation", "emit groupoid presentations");
  std::string target = "coxeter";
  presentation->add_option("target", target, "coxeter | artin | kernel")->required();
  add_common(presentation);
  presentation->add_option("--format", config.format, "json | gap");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", config.suite, "all | arrangement | groupoid | garside");

  auto* svg = app.add_subcommand("svg", "render a 2-dimensional arrangement");
  add_common(svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::ifstream in(diagram_path);
  if (!in) {
    std::cerr << "error: cannot read diagram file " << diagram_path << "\n";
    return kExitValidation;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  config.diagram_json = buffer.str();
  if (radius_flag >= 0) config.radius = static_cast<unsigned>(radius_flag);

  std::ostringstream out;
  int code = 0;
  if (chambers->parsed()) code = cmd_chambers(config, out, std::cerr);
  else if (presentation->parsed()) code = cmd_presentation(config, target, out, std::cerr);
  else if (verify->parsed()) code = cmd_verify(config, out, std::cerr);
  else if (svg->parsed()) {
    if (config.format == "json") config.format = "svg";
    code = cmd_svg(config, out, std::cerr);
  }

  if (!out_path.empty()) {
    std::ofstream of(out_path);
    if (!of) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitValidation;
    }
    of << out.str();
  } else {
    std::cout << out.str();
  }
  return code;
}

}  // namespace titscone
