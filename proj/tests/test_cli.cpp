#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "titscone/bh.hpp"
#include "titscone/cli.hpp"
#include "titscone/svg.hpp"
#include "titscone/verify.hpp"

using namespace titscone;

namespace {

const char* kA2 = R"({"nodes":["1","2"],"edges":[["1","2",3]]})";
const char* kA3 = R"({"nodes":["1","2","3"],"edges":[["1","2",3],["2","3",3]]})";
const char* kDinf = R"({"nodes":["1","2"],"edges":[["1","2","inf"]]})";
const char* kAffineA2 = R"({"nodes":["1","2","3"],"edges":[["1","2",3],["2","3",3],["1","3",3]]})";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run chambers(RunConfig config) {
  std::ostringstream out, err;
  int code = cmd_chambers(config, out, err);
  return {code, out.str(), err.str()};
}

Run verify(RunConfig config) {
  std::ostringstream out, err;
  int code = cmd_verify(config, out, err);
  return {code, out.str(), err.str()};
}

Run presentation(RunConfig config, const std::string& target) {
  std::ostringstream out, err;
  int code = cmd_presentation(config, target, out, err);
  return {code, out.str(), err.str()};
}

Run svg(RunConfig config) {
  std::ostringstream out, err;
  int code = cmd_svg(config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cmd_chambers emits JSON that round-trips") {
  RunConfig config;
  config.diagram_json = kA3;
  config.j_nodes = "2";
  Run r = chambers(config);
  REQUIRE(r.code == kExitOk);
  ArrangementGraph back = ArrangementGraph::from_json(r.out);
  CHECK(back.size() == 6);
  // canonical ordering makes re-emission byte-identical
  std::string again = back.to_json(back.context().diagram()) + "\n";
  CHECK(again == r.out);

  config.format = "dot";
  Run dot = chambers(config);
  CHECK(dot.code == kExitOk);
  CHECK(dot.out.find("digraph") == 0);
}

TEST_CASE("cmd_chambers exit codes") {
  RunConfig config;
  config.diagram_json = "{bad json";
  CHECK(chambers(config).code == kExitValidation);

  config.diagram_json = kDinf;
  CHECK(chambers(config).code == kExitRadiusRequired);
  config.radius = 3;
  Run r = chambers(config);
  CHECK(r.code == kExitOk);

  config.diagram_json = kA2;
  config.j_nodes = "7";
  CHECK(chambers(config).code == kExitValidation);
}

TEST_CASE("cmd_presentation targets and exit codes") {
  RunConfig config;
  config.diagram_json = kA3;
  config.j_nodes = "2";
  Run cox = presentation(config, "coxeter");
  REQUIRE(cox.code == kExitOk);
  CHECK(cox.out.find("\"vertex_group_order\": 2") != std::string::npos);

  Run artin = presentation(config, "artin");
  REQUIRE(artin.code == kExitOk);
  CHECK(artin.out.find("\"kind\": \"artin\"") != std::string::npos);

  Run kernel = presentation(config, "kernel");
  REQUIRE(kernel.code == kExitOk);
  CHECK(kernel.out.find("generator_values") != std::string::npos);

  config.format = "gap";
  Run gap = presentation(config, "coxeter");
  CHECK(gap.out.find("FreeGroup") != std::string::npos);

  // artin and kernel require finite type: exit 4
  RunConfig aff;
  aff.diagram_json = kAffineA2;
  aff.j_nodes = "1";
  aff.radius = 3;
  CHECK(presentation(aff, "artin").code == kExitNotFiniteType);
  CHECK(presentation(aff, "kernel").code == kExitNotFiniteType);
  // coxeter on a ball works and reports incompleteness state
  Run cox_aff = presentation(aff, "coxeter");
  CHECK(cox_aff.code == kExitOk);
  CHECK(cox_aff.out.find("\"complete\": false") != std::string::npos);

  CHECK(presentation(config, "nonsense").code == kExitValidation);
}

TEST_CASE("cmd_verify passes on A2 examples and fails on corrupted input") {
  RunConfig config;
  config.diagram_json = kA2;
  config.j_nodes = "1";
  Run r = verify(config);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("result: PASS") != std::string::npos);

  // negative test: corrupt one edge element in serialized form and re-verify
  RunConfig chambers_config;
  chambers_config.diagram_json = kA3;
  chambers_config.j_nodes = "2";
  Run emitted = chambers(chambers_config);
  REQUIRE(emitted.code == kExitOk);
  std::string tampered = emitted.out;
  // the edge payloads are two-letter words; swap one to a wrong word
  auto pos = tampered.find("\"v\": [\n        \"1\",\n        \"2\"\n      ]");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, std::string("\"v\": [\n        \"1\",\n        \"2\"\n      ]").size(),
                   "\"v\": [\n        \"2\",\n        \"1\"\n      ]");
  ArrangementGraph bad = ArrangementGraph::from_json(tampered);
  auto report = verify_arrangement(bad);
  CHECK_FALSE(report.ok());
  bool has_witness = false;
  for (const auto& item : report.items)
    if (!item.pass && !item.witness.empty()) has_witness = true;
  CHECK(has_witness);
}

TEST_CASE("verify reports are byte-identical across thread counts") {
  RunConfig config;
  config.diagram_json = kA3;
  config.j_nodes = "2";
  config.threads = 1;
  Run one = verify(config);
  config.threads = 4;
  Run four = verify(config);
  CHECK(one.code == kExitOk);
  CHECK(one.out == four.out);

  // also via the environment variable
  setenv("TITSCONE_THREADS", "3", 1);
  config.threads = 0;
  Run env = verify(config);
  unsetenv("TITSCONE_THREADS");
  CHECK(env.out == one.out);
}

TEST_CASE("cmd_svg draws 2-dimensional arrangements only") {
  RunConfig config;
  config.diagram_json = kA3;
  config.j_nodes = "2";
  Run r = svg(config);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("<svg") == 0);
  // 3 hyperplane lines and 6 chamber labels
  std::size_t lines = 0, texts = 0, pos = 0;
  while ((pos = r.out.find("<line", pos)) != std::string::npos) ++lines, ++pos;
  pos = 0;
  while ((pos = r.out.find("<text", pos)) != std::string::npos) ++texts, ++pos;
  CHECK(lines == 3);
  CHECK(texts == 6);

  config.j_nodes = "";
  CHECK(svg(config).code == kExitDimension);

  // A2 at J = empty: the classical picture, 3 lines and 6 sectors
  RunConfig a2;
  a2.diagram_json = kA2;
  Run classic = svg(a2);
  REQUIRE(classic.code == kExitOk);
  lines = texts = 0;
  pos = 0;
  while ((pos = classic.out.find("<line", pos)) != std::string::npos) ++lines, ++pos;
  pos = 0;
  while ((pos = classic.out.find("<text", pos)) != std::string::npos) ++texts, ++pos;
  CHECK(lines == 3);
  CHECK(texts == 6);

  // partial fan for the affine ball, with uncovered region: fewer wedges
  RunConfig aff;
  aff.diagram_json = kAffineA2;
  aff.j_nodes = "1";
  aff.radius = 5;
  Run fan = svg(aff);
  REQUIRE(fan.code == kExitOk);
  CHECK(fan.out.find("<svg") == 0);
  std::size_t wedges = 0;
  pos = 0;
  while ((pos = fan.out.find("<path", pos)) != std::string::npos) ++wedges, ++pos;
  CHECK(wedges == 11);  // 2*5 + 1 chambers in the ball
}

TEST_CASE("run_cli end to end") {
  // write a diagram file and drive the argv interface
  std::string path = "/tmp/titscone_test_a2.json";
  {
    std::ofstream f(path);
    f << kA2;
  }
  const char* argv1[] = {"titscone", "chambers", "--diagram", path.c_str(), "--J", "1"};
  CHECK(run_cli(6, argv1) == kExitOk);
  const char* argv2[] = {"titscone", "verify", "--diagram", path.c_str(), "--suite", "garside"};
  CHECK(run_cli(6, argv2) == kExitOk);
}
