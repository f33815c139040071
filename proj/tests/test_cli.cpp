#include "cli.hpp"
#include "combsub/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace combsub;

namespace {

const std::string kSource = COMBSUB_SOURCE_DIR;

std::string fx(const std::string& name) { return kSource + "/fixtures/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const Run& r, const std::string& line) { return r.out.find(line + "\n") != std::string::npos; }

std::string temp(const std::string& name) {
  const auto dir = std::filesystem::path(COMBSUB_BINARY_DIR) / "cli-test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("validate and coverage") {
  const Run v = run({"validate", fx("jp")});
  CHECK(v.code == 0);
  CHECK(has(v, "valid: yes"));
  const Run c = run({"coverage", fx("jp"), fx("jp")});
  CHECK(c.code == 0);
  CHECK(has(c, "covered: yes"));
}

TEST_CASE("consistency verdicts and exit codes") {
  const Run bad = run({"consistency", fx("inconsistent"), "--pattern", fx("inconsistent")});
  CHECK(bad.code == 1);
  CHECK(has(bad, "image-vector: (0,-1)"));
  CHECK(run({"consistency", fx("tshape"), "--domino-complete"}).code == 0);
  CHECK(run({"consistency", fx("mini"), "--restricted", fx("surf")}).code == 0);
  // The sweep needs a domino-complete input.
  CHECK(run({"consistency", fx("jp"), "--domino-complete"}).code == 2);
}

TEST_CASE("overlap and structure") {
  CHECK(run({"overlap", fx("overlapping"), "--pattern", fx("overlapping")}).code == 1);
  CHECK(run({"overlap", fx("tshape"), "--global"}).code == 0);
  const Run s = run({"structure", fx("tshape")});
  CHECK(s.code == 0);
  CHECK(has(s, "alpha: (3,0)"));
  CHECK(has(s, "beta: (0,2)"));
}

TEST_CASE("apply writes the image") {
  const std::string out = temp("image.txt");
  const Run r = run({"apply", fx("jp"), fx("jp"), "--origin", "0,0", "--out", out});
  CHECK(r.code == 0);
  const Pattern image = parse_pattern(read_file(out));
  CHECK(image.size() == 9);
  CHECK(image == parse_patterns(read_file(fx("jp")))[1]);
  CHECK(run({"apply", fx("overlapping"), fx("overlapping")}).code == 1);
  CHECK(run({"apply", fx("jp"), fx("jp"), "--origin", "7,7"}).code == 2);
}

TEST_CASE("render and wang commands") {
  const std::string svg = temp("p.svg");
  CHECK(run({"render", fx("jp"), "--svg", svg, "--no-labels"}).code == 0);
  CHECK(read_file(svg).find("<svg") != std::string::npos);

  const std::string red = temp("red.txt");
  CHECK(run({"wang", "reduce", fx("uniform1"), "--out", red}).code == 0);
  CHECK(parse_substitution(read_file(red)).alphabet().size() == 4);
  CHECK(run({"wang", "reduce", fx("uniform1"), "--overlap", "u", "zz"}).code == 2);

  const Run c = run({"wang", "cycle", fx("uniform1"), "--max-cells", "4"});
  CHECK(c.code == 0);
  CHECK(has(c, "image-vector: (4,0)"));
  CHECK(run({"wang", "cycle", fx("uniform1"), "--max-cells", "3"}).code == 2);
}

TEST_CASE("corpus export") {
  const Run list = run({"corpus", "list"});
  CHECK(has(list, "example: jp"));
  CHECK(has(list, "fixture: surf"));
  const std::string dir = temp("corpus");
  CHECK(run({"corpus", "overlapfar(3)", "--out-dir", dir}).code == 0);
  const std::string text = read_file(dir + "/overlapfar-3");
  CHECK(parse_patterns(text).size() == 1);
  CHECK(run({"corpus", "nothing"}).code == 2);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run missing = run({"validate", fx("does-not-exist")});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
  const std::string broken = temp("broken.txt");
  write_file(broken, "alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (0,1 -> (1,0)\n");
  const Run parse = run({"structure", broken});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 3") != std::string::npos);
}
