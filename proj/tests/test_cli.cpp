#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "qlp/example31.hpp"
#include "qlp/json_io.hpp"

using namespace qlp;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("qlp-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch() / ("out" + std::to_string(counter));
  const fs::path err = scratch() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(QLP_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(out.string());
  r.err = read_text_file(err.string());
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(QLP_FIXTURE_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("the worked example verifies end to end") {
  auto r = run("verify example31");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "F[x1,x2,x3](1,1,1) = 3/10"));
  CHECK(contains(r.out, "nu(a) = 3/10"));
  CHECK(contains(r.out, "nu(b) = 2/5"));
  CHECK(contains(r.out, "nu(c) = 1/2"));
  CHECK(contains(r.out, "classical model"));

  auto raw = run("verify example31 --raw");
  CHECK(raw.exit_code == 1);
  CHECK(contains(raw.out + raw.err, "first failing check: completion"));

  auto skipped = run("verify example31 --skip-classical");
  CHECK(skipped.exit_code == 0);
  CHECK(contains(skipped.out, "skipped"));
}

TEST_CASE("lattice checking distinguishes failure kinds") {
  CHECK(run("lattice check mo:3").exit_code == 0);
  CHECK(run("lattice check boolean:4").exit_code == 0);

  auto broken = run("lattice check " + fixture("broken.json"));
  CHECK(broken.exit_code == 1);
  CHECK(contains(broken.out, "axiom.ii"));

  CHECK(run("lattice check /nonexistent/missing.json").exit_code == 2);
  CHECK(run("lattice check mo:x").exit_code == 2);
  CHECK(run("lattice check mo:99999").exit_code == 2);
}

TEST_CASE("lattice make writes a loadable document") {
  const fs::path dir = scratch() / "made";
  fs::create_directories(dir);
  auto r = run("lattice make boolean:2 --out " + dir.string());
  CHECK(r.exit_code == 0);
  LatticePtr L = parse_lattice(read_text_file((dir / "lattice.json").string()));
  CHECK(L->same_structure(*make_boolean(2)));

  auto piped = run("lattice make mo:3");
  CHECK(piped.exit_code == 0);
  CHECK(parse_lattice(piped.out)->same_structure(*make_mo(3)));
}

TEST_CASE("completion succeeds on the fixed listing and fails on the raw one") {
  auto ok = run("smap complete " + fixture("example31_partial.json") +
                " --format json");
  CHECK(ok.exit_code == 0);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc.at("status") == "complete");
  CHECK(doc.at("table").at("entries").size() == 512);

  auto bad = run("smap complete " + fixture("example31_raw.json"));
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.out, "p(c,a',c')"));
  CHECK(contains(bad.out, "derivation"));
}

TEST_CASE("validation and propositions run on a full table file") {
  auto c = complete(example31::partial(false));
  REQUIRE(c.status == Completion::Status::complete);
  const fs::path table = scratch() / "table.json";
  write_text_file(table.string(), smap_json(*c.table));

  CHECK(run("smap validate " + table.string()).exit_code == 0);
  auto props = run("smap props " + table.string());
  CHECK(props.exit_code == 0);
  CHECK(contains(props.out, "prop.5.permutation-class"));
}

TEST_CASE("synthesis takes both arity spellings and exits by outcome") {
  auto ok = run("smap synth mo:3 arity=3 " + fixture("constraints.json"));
  CHECK(ok.exit_code == 0);

  auto flag = run("smap synth mo:3 " + fixture("constraints.json") +
                  " --arity 3");
  CHECK(flag.exit_code == 0);

  auto bad = run("smap synth mo:3 arity=2 " +
                 fixture("constraints_infeasible.json"));
  CHECK(bad.exit_code == 1);
  CHECK(contains(bad.out, "1/10 > 0"));
}

TEST_CASE("distribution values come out in the requested order") {
  auto c = complete(example31::partial(false));
  const fs::path table = scratch() / "dist-table.json";
  write_text_file(table.string(), smap_json(*c.table));
  const std::string common =
      table.string() + " " + fixture("observables_x123.json");

  auto plain = run("dist F " + common + " --at 1,1,1");
  CHECK(plain.exit_code == 0);
  CHECK(contains(plain.out, "3/10"));

  auto swapped = run("dist F " + common + " --at 1,1,1 --order x2,x1,x3");
  CHECK(swapped.exit_code == 0);
  CHECK(contains(swapped.out, "1/5"));

  auto reversed = run("dist F " + common + " --at 1,1,1 --order x3,x2,x1");
  CHECK(reversed.exit_code == 0);
  CHECK(contains(reversed.out, "29/100"));

  auto margin = run("dist marginal " + common + " --at 0,1,1 --drop 1");
  CHECK(margin.exit_code == 0);
  CHECK(contains(margin.out, "3/10"));
  auto all_dropped = run("dist marginal " + common + " --at 0,0,0 --drop 1,2,3");
  CHECK(all_dropped.exit_code == 0);
  CHECK(contains(all_dropped.out, "F = 1"));

  auto unknown = run("dist F " + common + " --at 1,1,1 --order x9,x1,x2");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("commutativity and the classical model report through the CLI") {
  auto c = complete(example31::partial(false));
  const fs::path table = scratch() / "comm-table.json";
  write_text_file(table.string(), smap_json(*c.table));
  const std::string common =
      table.string() + " " + fixture("observables_x123.json");

  auto comm = run("dist commutativity " + common);
  CHECK(comm.exit_code == 1);
  CHECK(contains(comm.out, "non-commutative"));
  CHECK(contains(comm.out, "32"));

  auto model = run("dist classical " + common + " --format json");
  CHECK(model.exit_code == 0);
  const auto doc = nlohmann::json::parse(model.out);
  CHECK(doc.at("outcomes").size() == 8);
  CHECK(doc.at("masses").at(0) == "3/10");
  CHECK(doc.at("verification").at("ok").get<bool>());
}

TEST_CASE("structural problems exit 2 and never crash") {
  const fs::path junk = scratch() / "junk.json";
  write_text_file(junk.string(), "{not json");
  CHECK(run("smap complete " + junk.string()).exit_code == 2);
  CHECK(run("smap validate " + junk.string()).exit_code == 2);
  CHECK(run("dist F " + junk.string() + " " + junk.string() + " --at 1")
            .exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("bogus").exit_code == 2);
  CHECK(run("smap").exit_code == 2);
  CHECK(run("dist F").exit_code == 2);
}

TEST_CASE("json output is byte-stable across runs") {
  const std::string args =
      "smap complete " + fixture("example31_partial.json") + " --format json";
  auto first = run(args);
  auto second = run(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}
