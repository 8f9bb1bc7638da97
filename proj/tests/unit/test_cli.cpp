#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "scenred/cli.hpp"
#include "scenred/io.hpp"

using namespace scenred;
namespace fs = std::filesystem;

namespace {
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

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "scenred_unit_cli";
  fs::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("bounds prints the report") {
  const auto r = run({"bounds", "--n", "100", "--m", "10", "--l", "2"});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["c_upper"].get<double>() == doctest::Approx(0.9534626));
  CHECK(run({"bounds", "--n", "100", "--m", "10", "--l", "2"}).out == r.out);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"bounds", "--n", "4"}).code == kExitUsage);
  CHECK(run({"bounds", "--n", "4", "--m", "2", "--l", "3"}).code == kExitUsage);
  CHECK(run({"gen", "--family", "kappa1"}).code == kExitUsage);
  const auto r = run({"reduce", "--input", "x.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find('\n') == r.err.size() - 1);
}

TEST_CASE("validation errors") {
  const fs::path dir = scratch();
  write_text((dir / "bad.json").string(), R"({"dim":1,"points":[[0],[1]],"weights":[0.5,0.6]})");
  for (const char* name : {"bad.json", "missing.json"}) {
    const auto r = run({"reduce", "--input", (dir / name).string(), "--m", "1", "--algo",
                        "dupacova"});
    CHECK(r.code == kExitInvalid);
  }
  CHECK(run({"bounds", "--n", "3", "--m", "4", "--l", "2"}).code == kExitInvalid);
}

TEST_CASE("generate, reduce and compare") {
  const fs::path dir = scratch();
  const std::string k = (dir / "k.json").string();
  REQUIRE(run({"gen", "--family", "kappa1", "--n", "4", "--m", "1", "--out", k}).code == kExitOk);
  const auto r = run({"reduce", "--input", k, "--m", "1", "--algo", "exact-discrete", "--l", "1",
                      "--norm", "1"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(1.5));

  const auto d = run({"distance", "--p", k, "--q", k, "--l", "2", "--norm", "2"});
  REQUIRE(d.code == kExitOk);
  CHECK(std::stod(d.out) == 0.0);
}

TEST_CASE("budget errors") {
  const fs::path dir = scratch();
  const std::string a = (dir / "adv.json").string();
  REQUIRE(run({"gen", "--family", "dupacova-adv", "--z", "10", "--d", "2", "--out", a}).code ==
          kExitOk);
  CHECK(run({"reduce", "--input", a, "--m", "20", "--algo", "exact-discrete", "--budget", "100"})
            .code == kExitBudget);
}

TEST_CASE("seeded runs give identical files") {
  const fs::path dir = scratch();
  const std::string in = (dir / "wc.json").string();
  REQUIRE(run({"gen", "--family", "worst-case", "--n", "9", "--out", in}).code == kExitOk);
  for (const std::string algo : {"kmeans", "local", "dupacova"}) {
    const std::string a = (dir / ("a_" + algo + ".json")).string();
    const std::string b = (dir / ("b_" + algo + ".json")).string();
    for (const auto& out : {a, b}) {
      REQUIRE(run({"reduce", "--input", in, "--m", "3", "--algo", algo, "--seed", "5", "--out",
                   out})
                  .code == kExitOk);
    }
    CHECK(read_text(a) == read_text(b));
  }
}
