#include <doctest.h>

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cfx/cli.hpp"
#include "cfx/io.hpp"

using namespace cfx;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"cfx"};
  argv.insert(argv.end(), args);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve on Z_4 in the complex class") {
  const Run r = invoke({"solve", "--zm", "-m", "4", "-H", "0,1,-1", "--complex"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(0.70710678118654757));
}

TEST_CASE("identical arguments give identical output") {
  const Run a = invoke({"--seed", "3", "oracle-compare", "--random", "2"});
  const Run b = invoke({"--seed", "3", "oracle-compare", "--random", "2"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit with code 2 and a JSON error") {
  for (const Run& r : {invoke({"solve", "--zm", "-m", "8", "-H", "0,1"}),
                       invoke({"--tol", "0.5", "solve", "--zm", "-m", "4", "-H", "0,1,-1"}),
                       invoke({"frobnicate"}),
                       invoke({"factor", "--entries", "0:1,1:1,-1:1"}),
                       invoke({"reduce", "--group", "Z4", "--z", "0.5", "--omega", R"({"explicit":[["0"]]})"})}) {
    CHECK(r.code == kExitUsage);
    CHECK(Json::parse(r.out).contains("error"));
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("a failed identity exits with code 1") {
  const Run r = invoke({"sparse-family", "-N", "6"});
  CHECK(r.code == kExitCheckFailed);
  CHECK_FALSE(Json::parse(r.out)["passed"].get<bool>());
}

TEST_CASE("indefinite input still gets a certificate") {
  const Run r = invoke({"check-pd", "--values", "1,1,0,1"});
  CHECK(r.code == kExitOk);
  CHECK_FALSE(Json::parse(r.out)["certificate"]["isPd"].get<bool>());
}

TEST_CASE("classical table as CSV") {
  const Run r = invoke({"--format", "csv", "classic-table", "-n", "1..3"});
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header.rfind("n,exchange,grid", 0) == 0);
  CHECK(first.rfind("1,1,", 0) == 0);
}

TEST_CASE("oracle comparison from a file-free inline region") {
  const Run r = invoke({"oracle-compare", "--group", "Z4xZ2", "--z", "1,0", "--omega",
                        R"({"explicit":[["0","0"],["1","0"],["3","0"],["2","1"]]})"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["delta"].get<double>() < 1e-7);
}

TEST_CASE("help exits cleanly") {
  const Run r = invoke({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("solve-group") != std::string::npos);
}
