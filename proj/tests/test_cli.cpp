#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "shufflekit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = shufflekit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("matrix") {
  auto r = run({"matrix", "--model", "top", "--n", "3", "--power", "1"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "arrangement,123,132,213,231,312,321");
  CHECK(rows[1] == "123,1/3,0,1/3,1/3,0,0");

  r = run({"matrix", "--model", "gsr", "--n", "3", "--power", "0"});
  rows = lines(r.out);
  CHECK(rows[1] == "123,1,0,0,0,0,0");
  CHECK(rows[6] == "321,0,0,0,0,0,1");

  r = run({"matrix", "--model", "gsr", "--n", "4", "--power", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  for (std::size_t i = 0; i < 24; ++i) CHECK(doc["rows"][i][i] == "5/16");

  SUBCASE("cap errors exit 3 with one line naming the limit") {
    r = run({"matrix", "--model", "top", "--n", "7"});
    CHECK(r.code == 3);
    CHECK(r.err.find("n <= 6") != std::string::npos);
    CHECK(lines(r.err).size() == 1);
    CHECK(run({"distance", "--model", "top", "--n", "7", "--kmax", "1", "--max-n-override", "7"})
              .code == 0);
    CHECK(run({"matrix", "--model", "top", "--n", "6", "--max-n-override", "5"}).code == 3);
    CHECK(run({"matrix", "--model", "top", "--n", "3", "--max-n-override", "9"}).code == 2);
  }
}

TEST_CASE("distance") {
  auto r = run({"distance", "--model", "top", "--n", "3", "--kmax", "3", "--method", "exact"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "k,d_rational,d_decimal");
  CHECK(rows[1] == "0,5/6,0.833333333333");
  CHECK(rows[2] == "1,1/2,0.5");
  CHECK(rows[3] == "2,1/6,0.166666666667");
  CHECK(rows[4] == "3,1/18,0.0555555555556");

  r = run({"distance", "--n", "52", "--kmax", "14", "--method", "closed-form", "--precision", "3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[8].substr(lines(r.out)[8].rfind(',') + 1) == "0.334");

  r = run({"distance", "--n", "52", "--kmax", "14", "--method", "bound", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  int first = -1;
  for (const auto& p : doc["points"]) {
    if (first < 0 && std::stod(p["d_decimal"].get<std::string>()) <= 0.5) first = p["k"];
  }
  CHECK(first == 11);
  CHECK(doc["method"] == "bound");

  CHECK(run({"distance", "--model", "top", "--n", "3", "--method", "bound"}).code == 2);
  CHECK(run({"distance", "--n", "3", "--method", "spectral"}).code == 2);
  CHECK(run({"distance", "--n", "8", "--method", "exact"}).code == 3);
}

TEST_CASE("faro") {
  CHECK(run({"faro", "--n", "52", "--variant", "out", "--period"}).out == "period\n8\n");
  CHECK(run({"faro", "--n", "52", "--variant", "in", "--period"}).out == "period\n52\n");
  CHECK(run({"faro", "--n", "52", "--variant", "mongean", "--period"}).out == "period\n12\n");
  auto r = run({"faro", "--n", "52", "--variant", "out", "--trace", "7"});
  REQUIRE(r.code == 0);
  std::vector<std::string> positions;
  for (const auto& line : lines(r.out)) positions.push_back(line.substr(line.find(',') + 1));
  CHECK(positions ==
        std::vector<std::string>{"position", "7", "14", "28", "5", "10", "20", "40", "29", "7"});
  r = run({"faro", "--n", "51", "--period"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("simulate") {
  auto r = run({"simulate", "--model", "faro-out", "--n", "8", "--hands", "8"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[1] == "0,12345678");
  CHECK(rows[2] == "1,15263748");
  CHECK(rows[4] == "3,12345678");  // out-Faro period at n = 8 is 3

  r = run({"simulate", "--model", "physical", "--n", "52", "--hands", "1", "--seed", "1",
           "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  const auto deck = shufflekit::parse_arrangement(doc["hands"][1]["arrangement"]);
  CHECK(deck.size() == 52);

  for (const char* seed : {"1", "2", "99"}) {
    r = run({"simulate", "--model", "top", "--n", "3", "--hands", "1", "--seed", seed});
    const auto last = lines(r.out).back();
    const auto arrangement = last.substr(last.find(',') + 1);
    CHECK((arrangement == "123" || arrangement == "213" || arrangement == "231"));
  }
  CHECK(run({"simulate", "--model", "overhand", "--n", "3"}).code == 2);
}

TEST_CASE("empirical") {
  auto r = run({"empirical", "--model", "top", "--n", "3", "--hands", "0", "--trials", "10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("count,123,10\n") != std::string::npos);

  r = run({"empirical", "--model", "naive", "--n", "4", "--hands", "1", "--trials", "200000",
           "--compare", "exact", "--format", "json", "--rational"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["trials"] == 200000);
  CHECK(doc["tv"]["reference"] == "exact");
  CHECK(std::stod(doc["tv"]["value"].get<std::string>()) < 0.01);
  CHECK(doc["tv"].contains("rational"));
  CHECK(doc["counts"].size() == 24);

  r = run({"empirical", "--model", "physical", "--n", "4", "--hands", "1", "--trials", "100000",
           "--compare", "gsr", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(json::parse(r.out)["tv"]["value"].get<std::string>()) > 0.05);

  CHECK(run({"empirical", "--model", "top", "--n", "8", "--trials", "10", "--compare", "exact"})
            .code == 3);
  CHECK(run({"empirical", "--model", "top", "--n", "8", "--trials", "10", "--compare", "gsr"})
            .code == 0);
  CHECK(run({"empirical", "--model", "top", "--n", "3", "--compare", "bogus"}).code == 2);
}

TEST_CASE("output is reproducible and csv/json agree") {
  const std::vector<std::string> args{"empirical", "--model", "physical", "--n", "4",
                                      "--trials",  "5000",    "--seed",    "3", "--compare",
                                      "gsr"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);

  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto doc = json::parse(run(json_args).out);
  for (const auto& line : lines(a.out)) {
    if (line.rfind("count,", 0) == 0) {
      const auto key = line.substr(6, line.rfind(',') - 6);
      CHECK(std::to_string(doc["counts"][key].get<std::uint64_t>()) ==
            line.substr(line.rfind(',') + 1));
    }
    if (line.rfind("tv,", 0) == 0) {
      CHECK(doc["tv"]["value"] == line.substr(line.rfind(',') + 1));
    }
  }

  const auto distance_csv = run({"distance", "--model", "top", "--n", "4", "--kmax", "6"}).out;
  const auto distance_json =
      json::parse(run({"distance", "--model", "top", "--n", "4", "--kmax", "6", "--format", "json"}).out);
  const auto rows = lines(distance_csv);
  for (std::size_t k = 0; k <= 6; ++k) {
    const auto& p = distance_json["points"][k];
    CHECK(rows[k + 1] == std::to_string(k) + "," + p["d_rational"].get<std::string>() + "," +
                             p["d_decimal"].get<std::string>());
  }
}

TEST_CASE("--out writes to a file") {
  const std::string path = "test_cli_out.csv";
  std::remove(path.c_str());
  const auto r = run({"faro", "--n", "52", "--period", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == "period\n8\n");
  std::remove(path.c_str());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"shuffle"}).code == 2);
  CHECK(run({"matrix"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
