#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "mfou/io.hpp"

using namespace mfou;

namespace {

std::string temp_path(const std::string& name) {
  return "io_test_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("csv round-trips doubles exactly") {
  CsvTable table;
  table.header = {"t", "x", "y"};
  table.rows = {{0.1, -1.0 / 3.0, 1e-300},
                {2.0, std::sqrt(2.0), -0.0},
                {6.02214076e23, 1.7976931348623157e308, 5e-324}};
  const std::string path = temp_path("roundtrip.csv");
  write_csv(path, table);
  CsvTable back = read_csv(path);
  REQUIRE(back.header == table.header);
  REQUIRE(back.rows.size() == table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      CHECK(back.rows[r][c] == table.rows[r][c]);
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("csv validation rejects malformed content") {
  CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{1.0}};
  CHECK_THROWS_AS(write_csv(temp_path("ragged.csv"), ragged),
                  std::invalid_argument);

  const std::string path = temp_path("bad.csv");
  {
    std::ofstream out(path);
    out << "a,b\n1.0,zebra\n";
  }
  CHECK_THROWS_AS(read_csv(path), std::runtime_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_csv("definitely_missing_file.csv"),
                  std::runtime_error);
}

TEST_CASE("manifest round-trips through json") {
  RunManifest manifest;
  manifest.command = "mc-study";
  manifest.params = {{"hurst", "0.7"}, {"theta", "1"}, {"reps", "400"}};
  manifest.seed = 0xdeadbeefcafe1234ull;
  manifest.cache_hash = 0xffffffffffffffffull;
  manifest.version = "0.1.0";
  manifest.timestamp = "2024-08-17T12:00:00Z";
  const std::string path = temp_path("manifest.json");
  write_manifest(path, manifest);
  RunManifest back = read_manifest(path);
  CHECK(back.command == manifest.command);
  CHECK(back.params == manifest.params);
  CHECK(back.seed == manifest.seed);
  CHECK(back.cache_hash == manifest.cache_hash);
  CHECK(back.version == manifest.version);
  CHECK(back.timestamp == manifest.timestamp);

  // Identical manifests serialize to identical bytes.
  CHECK(manifest_to_json(manifest) == manifest_to_json(back));
  std::remove(path.c_str());
}

TEST_CASE("summary json carries the config echo and statistics") {
  McSummary summary;
  summary.config.hurst = HurstParam(0.3);
  summary.config.theta = 2.0;
  summary.config.kind = InputKind::Optimal;
  summary.config.horizon = 30.0;
  summary.config.steps = 600;
  summary.config.reps = 4;
  summary.config.seed = 42;
  summary.n_effective = 2;
  summary.n_degenerate = 1;
  summary.mean = 0.25;
  summary.variance = 1.5;
  summary.target_variance = 2.0 / 3.0;
  summary.records = {{0, 11, 1.9, -0.1, 3.0}, {2, 13, 2.1, 0.1, 2.5}};

  const std::string json = summary_to_json(summary);
  CHECK(json.find("\"hurst\": 0.3") != std::string::npos);
  CHECK(json.find("\"input\": \"optimal\"") != std::string::npos);
  CHECK(json.find("\"n_degenerate\": 1") != std::string::npos);
  CHECK(json.find("\"target_variance\"") != std::string::npos);

  const std::string path = temp_path("records.csv");
  write_records_csv(path, summary);
  const std::string bytes = slurp(path);
  CHECK(bytes ==
        "rep,seed,theta_hat,sqrtT_error,denom\n"
        "0,11,1.8999999999999999,-0.10000000000000001,3\n"
        "2,13,2.1000000000000001,0.10000000000000001,2.5\n");
  std::remove(path.c_str());
}
