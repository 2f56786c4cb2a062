#include "mfou/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mfou {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  return out;
}

nlohmann::json config_json(const McConfig& config) {
  const std::string kind = input_kind_name(config.kind);
  return nlohmann::json{{"hurst", config.hurst.value()},
                        {"theta", config.theta},
                        {"alpha", config.alpha},
                        {"input", kind},
                        {"horizon", config.horizon},
                        {"steps", config.steps},
                        {"reps", config.reps},
                        {"seed", config.seed},
                        {"out", config.out}};
}

}  // namespace

void write_csv(const std::string& path, const CsvTable& table) {
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("csv row width does not match the header");
    }
  }
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("csv file is empty: " + path);
  }
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("csv row width does not match the header in " +
                               path);
    }
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      char* end = nullptr;
      row[i] = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str()) {
        throw std::runtime_error("csv cell is not numeric: " + cells[i]);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j{{"command", manifest.command},
                   {"params", manifest.params},
                   {"seed", manifest.seed},
                   {"cache_hash", manifest.cache_hash},
                   {"version", manifest.version},
                   {"timestamp", manifest.timestamp}};
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out = open_out(path);
  out << manifest_to_json(manifest);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  nlohmann::json j;
  in >> j;
  RunManifest manifest;
  manifest.command = j.at("command").get<std::string>();
  manifest.params =
      j.at("params").get<std::map<std::string, std::string>>();
  manifest.seed = j.at("seed").get<std::uint64_t>();
  manifest.cache_hash = j.at("cache_hash").get<std::uint64_t>();
  manifest.version = j.at("version").get<std::string>();
  manifest.timestamp = j.at("timestamp").get<std::string>();
  return manifest;
}

std::string summary_to_json(const McSummary& summary) {
  nlohmann::json j{
      {"config", config_json(summary.config)},
      {"n_effective", summary.n_effective},
      {"n_degenerate", summary.n_degenerate},
      {"mean", summary.mean},
      {"variance", summary.variance},
      {"mean_se", summary.mean_se},
      {"variance_se", summary.variance_se},
      {"target_variance", summary.target_variance},
      {"normality",
       nlohmann::json{{"stat", summary.normality_stat},
                      {"threshold", summary.normality_threshold},
                      {"pass", summary.normality_pass}}}};
  return j.dump(2) + "\n";
}

void write_summary(const std::string& path, const McSummary& summary) {
  std::ofstream out = open_out(path);
  out << summary_to_json(summary);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

void write_records_csv(const std::string& path, const McSummary& summary) {
  std::ofstream out = open_out(path);
  out << "rep,seed,theta_hat,sqrtT_error,denom\n";
  for (const McRecord& rec : summary.records) {
    out << rec.rep << "," << rec.seed << "," << format_double(rec.theta_hat)
        << "," << format_double(rec.sqrt_t_error) << ","
        << format_double(rec.denom) << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace mfou
