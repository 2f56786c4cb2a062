// Disk artifacts: numeric CSV tables that round-trip exactly, run manifests,
// and study summaries as JSON.
#ifndef MFOU_IO_HPP
#define MFOU_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfou/mc.hpp"

namespace mfou {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // every row matches header size
};

// Doubles printed with %.17g so that reading back reproduces the exact bits.
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// Provenance stamp written next to every produced artifact. The timestamp is
// the only field allowed to differ between identical re-runs.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::uint64_t cache_hash = 0;
  std::string version;
  std::string timestamp;
};

std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

// Study summary with its config echo; per-replication records go to their
// own CSV (seed column printed as an exact unsigned integer), not into the
// JSON.
std::string summary_to_json(const McSummary& summary);
void write_summary(const std::string& path, const McSummary& summary);
void write_records_csv(const std::string& path, const McSummary& summary);

}  // namespace mfou

#endif
