#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cova {

using Json = nlohmann::ordered_json;

/// Command-line campaign. Unset integers are -1 and take per-command defaults.
struct Options {
  std::string command;
  std::string type, ancestor, lattice;
  std::string ring;  // empty: command default
  int order = 0;
  int weight = -1;
  int wmax = -1;
  int dims_lo = 0, dims_hi = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::string dump, gram_csv;
  bool timings = false;
};

struct Check {
  std::string name;
  bool pass = false;
  Json params = Json::object();
  Json dims = Json::object();
  Json details = Json::object();
  std::string witness;
  double elapsed_ms = -1;
};

struct Report {
  std::string command;
  Json campaign = Json::object();
  Json result = Json::object();
  std::vector<Check> checks;
  std::vector<Report> parts;

  bool pass() const;
  /// Without schema and timestamp; those are added by the driver.
  Json to_json() const;
};

Report run_roots(const Options& o);
Report run_cocycle(const Options& o);
Report run_lie(const Options& o);
Report run_va(const Options& o);
Report run_covering(const Options& o);
Report run_moonshine_desk(const Options& o);
/// Fixed campaign over all subcommands at small sizes.
Report run_all(const Options& o);
Report run(const Options& o);

/// "a..b" or "a".
std::pair<int, int> parse_range(const std::string& s);

}  // namespace cova
