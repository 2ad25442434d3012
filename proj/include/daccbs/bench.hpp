/*
 * Benchmark suites: (mode x t_max x seed) episode sweeps over one instance,
 * with JSON / CSV result documents. The JSON layout is described in
 * docs/result_schema.md.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "daccbs/simulation.hpp"

namespace daccbs {

inline constexpr const char* kResultSchema = "daccbs-bench/1";

// t_max grid used when none is given on the command line
inline const std::vector<double> kDefaultTmaxSweepMs = {10.0, 50.0, 250.0};

struct RunSpec {
  std::string map_path;
  std::string scen_path;
  std::size_t agents = 0;
  std::vector<Mode> modes = {Mode::Daccbs};
  std::vector<double> tmax_ms = kDefaultTmaxSweepMs;
  int horizon_max = 128;
  Cost slack_threshold = 1;
  std::string backup = "lacam-ref";
  std::vector<std::uint64_t> seeds = {0};
  bool serial = false;
  std::string out_path;
  std::string format = "json";  // json | csv
  std::optional<int> step_cap;

  // throws std::invalid_argument
  void validate() const;
};

struct EpisodeRecord {
  Mode mode = Mode::Daccbs;
  std::uint64_t seed = 0;
  double tmax_ms = 0;
  std::size_t agents = 0;
  EpisodeResult result;

  bool operator==(const EpisodeRecord&) const = default;
};

struct AggregateRecord {
  Mode mode = Mode::Daccbs;
  double tmax_ms = 0;
  std::size_t episodes = 0;
  double mean_soc_increment = 0;
  double stddev_soc_increment = 0;
};

struct FactorizationRow {
  Mode mode = Mode::Daccbs;
  std::uint64_t seed = 0;
  double tmax_ms = 0;
  std::size_t agents = 0;
  int t = 0;  // ceil(makespan / 2)
  std::size_t groups = 0;
  double max_group_ratio = 0;  // largest group size / N
};

struct ErrorRecord {
  Mode mode = Mode::Daccbs;
  std::uint64_t seed = 0;
  double tmax_ms = 0;
  std::string kind;  // data | defect
  std::string message;
};

struct SuiteResult {
  RunSpec spec;
  std::vector<EpisodeRecord> episodes;
  std::vector<AggregateRecord> aggregates;
  std::vector<FactorizationRow> factorization;
  std::vector<std::string> factorization_notes;
  std::vector<ErrorRecord> errors;
};

// Runs every (mode, t_max, seed) episode on the given instance. Worker count
// comes from DACCBS_THREADS (default: hardware concurrency); serial specs run
// one episode at a time with serial group planning.
SuiteResult run_suite(const RunSpec& spec, const MapfInstance& instance);
// Loads map + scenario from the spec's paths first.
SuiteResult run_suite(const RunSpec& spec);

std::vector<AggregateRecord> aggregate(const std::vector<EpisodeRecord>& episodes);

// group count and largest-group ratio at ceil(makespan / 2) for completed
// daccbs episodes; unfinished ones are noted and skipped
std::vector<FactorizationRow> report_factorization(const std::vector<EpisodeRecord>& episodes,
                                                   std::vector<std::string>* notes = nullptr);

nlohmann::json to_json(const EpisodeRecord& record);
EpisodeRecord episode_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuiteResult& suite);

void write_json(const SuiteResult& suite, std::ostream& out);
void write_episodes_csv(const std::vector<EpisodeRecord>& episodes, std::ostream& out);
void write_aggregates_csv(const std::vector<AggregateRecord>& aggregates, std::ostream& out);
void write_factorization_csv(const std::vector<FactorizationRow>& rows, std::ostream& out);
// episodes back from write_episodes_csv (summary columns only)
std::vector<nlohmann::json> read_episodes_csv(std::istream& in);

// writes spec.out_path (and sibling .aggregates.csv / .factorization.csv in
// csv format)
void write_suite(const SuiteResult& suite);

}  // namespace daccbs
