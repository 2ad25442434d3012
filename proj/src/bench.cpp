#include "daccbs/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace daccbs {

using nlohmann::json;

void RunSpec::validate() const
{
  if (tmax_ms.empty()) throw std::invalid_argument("at least one t_max is required");
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (modes.empty()) throw std::invalid_argument("at least one mode is required");
  for (double t : tmax_ms)
    if (t < 0) throw std::invalid_argument("t_max must be >= 0");
  if (horizon_max < 1) throw std::invalid_argument("H_max must be >= 1");
  if (slack_threshold < 0) throw std::invalid_argument("slack threshold must be >= 0");
  if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
  if (step_cap && *step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
}

namespace {

std::size_t worker_count()
{
  if (const char* env = std::getenv("DACCBS_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json step_to_json(const StepTelemetry& s)
{
  json groups = json::array();
  for (const auto& g : s.groups)
    groups.push_back({{"group_id", g.group_id},
                      {"size", g.size},
                      {"horizon_reached", g.horizon_reached},
                      {"budget", g.budget},
                      {"improved", g.improved},
                      {"expansions", g.expansions}});
  return {{"t", s.t},
          {"budget", s.budget ? json(*s.budget) : json(nullptr)},
          {"improved", s.improved},
          {"group_count", s.group_count},
          {"max_group_size", s.max_group_size},
          {"plan_ms", s.plan_ms},
          {"groups", std::move(groups)}};
}

json event_to_json(const FactorizationEvent& e)
{
  return {{"t", e.t}, {"group_id", e.group_id}, {"slack", e.slack}, {"subgroup_sizes", e.subgroup_sizes}};
}

FactorizationEvent event_from_json(const json& j)
{
  return {j.at("t").get<int>(), j.at("group_id").get<AgentId>(), j.at("slack").get<Cost>(),
          j.at("subgroup_sizes").get<std::vector<std::size_t>>()};
}

EpisodeResult::Termination termination_from_string(const std::string& s)
{
  if (s == "all-at-goals") return EpisodeResult::Termination::AllAtGoals;
  if (s == "step-cap") return EpisodeResult::Termination::StepCap;
  throw std::invalid_argument("unknown termination '" + s + "'");
}

json spec_to_json(const RunSpec& spec)
{
  std::vector<std::string> modes;
  for (auto m : spec.modes) modes.push_back(to_string(m));
  return {{"map", spec.map_path},
          {"scen", spec.scen_path},
          {"agents", spec.agents},
          {"modes", modes},
          {"tmax_ms", spec.tmax_ms},
          {"hmax", spec.horizon_max},
          {"slack_threshold", spec.slack_threshold},
          {"backup", spec.backup},
          {"seeds", spec.seeds},
          {"serial", spec.serial},
          {"format", spec.format},
          {"step_cap", spec.step_cap ? json(*spec.step_cap) : json(nullptr)},
          {"default_tmax_sweep_ms", kDefaultTmaxSweepMs}};
}

// scalar cell: JSON number / bool formatting, raw strings
std::string cell(const json& v)
{
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::vector<std::pair<std::string, json>> episode_summary(const EpisodeRecord& r)
{
  const auto& res = r.result;
  return {{"mode", to_string(r.mode)},
          {"seed", r.seed},
          {"tmax_ms", r.tmax_ms},
          {"agents", r.agents},
          {"soc", res.soc},
          {"soc_increment", res.soc_increment},
          {"makespan", res.makespan},
          {"initial_budget", res.initial_budget},
          {"final_budget", res.budget_trace.empty() ? json(nullptr) : json(res.budget_trace.back().budget)},
          {"termination", to_string(res.termination)}};
}

}  // namespace

json to_json(const EpisodeRecord& r)
{
  json j;
  for (auto& [k, v] : episode_summary(r)) j[k] = v;
  json budget = json::array();
  for (const auto& b : r.result.budget_trace) budget.push_back({{"t", b.t}, {"budget", b.budget}, {"improved", b.improved}});
  json fact = json::array();
  for (const auto& e : r.result.factorization_trace) fact.push_back(event_to_json(e));
  json steps = json::array();
  for (const auto& s : r.result.steps) steps.push_back(step_to_json(s));
  j["budget_trace"] = std::move(budget);
  j["factorization_trace"] = std::move(fact);
  j["steps"] = std::move(steps);
  return j;
}

EpisodeRecord episode_from_json(const json& j)
{
  EpisodeRecord r;
  r.mode = mode_from_string(j.at("mode").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tmax_ms = j.at("tmax_ms").get<double>();
  r.agents = j.at("agents").get<std::size_t>();
  auto& res = r.result;
  res.mode = r.mode;
  res.soc = j.at("soc").get<Cost>();
  res.soc_increment = j.at("soc_increment").get<Cost>();
  res.makespan = j.at("makespan").get<int>();
  res.initial_budget = j.at("initial_budget").get<Cost>();
  res.termination = termination_from_string(j.at("termination").get<std::string>());
  for (const auto& b : j.at("budget_trace"))
    res.budget_trace.push_back({b.at("t").get<int>(), b.at("budget").get<Cost>(), b.at("improved").get<bool>()});
  for (const auto& e : j.at("factorization_trace")) res.factorization_trace.push_back(event_from_json(e));
  for (const auto& s : j.at("steps")) {
    StepTelemetry st;
    st.t = s.at("t").get<int>();
    if (!s.at("budget").is_null()) st.budget = s.at("budget").get<Cost>();
    st.improved = s.at("improved").get<bool>();
    st.group_count = s.at("group_count").get<std::size_t>();
    st.max_group_size = s.at("max_group_size").get<std::size_t>();
    st.plan_ms = s.at("plan_ms").get<double>();
    for (const auto& g : s.at("groups"))
      st.groups.push_back({g.at("group_id").get<AgentId>(), g.at("size").get<std::size_t>(),
                           g.at("horizon_reached").get<int>(), g.at("budget").get<Cost>(),
                           g.at("improved").get<bool>(), g.at("expansions").get<std::size_t>()});
    for (const auto& e : res.factorization_trace)
      if (e.t == st.t) st.factorizations.push_back(e);
    res.steps.push_back(std::move(st));
  }
  return r;
}

std::vector<AggregateRecord> aggregate(const std::vector<EpisodeRecord>& episodes)
{
  std::map<std::pair<int, double>, std::vector<double>> groups;
  for (const auto& e : episodes) {
    if (e.result.termination != EpisodeResult::Termination::AllAtGoals) continue;
    groups[{static_cast<int>(e.mode), e.tmax_ms}].push_back(static_cast<double>(e.result.soc_increment));
  }
  std::vector<AggregateRecord> out;
  for (const auto& [key, xs] : groups) {
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    out.push_back({static_cast<Mode>(key.first), key.second, xs.size(), mean, std::sqrt(var)});
  }
  return out;
}

std::vector<FactorizationRow> report_factorization(const std::vector<EpisodeRecord>& episodes,
                                                   std::vector<std::string>* notes)
{
  std::vector<FactorizationRow> rows;
  for (const auto& e : episodes) {
    if (e.mode != Mode::Daccbs) continue;
    const auto& res = e.result;
    if (res.termination != EpisodeResult::Termination::AllAtGoals) {
      if (notes)
        notes->push_back("seed " + std::to_string(e.seed) + " t_max " + json(e.tmax_ms).dump() +
                         ": episode hit its step cap; excluded");
      continue;
    }
    if (res.steps.empty() || e.agents == 0) continue;
    const int half = (res.makespan + 1) / 2;
    const auto& step = res.steps[std::min<std::size_t>(static_cast<std::size_t>(half), res.steps.size() - 1)];
    rows.push_back({e.mode, e.seed, e.tmax_ms, e.agents, step.t, step.group_count,
                    static_cast<double>(step.max_group_size) / static_cast<double>(e.agents)});
  }
  return rows;
}

SuiteResult run_suite(const RunSpec& spec, const MapfInstance& instance)
{
  spec.validate();
  SuiteResult suite;
  suite.spec = spec;

  struct Job {
    Mode mode;
    double tmax;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto m : spec.modes)
    for (double t : spec.tmax_ms)
      for (auto s : spec.seeds) jobs.push_back({m, t, s});

  std::vector<std::optional<EpisodeRecord>> done(jobs.size());
  std::vector<std::optional<ErrorRecord>> failed(jobs.size());
  auto run_one = [&](std::size_t i) {
    const auto& job = jobs[i];
    ControllerConfig cfg;
    cfg.horizon_max = spec.horizon_max;
    cfg.step_budget_ms = job.tmax;
    cfg.slack_threshold = spec.slack_threshold;
    cfg.backup = spec.backup;
    cfg.mode = job.mode;
    cfg.seed = job.seed;
    cfg.parallel_groups = !spec.serial;
    try {
      done[i] = EpisodeRecord{job.mode, job.seed, job.tmax, instance.agent_count(),
                              run_episode(instance, cfg, spec.step_cap)};
    } catch (const InstanceError& e) {
      failed[i] = ErrorRecord{job.mode, job.seed, job.tmax, "data", e.what()};
    } catch (const ContractViolation& e) {
      failed[i] = ErrorRecord{job.mode, job.seed, job.tmax, "defect", e.what()};
    } catch (const std::exception& e) {
      failed[i] = ErrorRecord{job.mode, job.seed, job.tmax, "defect", e.what()};
    }
  };

  const std::size_t workers = spec.serial ? 1 : std::min(worker_count(), jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (auto i = next++; i < jobs.size(); i = next++) run_one(i);
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (done[i]) suite.episodes.push_back(std::move(*done[i]));
    if (failed[i]) suite.errors.push_back(std::move(*failed[i]));
  }
  if (instance.agent_count() > 0) suite.aggregates = aggregate(suite.episodes);
  suite.factorization = report_factorization(suite.episodes, &suite.factorization_notes);
  return suite;
}

SuiteResult run_suite(const RunSpec& spec)
{
  spec.validate();
  const auto graph = load_map(spec.map_path);
  const auto instance = load_scenario(spec.scen_path, graph, spec.agents);
  return run_suite(spec, instance);
}

json to_json(const SuiteResult& suite)
{
  json episodes = json::array();
  for (const auto& e : suite.episodes) episodes.push_back(to_json(e));
  json aggregates = json::array();
  for (const auto& a : suite.aggregates)
    aggregates.push_back({{"mode", to_string(a.mode)},
                          {"tmax_ms", a.tmax_ms},
                          {"episodes", a.episodes},
                          {"mean_soc_increment", a.mean_soc_increment},
                          {"stddev_soc_increment", a.stddev_soc_increment}});
  json fact = json::array();
  for (const auto& f : suite.factorization)
    fact.push_back({{"mode", to_string(f.mode)},
                    {"seed", f.seed},
                    {"tmax_ms", f.tmax_ms},
                    {"agents", f.agents},
                    {"t", f.t},
                    {"groups", f.groups},
                    {"max_group_ratio", f.max_group_ratio}});
  json errors = json::array();
  for (const auto& e : suite.errors)
    errors.push_back({{"mode", to_string(e.mode)},
                      {"seed", e.seed},
                      {"tmax_ms", e.tmax_ms},
                      {"kind", e.kind},
                      {"message", e.message}});
  return {{"schema", kResultSchema},
          {"suite", spec_to_json(suite.spec)},
          {"episodes", std::move(episodes)},
          {"aggregates", std::move(aggregates)},
          {"factorization", std::move(fact)},
          {"factorization_notes", suite.factorization_notes},
          {"errors", std::move(errors)}};
}

void write_json(const SuiteResult& suite, std::ostream& out)
{
  out << to_json(suite).dump(2) << '\n';
}

void write_episodes_csv(const std::vector<EpisodeRecord>& episodes, std::ostream& out)
{
  bool header = true;
  EpisodeRecord blank;
  for (const auto& [k, v] : episode_summary(blank)) {
    out << (header ? "" : ",") << k;
    header = false;
  }
  out << '\n';
  for (const auto& e : episodes) {
    bool first = true;
    for (const auto& [k, v] : episode_summary(e)) {
      out << (first ? "" : ",") << (v.is_null() ? "" : cell(v));
      first = false;
    }
    out << '\n';
  }
}

void write_aggregates_csv(const std::vector<AggregateRecord>& aggregates, std::ostream& out)
{
  out << "mode,tmax_ms,episodes,mean_soc_increment,stddev_soc_increment\n";
  for (const auto& a : aggregates)
    out << to_string(a.mode) << ',' << cell(a.tmax_ms) << ',' << a.episodes << ',' << cell(a.mean_soc_increment)
        << ',' << cell(a.stddev_soc_increment) << '\n';
}

void write_factorization_csv(const std::vector<FactorizationRow>& rows, std::ostream& out)
{
  out << "mode,seed,tmax_ms,agents,t,groups,max_group_ratio\n";
  for (const auto& f : rows)
    out << to_string(f.mode) << ',' << f.seed << ',' << cell(f.tmax_ms) << ',' << f.agents << ',' << f.t << ','
        << f.groups << ',' << cell(f.max_group_ratio) << '\n';
}

std::vector<json> read_episodes_csv(std::istream& in)
{
  std::string line;
  std::vector<std::string> keys;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string k;
    while (std::getline(ss, k, ',')) keys.push_back(k);
  }
  std::vector<json> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string c;
    std::stringstream ss(line);
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    json row;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& v = i < cells.size() ? cells[i] : std::string();
      if (v.empty())
        row[keys[i]] = nullptr;
      else if (keys[i] == "mode" || keys[i] == "termination")
        row[keys[i]] = v;
      else
        row[keys[i]] = json::parse(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_suite(const SuiteResult& suite)
{
  const auto& path = suite.spec.out_path;
  auto open = [](const std::string& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p);
    return f;
  };
  if (suite.spec.format == "json") {
    auto f = open(path);
    write_json(suite, f);
    return;
  }
  {
    auto f = open(path);
    write_episodes_csv(suite.episodes, f);
  }
  {
    auto f = open(path + ".aggregates.csv");
    write_aggregates_csv(suite.aggregates, f);
  }
  {
    auto f = open(path + ".factorization.csv");
    write_factorization_csv(suite.factorization, f);
  }
}

}  // namespace daccbs
