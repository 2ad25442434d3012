// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Instances are drawn from fixed seeds so reruns see the
// same suite (wall-clock deadlines still make long runs timing dependent).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "daccbs/bench.hpp"
#include "daccbs/cbs.hpp"
#include "daccbs/generators.hpp"
#include "daccbs/simulation.hpp"
#include "oracle.hpp"

using namespace daccbs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// SOC <= B_0 over every daccbs episode of every criterion
struct BoundLedger {
  int episodes = 0;
  int violations = 0;
  void record(Cost soc, Cost b0)
  {
    ++episodes;
    if (soc > b0) ++violations;
  }
} g_bound;

// desk-scale suite shared by criteria 1 and 2
struct SmallCase {
  MapfInstance instance;
  oracle::Optimum optimum;
};

std::vector<SmallCase> small_suite(std::size_t want)
{
  std::mt19937_64 rng(20240601);
  std::vector<SmallCase> out;
  std::uniform_int_distribution<int> side(2, 4);
  while (out.size() < want) {
    const int h = side(rng);
    const int w = side(rng);
    if (h * w < 4) continue;
    const double blocked = out.size() % 2 == 0 ? 0.0 : 0.1;
    auto g = random_grid(h, w, blocked, rng);
    const std::size_t agents = 2 + out.size() % 2;
    if (g.vertex_count() < agents + 1) continue;
    auto inst = random_instance(g, agents, rng);
    if (!inst) continue;
    auto opt = oracle::optimal_soc(*inst);
    if (opt.soc >= kInfinity) continue;  // infeasible: drop
    out.push_back({std::move(*inst), opt});
  }
  return out;
}

std::string describe(const MapfInstance& inst)
{
  std::ostringstream o;
  o << inst.graph().height() << "x" << inst.graph().width() << " |V|=" << inst.graph().vertex_count() << " starts";
  for (auto v : inst.starts()) o << ' ' << v;
  o << " goals";
  for (auto v : inst.goals()) o << ' ' << v;
  return o.str();
}

Outcome criterion1(const std::vector<SmallCase>& suite)
{
  int mismatches = 0;
  std::string first;
  for (const auto& c : suite) {
    const Cost got = soc(run_classic_cbs(c.instance), c.instance.goals());
    if (got != c.optimum.soc) {
      if (!mismatches++) first = describe(c.instance) + ": cbs " + std::to_string(got) + " vs oracle " +
                                 std::to_string(c.optimum.soc);
    }
  }
  std::ostringstream o;
  o << suite.size() - mismatches << "/" << suite.size() << " instances match the oracle";
  if (mismatches) o << "; first mismatch " << first;
  return {mismatches == 0 && suite.size() >= 200, o.str()};
}

Outcome criterion2(const std::vector<SmallCase>& suite)
{
  int mismatches = 0;
  std::string first;
  for (const auto& c : suite) {
    ControllerConfig cfg;
    cfg.mode = Mode::Daccbs;
    cfg.step_budget_ms = 10000;
    cfg.horizon_max = c.optimum.makespan + static_cast<int>(c.instance.gamma_sum(c.instance.starts())) +
                      static_cast<int>(c.instance.graph().vertex_count());
    const auto r = run_episode(c.instance, cfg);
    g_bound.record(r.soc, r.initial_budget);
    if (r.termination != EpisodeResult::Termination::AllAtGoals || r.soc != c.optimum.soc) {
      if (!mismatches++) first = describe(c.instance) + ": daccbs " + std::to_string(r.soc) + " vs oracle " +
                                 std::to_string(c.optimum.soc);
    }
  }
  std::ostringstream o;
  o << suite.size() - mismatches << "/" << suite.size() << " episodes reach the oracle SOC";
  if (mismatches) o << "; first mismatch " << first;
  return {mismatches == 0, o.str()};
}

struct StarvedStats {
  int episodes = 0;
  int failures = 0;
  int defects = 0;
  int invariant_defects = 0;
  std::string first;
};

// criteria 3 and 7: the closed loop is driven here, and every executed step
// is re-checked with the oracle's own collision rules
StarvedStats starved_suite()
{
  StarvedStats st;
  std::mt19937_64 rng(777);
  while (st.episodes < 50) {
    auto g = random_grid(16, 16, 0.1, rng);
    auto inst = random_solvable_instance(g, 30, rng);
    if (!inst) continue;
    ++st.episodes;
    ControllerConfig cfg;
    cfg.mode = Mode::Daccbs;
    cfg.step_budget_ms = 1;
    cfg.check_invariants = true;
    cfg.seed = static_cast<std::uint64_t>(st.episodes);
    auto fail = [&](const std::string& why) {
      if (!st.failures++) st.first = "episode " + std::to_string(st.episodes) + ": " + why;
    };
    try {
      Controller ctl(*inst, cfg);
      const Cost b0 = ctl.initial_budget();
      auto state = inst->starts();
      Cost prev = b0;
      Cost soc_total = 0;
      int t = 0;
      bool ok = true;
      while (state != inst->goals()) {
        if (t > b0) {
          fail("still running after B0 + 1 steps");
          ok = false;
          break;
        }
        auto step = ctl.plan_step(state, t);
        std::vector<VertexId> next = state;
        for (const auto& m : step.movement) next[m.agent] = m.to;
        if (!oracle::legal_step(*inst, state, next)) {
          fail("illegal joint step at t=" + std::to_string(t));
          ok = false;
          break;
        }
        const Cost budget = step.telemetry.budget.value_or(kInfinity);
        if (t > 0 && budget >= prev) {
          fail("budget did not decrease at t=" + std::to_string(t));
          ok = false;
          break;
        }
        if (t == 0 && budget > b0) {
          fail("step-0 budget above B0");
          ok = false;
          break;
        }
        prev = budget;
        for (std::size_t a = 0; a < state.size(); ++a) soc_total += state[a] != inst->goal(static_cast<AgentId>(a));
        state = std::move(next);
        ++t;
      }
      if (ok) g_bound.record(soc_total, b0);
    } catch (const DefectError& e) {
      ++st.defects;
      const std::string what = e.what();
      if (what.find("region") != std::string::npos) ++st.invariant_defects;
      fail(std::string("defect: ") + e.what());
    }
  }
  return st;
}

Outcome criterion5()
{
  std::mt19937_64 rng(555);
  const std::vector<double> sweep{1, 10, 100, 1000};
  int instances = 0;
  int violations = 0;
  std::string first;
  while (instances < 20) {
    auto g = random_grid(16, 16, 0.1, rng);
    auto inst = random_solvable_instance(g, 30, rng);
    if (!inst) continue;
    ++instances;
    Cost prev = kInfinity;
    std::ostringstream trace;
    bool bad = false;
    for (double tmax : sweep) {
      ControllerConfig cfg;
      cfg.mode = Mode::Daccbs;
      cfg.step_budget_ms = tmax;
      cfg.parallel_groups = false;
      cfg.seed = 0;
      Controller ctl(*inst, cfg);
      const Cost b = *ctl.plan_step(inst->starts(), 0).telemetry.budget;
      trace << ' ' << b;
      if (b > prev) bad = true;
      prev = b;
    }
    if (bad && !violations++) first = "instance " + std::to_string(instances) + " budgets" + trace.str();
  }
  std::ostringstream o;
  o << instances - violations << "/" << instances << " instances non-increasing over t_max {1,10,100,1000} ms";
  if (violations) o << "; first violation " << first;
  return {violations == 0, o.str()};
}

Outcome criterion6()
{
  std::mt19937_64 rng(66);
  auto lacam = make_backup("lacam-ref", 0);
  int instances = 0;
  long pairs = 0;
  int violations = 0;
  std::string first;
  const int shapes[][2] = {{2, 3}, {2, 4}, {3, 3}, {1, 8}};
  while (instances < 120) {
    const auto& s = shapes[instances % 4];
    const double blocked = s[0] * s[1] > 8 ? 0.2 : 0.1;
    auto g = random_grid(s[0], s[1], blocked, rng);
    if (g.vertex_count() > 8 || g.vertex_count() < 3) continue;
    auto inst = random_instance(g, 2, rng);
    if (!inst) continue;
    const auto opt = oracle::optimal_soc(*inst);
    if (opt.soc >= kInfinity) continue;
    ++instances;
    const Cost cert = init_certificate(*lacam, *inst, inst->starts(), {0, 1}).budget;
    const Cost sum = inst->gamma_sum(inst->starts());
    for (Cost budget : {opt.soc, cert, cert + 2}) {
      const Cost slack = budget - sum;
      for (AgentId a = 0; a < 2; ++a) {
        const auto region = reachable_region(*inst, a, inst->start(a), slack);
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
          if (region.contains(v)) continue;
          ++pairs;
          if (!oracle::exhaustive_exclusion_check(*inst, budget, a, v)) {
            if (!violations++)
              first = describe(*inst) + " budget " + std::to_string(budget) + " agent " + std::to_string(a) +
                      " vertex " + std::to_string(v);
          }
        }
      }
    }
  }
  std::ostringstream o;
  o << pairs - violations << "/" << pairs << " excluded (agent, vertex) pairs confirmed over " << instances
    << " instances";
  if (violations) o << "; first violation " << first;
  return {violations == 0 && instances >= 100 && pairs > 0, o.str()};
}

Outcome criterion8()
{
  auto g = empty_grid(48, 48);
  // threshold 0 refactorizes every step; the default 1 is reported alongside
  auto run = [&](std::size_t n, int seeds, Cost threshold, auto want) {
    int hits = 0, done = 0;
    std::ostringstream ks;
    for (int s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(8000 + static_cast<std::uint64_t>(s) * 31 + n);
      auto inst = random_solvable_instance(g, n, rng);
      if (!inst) continue;
      RunSpec spec;
      spec.modes = {Mode::Daccbs};
      spec.tmax_ms = {10};
      spec.seeds = {static_cast<std::uint64_t>(s)};
      spec.serial = true;
      spec.slack_threshold = threshold;
      auto suite = run_suite(spec, *inst);
      for (const auto& e : suite.episodes) g_bound.record(e.result.soc, e.result.initial_budget);
      if (suite.factorization.empty()) continue;
      ++done;
      const auto k = suite.factorization[0].groups;
      ks << (done > 1 ? "," : "") << k;
      if (want(k)) ++hits;
    }
    return std::tuple{hits, done, ks.str()};
  };
  auto more = [](std::size_t k) { return k > 1; };
  auto one = [](std::size_t k) { return k == 1; };
  auto [h10, d10, k10] = run(10, 20, 0, more);
  auto [h200, d200, k200] = run(200, 5, 0, one);
  auto [h10d, d10d, k10d] = run(10, 20, 1, more);
  std::ostringstream o;
  o << "threshold 0: N=10 K>1 in " << h10 << "/20 (K=" << k10 << "); N=200 K=1 in " << h200 << "/5 (K=" << k200
    << "); threshold 1: N=10 K>1 in " << h10d << "/20";
  return {h10 * 5 >= 20 * 4 && h200 * 5 >= 5 * 4, o.str()};
}

Outcome criterion9()
{
  const std::vector<double> sweep{10, 50};
  std::vector<EpisodeRecord> all;
  int errors = 0;
  for (int s = 0; s < 10; ++s) {
    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(s));
    auto g = random_grid(32, 32, 0.1, rng);
    auto inst = random_solvable_instance(g, 50, rng);
    if (!inst) continue;
    RunSpec spec;
    spec.modes = {Mode::Daccbs, Mode::Accbs};
    spec.tmax_ms = sweep;
    spec.seeds = {static_cast<std::uint64_t>(s)};
    spec.serial = true;
    auto suite = run_suite(spec, *inst);
    errors += static_cast<int>(suite.errors.size());
    for (auto& e : suite.episodes) {
      if (e.mode == Mode::Daccbs) g_bound.record(e.result.soc, e.result.initial_budget);
      all.push_back(std::move(e));
    }
  }
  std::ostringstream o;
  double d_mean = NAN, a_mean = NAN;
  int d_done = 0, a_done = 0, a_capped = 0, d_capped = 0;
  for (const auto& e : all) {
    if (e.tmax_ms != sweep.front()) continue;
    const bool done = e.result.termination == EpisodeResult::Termination::AllAtGoals;
    if (e.mode == Mode::Daccbs) (done ? d_done : d_capped)++;
    if (e.mode == Mode::Accbs) (done ? a_done : a_capped)++;
  }
  for (const auto& a : aggregate(all)) {
    if (a.tmax_ms != sweep.front()) continue;
    if (a.mode == Mode::Daccbs) d_mean = a.mean_soc_increment;
    if (a.mode == Mode::Accbs) a_mean = a.mean_soc_increment;
  }
  o << "t_max " << sweep.front() << " ms: daccbs mean SOC increment " << d_mean << " (" << d_done << " done, "
    << d_capped << " capped), accbs " << a_mean << " (" << a_done << " done, " << a_capped << " capped)";
  const bool better = a_done == 0 || d_mean <= a_mean;
  o << (better ? "; daccbs <= accbs" : "; daccbs > accbs (reported, not a failure)");
  return {errors == 0 && d_capped == 0 && d_done > 0, o.str()};
}

int g_failed = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& fn)
{
  const auto began = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
  if (!out.pass) ++g_failed;
  std::printf("%s %s %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
  std::fflush(stdout);
}

}  // namespace

int main()
{
  std::vector<SmallCase> small;
  report("C1", "classic CBS equals the oracle optimum", [&] {
    small = small_suite(200);
    return criterion1(small);
  });
  report("C2", "idealized daccbs reaches the oracle optimum", [&] { return criterion2(small); });

  StarvedStats starved;
  report("C3", "completeness at t_max = 1 ms", [&] {
    starved = starved_suite();
    std::ostringstream o;
    o << starved.episodes - starved.failures << "/" << starved.episodes
      << " episodes finish within B0 + 1 steps with legal moves and strictly falling budgets";
    if (starved.failures) o << "; first failure " << starved.first;
    return Outcome{starved.failures == 0 && starved.episodes == 50, o.str()};
  });
  report("C5", "step-0 budget non-increasing in t_max", criterion5);
  report("C6", "reachability exclusion confirmed by enumeration", criterion6);
  report("C7", "region shrinkage and cross-group disjointness", [&] {
    std::ostringstream o;
    o << "invariant checks on every step of " << starved.episodes << " episodes: " << starved.invariant_defects
      << " region violations, " << starved.defects << " defects total";
    return Outcome{starved.episodes == 50 && starved.defects == 0, o.str()};
  });
  report("C8", "factorization trend on a 48x48 empty grid", criterion8);
  report("C9", "daccbs vs accbs on 32x32 random maps", criterion9);
  report("C4", "realized SOC never exceeds B0", [&] {
    std::ostringstream o;
    o << g_bound.violations << " violations over " << g_bound.episodes << " daccbs episodes";
    return Outcome{g_bound.violations == 0 && g_bound.episodes > 0, o.str()};
  });
  return g_failed == 0 ? 0 : 1;
}
