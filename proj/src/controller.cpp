#include "daccbs/controller.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace daccbs {

std::string to_string(Mode mode)
{
  switch (mode) {
    case Mode::Daccbs:
      return "daccbs";
    case Mode::Accbs:
      return "accbs";
    case Mode::BackupOnly:
      return "backup-only";
  }
  return "?";
}

Mode mode_from_string(const std::string& name)
{
  if (name == "daccbs") return Mode::Daccbs;
  if (name == "accbs") return Mode::Accbs;
  if (name == "backup-only") return Mode::BackupOnly;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

namespace {

Clock::time_point deadline_after(double ms)
{
  return Clock::now() + std::chrono::microseconds(static_cast<std::int64_t>(ms * 1000.0));
}

double elapsed_ms(Clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <class Fn>
void run_tasks(std::size_t count, std::size_t threads, Fn fn)
{
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(threads, count); ++w)
    pool.emplace_back([&] {
      for (auto i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<GroupState> split_group(const GroupState& group, const GroupPartition& parts, const MapfInstance& instance,
                                    const std::vector<VertexId>& state)
{
  std::unordered_map<AgentId, std::size_t> member;
  for (std::size_t i = 0; i < group.certificate.trajectories.size(); ++i)
    member[group.certificate.trajectories[i].agent] = i;

  std::vector<GroupState> out;
  for (const auto& agents : parts.groups) {
    GroupState g;
    g.agents = agents;
    std::vector<Trajectory> trs;
    for (auto a : agents) trs.push_back(group.certificate.trajectories[member.at(a)]);
    g.certificate.trajectories = JointTrajectory(std::move(trs));
    g.certificate.trajectories.trim();
    g.certificate.budget = certificate_cost(g.certificate.trajectories, instance);
    const Cost s = slackness(instance, agents, g.certificate.budget, state);
    g.slack_record = {g.id(), s, s};
    out.push_back(std::move(g));
  }
  return out;
}

Controller::Controller(const MapfInstance& instance, ControllerConfig config)
    : instance_(instance), config_(std::move(config)), backup_(make_backup(config_.backup, config_.seed))
{
  if (config_.horizon_max < 1) throw std::invalid_argument("H_max must be >= 1");
  if (config_.step_budget_ms < 0) throw std::invalid_argument("t_max must be >= 0");
  if (config_.threads == 0) config_.threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<AgentId> all(instance_.agent_count());
  for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<AgentId>(a);
  if (all.empty()) return;

  auto cert = init_certificate(*backup_, instance_, instance_.starts(), all);
  initial_budget_ = cert.budget;
  if (config_.mode == Mode::Accbs) return;
  GroupState g;
  g.agents = all;
  g.certificate = std::move(cert);
  g.slack_record = {g.id(), slackness(instance_, all, g.certificate.budget, instance_.starts()), kInfinity};
  groups_.push_back(std::move(g));
}

std::optional<Cost> Controller::total_budget() const
{
  if (config_.mode == Mode::Accbs) return std::nullopt;
  Cost b = 0;
  for (const auto& g : groups_) b += g.certificate.budget;
  return b;
}

Controller::GroupOutcome Controller::plan_group(GroupState group, const std::vector<VertexId>& state, int t,
                                                double budget_ms) const
{
  GroupOutcome out;
  auto& tele = out.telemetry;
  tele.group_id = group.id();
  tele.size = group.agents.size();

  if (config_.mode == Mode::Daccbs) {
    AgentGroup view{group.agents, {}};
    for (auto a : group.agents) view.positions.push_back(state[a]);
    const auto deadline = deadline_after(budget_ms);
    auto on_prefix = [&](const ConstraintTreeNode& node, int h) {
      auto candidate = build_candidate(node.prefix(static_cast<std::size_t>(h)), *backup_, instance_);
      if (!candidate) return;
      auto [cert, improved] = try_improve(group.certificate, std::move(*candidate), instance_);
      if (improved) {
        group.certificate = std::move(cert);
        tele.improved = true;
      }
    };
    const auto outcome = run_adaptive(instance_, view, config_.horizon_max, deadline, on_prefix);
    tele.horizon_reached = outcome.longest_prefix;
    tele.expansions = outcome.expansions;

    const Cost s = slackness(instance_, group.agents, group.certificate.budget, state);
    group.slack_record.slackness = s;
    if (should_refactor(group.slack_record, s, config_.slack_threshold)) {
      std::vector<ReachableRegion> regions;
      for (auto a : group.agents) regions.push_back(reachable_region(instance_, a, state[a], s));
      const auto parts = partition(regions, instance_.graph().vertex_count());
      FactorizationEvent ev{t, group.id(), s, {}};
      for (const auto& p : parts.groups) ev.subgroup_sizes.push_back(p.size());
      out.events.push_back(std::move(ev));
      if (parts.groups.size() > 1) {
        tele.budget = group.certificate.budget;
        out.groups = split_group(group, parts, instance_, state);
        return out;
      }
      group.slack_record.slack_at_last_factorization = s;
    }
  }
  tele.budget = group.certificate.budget;
  out.groups.push_back(std::move(group));
  return out;
}

StepResult Controller::plan_step_accbs(const std::vector<VertexId>& state, int t) const
{
  StepResult res;
  res.telemetry.t = t;
  const auto n = instance_.agent_count();
  AgentGroup view;
  for (std::size_t a = 0; a < n; ++a) {
    view.agents.push_back(static_cast<AgentId>(a));
    view.positions.push_back(state[a]);
  }
  GroupTelemetry tele{0, n, 0, 0, false, 0};
  Movement m;
  if (n > 0) {
    const auto outcome =
        run_adaptive(instance_, view, config_.horizon_max, deadline_after(config_.step_budget_ms), {});
    tele.horizon_reached = outcome.longest_prefix;
    tele.expansions = outcome.expansions;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = static_cast<AgentId>(i);
      const VertexId to = outcome.longest_prefix > 0 ? outcome.node->paths[i]->at(1) : state[a];
      m.push_back({a, state[a], to});
    }
  }
  res.movement = std::move(m);
  res.telemetry.groups.push_back(tele);
  res.telemetry.group_count = 1;
  res.telemetry.max_group_size = n;
  return res;
}

StepResult Controller::plan_step(const std::vector<VertexId>& state, int t)
{
  const auto began = Clock::now();
  if (state.size() != instance_.agent_count()) throw ContractViolation("state size differs from agent count");
  if (config_.mode == Mode::Accbs) {
    auto res = plan_step_accbs(state, t);
    res.telemetry.plan_ms = elapsed_ms(began);
    return res;
  }

  if (started_)
    for (auto& g : groups_) g.certificate = advance(g.certificate, instance_, state);
  started_ = true;

  const bool parallel = config_.parallel_groups && config_.threads > 1;
  const double per_group_ms =
      parallel || groups_.empty() ? config_.step_budget_ms : config_.step_budget_ms / static_cast<double>(groups_.size());

  std::vector<GroupOutcome> outcomes(groups_.size());
  run_tasks(groups_.size(), parallel ? config_.threads : 1,
            [&](std::size_t i) { outcomes[i] = plan_group(std::move(groups_[i]), state, t, per_group_ms); });

  StepResult res;
  auto& tele = res.telemetry;
  tele.t = t;
  std::vector<GroupState> next;
  for (auto& o : outcomes) {
    tele.improved = tele.improved || o.telemetry.improved;
    tele.groups.push_back(o.telemetry);
    for (auto& e : o.events) tele.factorizations.push_back(std::move(e));
    for (auto& g : o.groups) next.push_back(std::move(g));
  }
  std::sort(next.begin(), next.end(), [](const GroupState& a, const GroupState& b) { return a.id() < b.id(); });
  groups_ = std::move(next);

  for (const auto& g : groups_) {
    auto m = first_movement(g.certificate);
    res.movement.insert(res.movement.end(), m.begin(), m.end());
    tele.max_group_size = std::max(tele.max_group_size, g.agents.size());
  }
  std::sort(res.movement.begin(), res.movement.end(), [](const Move& a, const Move& b) { return a.agent < b.agent; });
  tele.budget = total_budget();
  tele.group_count = groups_.size();

  if (config_.check_invariants) check_invariants(state);
  tele.plan_ms = elapsed_ms(began);
  return res;
}

void Controller::check_invariants(const std::vector<VertexId>& state)
{
  std::vector<ReachableRegion> regions(instance_.agent_count());
  std::vector<std::size_t> group_of(instance_.agent_count());
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const auto& g = groups_[gi];
    validate_certificate(g.certificate, instance_, state);
    const Cost s = slackness(instance_, g.agents, g.certificate.budget, state);
    for (auto a : g.agents) {
      regions[a] = reachable_region(instance_, a, state[a], s);
      group_of[a] = gi;
    }
  }
  if (!previous_regions_.empty())
    for (std::size_t a = 0; a < regions.size(); ++a)
      if (!regions[a].subset_of(previous_regions_[a]))
        throw DefectError("reachable region of agent " + std::to_string(a) + " grew");

  // cross-group disjointness via vertex ownership
  std::vector<std::size_t> owner(instance_.graph().vertex_count(), groups_.size());
  for (std::size_t a = 0; a < regions.size(); ++a)
    for (auto v : regions[a].vertices) {
      if (owner[v] == groups_.size())
        owner[v] = group_of[a];
      else if (owner[v] != group_of[a])
        throw DefectError("regions of different groups intersect at vertex " + std::to_string(v));
    }
  previous_regions_ = std::move(regions);
}

}  // namespace daccbs
