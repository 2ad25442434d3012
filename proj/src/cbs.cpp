#include "daccbs/cbs.hpp"

#include <queue>
#include <string>

namespace daccbs {

JointTrajectory ConstraintTreeNode::prefix(std::size_t upto) const
{
  std::vector<Trajectory> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    Trajectory tr{p->agent, {}};
    tr.vertices.reserve(upto + 1);
    for (std::size_t t = 0; t <= upto; ++t) tr.vertices.push_back(p->at(t));
    out.push_back(std::move(tr));
  }
  return JointTrajectory(std::move(out));
}

JointTrajectory ConstraintTreeNode::joint() const
{
  std::vector<Trajectory> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(*p);
  JointTrajectory j(std::move(out));
  j.pad();
  return j;
}

namespace {

std::optional<Conflict> scan_first(ConflictScanner& scanner, const ConstraintTreeNode& node, int horizon)
{
  return scanner.first(node.paths.size(), horizon,
                       [&](std::size_t i, int t) { return node.paths[i]->at(static_cast<std::size_t>(t)); });
}

std::size_t scan_count(ConflictScanner& scanner, const ConstraintTreeNode& node, int horizon)
{
  return scanner.count(node.paths.size(), horizon,
                       [&](std::size_t i, int t) { return node.paths[i]->at(static_cast<std::size_t>(t)); });
}

ConstraintSet constraints_of(const std::vector<Constraint>& all, AgentId agent)
{
  ConstraintSet cs;
  for (const auto& c : all)
    if (c.agent == agent) cs.insert(c);
  return cs;
}

std::pair<Constraint, Constraint> split(const Conflict& c, const AgentGroup& group)
{
  const AgentId ai = group.agents[c.first];
  const AgentId aj = group.agents[c.second];
  if (c.kind == Conflict::Kind::Vertex) return {Constraint::vertex(ai, c.time, c.to), Constraint::vertex(aj, c.time, c.to)};
  return {Constraint::edge(ai, c.time - 1, c.from, c.to), Constraint::edge(aj, c.time - 1, c.to, c.from)};
}

void check_group(const MapfInstance& instance, const AgentGroup& group)
{
  if (group.agents.size() != group.positions.size()) throw ContractViolation("group agents/positions size mismatch");
  for (std::size_t i = 0; i < group.agents.size(); ++i) {
    const auto a = group.agents[i];
    if (a < 0 || static_cast<std::size_t>(a) >= instance.agent_count())
      throw ContractViolation("agent id " + std::to_string(a) + " out of range");
    if (!instance.graph().valid(group.positions[i]))
      throw ContractViolation("agent " + std::to_string(a) + " at invalid vertex");
  }
}

struct NodeOrder {
  bool operator()(const std::shared_ptr<const ConstraintTreeNode>& a,
                  const std::shared_ptr<const ConstraintTreeNode>& b) const
  {
    if (a->cost != b->cost) return a->cost > b->cost;
    if (a->conflicts != b->conflicts) return a->conflicts > b->conflicts;
    return a->seq > b->seq;
  }
};

using OpenList = std::priority_queue<std::shared_ptr<const ConstraintTreeNode>,
                                     std::vector<std::shared_ptr<const ConstraintTreeNode>>, NodeOrder>;

}  // namespace

std::optional<Conflict> find_conflict(const ConstraintTreeNode& node, int horizon, std::size_t vertex_count)
{
  ConflictScanner scanner(vertex_count);
  return scan_first(scanner, node, horizon);
}

Cost node_cost(const ConstraintTreeNode& node, const MapfInstance& instance, int h_r)
{
  Cost total = 0;
  for (const auto& p : node.paths) {
    const auto& gamma = instance.gamma(p->agent);
    const VertexId goal = instance.goal(p->agent);
    for (int t = 0; t < h_r; ++t)
      if (p->at(t) != goal) ++total;
    total = sat_add(total, gamma[p->at(h_r)]);
  }
  return total;
}

ConstraintTreeNode make_root(const MapfInstance& instance, const AgentGroup& group, int horizon_max)
{
  check_group(instance, group);
  if (horizon_max < 1) throw ContractViolation("H_max must be >= 1");
  ConstraintTreeNode root;
  root.paths.reserve(group.agents.size());
  const ConstraintSet none;
  for (std::size_t i = 0; i < group.agents.size(); ++i) {
    const auto a = group.agents[i];
    if (!is_finite(instance.gamma(a)[group.positions[i]]))
      throw InstanceError("agent " + std::to_string(a) + " cannot reach its goal");
    auto tr = plan_constrained(instance.graph(), a, group.positions[i], none, horizon_max, instance.gamma(a));
    root.paths.push_back(std::make_shared<const Trajectory>(std::move(*tr)));
  }
  root.cost = node_cost(root, instance, 1);
  return root;
}

std::pair<std::optional<ConstraintTreeNode>, std::optional<ConstraintTreeNode>> expand(
    const ConstraintTreeNode& node, const Conflict& conflict, const MapfInstance& instance,
    const AgentGroup& group, int h_r, int horizon_max)
{
  if (conflict.time > h_r)
    throw ContractViolation("conflict at t=" + std::to_string(conflict.time) + " outside active prefix " +
                            std::to_string(h_r));
  const auto [ci, cj] = split(conflict, group);
  ConflictScanner scanner(instance.graph().vertex_count());

  auto child = [&](const Constraint& added, std::size_t member) -> std::optional<ConstraintTreeNode> {
    ConstraintTreeNode n;
    n.constraints = node.constraints;
    n.constraints.push_back(added);
    const auto agent = group.agents[member];
    auto tr = plan_constrained(instance.graph(), agent, group.positions[member], constraints_of(n.constraints, agent),
                               horizon_max, instance.gamma(agent));
    if (!tr) return std::nullopt;
    n.paths = node.paths;
    n.paths[member] = std::make_shared<const Trajectory>(std::move(*tr));
    n.cost = node_cost(n, instance, h_r);
    n.conflicts = scan_count(scanner, n, h_r);
    return n;
  };
  return {child(ci, conflict.first), child(cj, conflict.second)};
}

AdaptiveOutcome run_adaptive(const MapfInstance& instance, const AgentGroup& group, int horizon_max,
                             Clock::time_point deadline, const PrefixCallback& on_prefix_found)
{
  AdaptiveOutcome out;
  auto root = std::make_shared<ConstraintTreeNode>(make_root(instance, group, horizon_max));
  ConflictScanner scanner(instance.graph().vertex_count());

  int h_r = 1;
  std::uint64_t seq = 0;
  root->seq = seq++;
  root->conflicts = scan_count(scanner, *root, h_r);
  OpenList open;
  open.push(std::move(root));

  auto found = [&](const std::shared_ptr<const ConstraintTreeNode>& n, int h) {
    if (h > out.longest_prefix) {
      out.longest_prefix = h;
      out.node = n;
    }
    if (on_prefix_found) on_prefix_found(*n, h);
  };

  bool done = false;
  while (!open.empty()) {
    if (Clock::now() >= deadline) {
      out.reason = AdaptiveOutcome::Reason::Deadline;
      done = true;
      break;
    }
    auto n = open.top();
    open.pop();
    ++out.dequeues;
    auto conflict = scan_first(scanner, *n, h_r);
    if (!conflict) {
      found(n, h_r);
      const int first_clear = h_r;
      while (!conflict && h_r < horizon_max) {
        ++h_r;
        conflict = scan_first(scanner, *n, h_r);
      }
      if (!conflict) {
        // conflict-free over the whole nominal horizon
        if (h_r > first_clear) found(n, h_r);
        out.reason = AdaptiveOutcome::Reason::ReachedHorizon;
        done = true;
        break;
      }
      if (h_r - 1 > first_clear) found(n, h_r - 1);
    }
    auto [left, right] = expand(*n, *conflict, instance, group, h_r, horizon_max);
    ++out.expansions;
    for (auto* child : {&left, &right}) {
      if (!*child) continue;
      (*child)->seq = seq++;
      open.push(std::make_shared<const ConstraintTreeNode>(std::move(**child)));
    }
  }
  if (!done) out.reason = AdaptiveOutcome::Reason::Exhausted;
  out.final_horizon = h_r;
  return out;
}

JointTrajectory run_classic_cbs(const MapfInstance& instance, const AgentGroup& group, const ClassicCbsOptions& options)
{
  check_group(instance, group);
  const auto& graph = instance.graph();
  ConflictScanner scanner(graph.vertex_count());
  auto horizon_of = [](const ConstraintTreeNode& n) {
    std::size_t m = 0;
    for (const auto& p : n.paths) m = std::max(m, p->length() - 1);
    return static_cast<int>(m);
  };
  auto cost_of = [&](const ConstraintTreeNode& n) {
    Cost c = 0;
    for (const auto& p : n.paths)
      for (auto v : p->vertices)
        if (v != instance.goal(p->agent)) ++c;
    return c;
  };

  std::uint64_t seq = 0;
  auto root = std::make_shared<ConstraintTreeNode>();
  const ConstraintSet none;
  for (std::size_t i = 0; i < group.agents.size(); ++i) {
    const auto a = group.agents[i];
    auto tr = plan_to_goal(graph, a, group.positions[i], none, instance.gamma(a));
    if (!tr) throw InstanceError("agent " + std::to_string(a) + " cannot reach its goal");
    root->paths.push_back(std::make_shared<const Trajectory>(std::move(*tr)));
  }
  root->cost = cost_of(*root);
  root->conflicts = scan_count(scanner, *root, horizon_of(*root));
  root->seq = seq++;

  OpenList open;
  open.push(std::move(root));
  std::size_t expansions = 0;
  while (!open.empty()) {
    auto n = open.top();
    open.pop();
    const auto conflict = scan_first(scanner, *n, horizon_of(*n));
    if (!conflict) return n->joint();
    if (options.max_expansions && expansions >= *options.max_expansions)
      throw SearchLimitExceeded("classic CBS exceeded " + std::to_string(*options.max_expansions) + " expansions");
    ++expansions;

    const auto [ci, cj] = split(*conflict, group);
    for (const auto& [added, member] : {std::pair{ci, conflict->first}, std::pair{cj, conflict->second}}) {
      auto child = std::make_shared<ConstraintTreeNode>();
      child->constraints = n->constraints;
      child->constraints.push_back(added);
      const auto agent = group.agents[member];
      auto tr = plan_to_goal(graph, agent, group.positions[member], constraints_of(child->constraints, agent),
                             instance.gamma(agent));
      if (!tr) continue;
      child->paths = n->paths;
      child->paths[member] = std::make_shared<const Trajectory>(std::move(*tr));
      child->cost = cost_of(*child);
      child->conflicts = scan_count(scanner, *child, horizon_of(*child));
      child->seq = seq++;
      open.push(std::move(child));
    }
  }
  throw InstanceError("classic CBS exhausted its constraint tree");
}

JointTrajectory run_classic_cbs(const MapfInstance& instance, const ClassicCbsOptions& options)
{
  AgentGroup group;
  for (std::size_t a = 0; a < instance.agent_count(); ++a) {
    group.agents.push_back(static_cast<AgentId>(a));
    group.positions.push_back(instance.start(static_cast<AgentId>(a)));
  }
  return run_classic_cbs(instance, group, options);
}

}  // namespace daccbs
