#include "daccbs/backup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace daccbs {

namespace {

struct ConfigHash {
  std::size_t operator()(const Configuration& q) const
  {
    std::size_t h = q.size();
    for (auto v : q) h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class Pibt {
 public:
  Pibt(const MapfInstance& instance, const std::vector<AgentId>& agents)
      : instance_(instance),
        agents_(agents),
        occ_now_(instance.graph().vertex_count(), -1),
        occ_next_(instance.graph().vertex_count(), -1)
  {
  }

  std::optional<Configuration> step(const Configuration& current, std::span<const std::size_t> order,
                                    std::span<const ForcedMove> forced, std::mt19937& rng)
  {
    const auto& graph = instance_.graph();
    const auto n = agents_.size();
    cur_ = &current;
    next_.assign(n, kNoVertex);
    rng_ = &rng;
    for (std::size_t i = 0; i < n; ++i) occ_now_[current[i]] = static_cast<int>(i);

    bool ok = true;
    for (const auto& f : forced) {
      const auto i = f.member;
      if (i >= n || !graph.valid(f.to) || !graph.adjacent(current[i], f.to) || next_[i] != kNoVertex ||
          occ_next_[f.to] != -1) {
        ok = false;
        break;
      }
      // the agent now at f.to already committed to our vertex: swap
      const int k = occ_now_[f.to];
      if (k != -1 && next_[k] == current[i]) {
        ok = false;
        break;
      }
      next_[i] = f.to;
      occ_next_[f.to] = static_cast<int>(i);
    }
    if (ok) {
      for (auto i : order) {
        if (next_[i] != kNoVertex) continue;
        if (!push(i)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ok = valid();

    for (std::size_t i = 0; i < n; ++i) {
      occ_now_[current[i]] = -1;
      if (next_[i] != kNoVertex) occ_next_[next_[i]] = -1;
    }
    // stale reservations from abandoned candidates
    for (auto v : touched_) occ_next_[v] = -1;
    touched_.clear();
    if (!ok) return std::nullopt;
    return next_;
  }

 private:
  bool push(std::size_t i)
  {
    const auto& graph = instance_.graph();
    const auto& gamma = instance_.gamma(agents_[i]);
    const VertexId here = (*cur_)[i];
    const auto nbrs = graph.neighbors(here);
    cand_.assign(nbrs.begin(), nbrs.end());
    std::uniform_real_distribution<double> tie(0.0, 1.0);
    keys_.clear();
    for (auto u : cand_) keys_.push_back(static_cast<double>(gamma[u]) + tie(*rng_) * 0.5);
    std::vector<std::size_t> idx(cand_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
    const std::vector<VertexId> ordered = [&] {
      std::vector<VertexId> o;
      for (auto k : idx) o.push_back(cand_[k]);
      return o;
    }();

    for (auto u : ordered) {
      if (occ_next_[u] != -1) continue;
      const int k = occ_now_[u];
      if (k != -1 && next_[k] == here) continue;
      occ_next_[u] = static_cast<int>(i);
      touched_.push_back(u);
      next_[i] = u;
      if (k != -1 && static_cast<std::size_t>(k) != i && next_[k] == kNoVertex && !push(static_cast<std::size_t>(k)))
        continue;
      return true;
    }
    occ_next_[here] = static_cast<int>(i);
    touched_.push_back(here);
    next_[i] = here;
    return false;
  }

  bool valid() const
  {
    const auto& graph = instance_.graph();
    std::unordered_map<VertexId, std::size_t> at;
    for (std::size_t i = 0; i < next_.size(); ++i) {
      if (next_[i] == kNoVertex || !graph.adjacent((*cur_)[i], next_[i])) return false;
      if (!at.emplace(next_[i], i).second) return false;
    }
    for (std::size_t i = 0; i < next_.size(); ++i) {
      const auto it = at.find((*cur_)[i]);
      if (it == at.end() || it->second == i) continue;
      if (next_[i] == (*cur_)[it->second] && next_[i] != (*cur_)[i]) return false;
    }
    return true;
  }

  const MapfInstance& instance_;
  const std::vector<AgentId>& agents_;
  std::vector<int> occ_now_;
  std::vector<int> occ_next_;
  std::vector<VertexId> touched_;
  const Configuration* cur_ = nullptr;
  Configuration next_;
  std::vector<VertexId> cand_;
  std::vector<double> keys_;
  std::mt19937* rng_ = nullptr;
};

std::vector<std::size_t> priority_order(std::span<const double> priorities, const std::vector<AgentId>& agents)
{
  std::vector<std::size_t> order(priorities.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (priorities[a] != priorities[b]) return priorities[a] > priorities[b];
    return agents[a] < agents[b];
  });
  return order;
}

// lazy constraint: fix member order[0..depth) to where[0..depth)
struct LowNode {
  std::vector<ForcedMove> fixed;
};

struct HighNode {
  Configuration config;
  const HighNode* parent = nullptr;
  std::size_t depth = 0;
  std::size_t id = 0;
  std::vector<double> priorities;
  std::vector<std::size_t> order;
  std::deque<LowNode> pending;
  std::vector<std::size_t> links;  // every configuration reached from here in one step
};

// Joint moves are reversible on symmetric graphs, so every discovered
// transition is usable both ways. Dijkstra over them, a step costing the
// number of off-goal agents, replaces the DFS chain by the cheapest route
// through what the search has already seen.
std::vector<const HighNode*> cheapest_chain(const std::vector<std::unique_ptr<HighNode>>& arena,
                                            const Configuration& goals, std::size_t target)
{
  const auto m = arena.size();
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& h : arena)
    for (auto k : h->links) {
      adj[h->id].push_back(k);
      adj[k].push_back(h->id);
    }
  auto off = [&](std::size_t id) {
    Cost c = 0;
    for (std::size_t i = 0; i < goals.size(); ++i) c += arena[id]->config[i] != goals[i];
    return c;
  };
  std::vector<Cost> dist(m, kInfinity);
  std::vector<std::size_t> prev(m, m);
  using Item = std::pair<Cost, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0;
  pq.push({0, 0});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    if (u == target) break;
    const Cost w = off(u);
    for (auto v : adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        prev[v] = u;
        pq.push({dist[v], v});
      }
  }
  std::vector<const HighNode*> chain;
  for (auto u = target; u != m; u = prev[u]) chain.push_back(arena[u].get());
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

std::optional<Configuration> next_configuration(const MapfInstance& instance, const std::vector<AgentId>& agents,
                                                const Configuration& current, std::span<const double> priorities,
                                                std::span<const ForcedMove> forced, std::mt19937& rng)
{
  if (current.size() != agents.size() || priorities.size() != agents.size())
    throw ContractViolation("configuration, agents and priorities must have equal sizes");
  Pibt pibt(instance, agents);
  const auto order = priority_order(priorities, agents);
  return pibt.step(current, order, forced, rng);
}

JointTrajectory LacamBackup::rollout(const MapfInstance& instance, const AgentGroup& group) const
{
  const auto& graph = instance.graph();
  if (!supports(graph)) throw InstanceError("lacam-ref requires a symmetric graph");
  if (group.agents.size() != group.positions.size()) throw ContractViolation("group agents/positions size mismatch");
  const auto n = group.agents.size();
  Configuration goals(n);
  for (std::size_t i = 0; i < n; ++i) {
    goals[i] = instance.goal(group.agents[i]);
    if (!is_finite(instance.gamma(group.agents[i])[group.positions[i]]))
      throw InstanceError("agent " + std::to_string(group.agents[i]) + " cannot reach its goal");
  }
  const std::size_t makespan_cap = std::max<std::size_t>(1, graph.vertex_count() * n * 4);

  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed_ ^ 0x5bd1e995u));
  Pibt pibt(instance, group.agents);
  std::vector<std::unique_ptr<HighNode>> arena;
  std::unordered_map<Configuration, HighNode*, ConfigHash> explored;
  std::vector<HighNode*> open;

  auto make_node = [&](Configuration q, const HighNode* parent) {
    auto h = std::make_unique<HighNode>();
    h->config = std::move(q);
    h->parent = parent;
    h->depth = parent ? parent->depth + 1 : 0;
    h->id = arena.size();
    h->priorities.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = static_cast<double>(instance.gamma(group.agents[i])[h->config[i]]);
      if (!parent) {
        h->priorities[i] = d / static_cast<double>(graph.vertex_count() + 1);
      } else if (h->config[i] != goals[i]) {
        h->priorities[i] = parent->priorities[i] + 1.0;
      } else {
        h->priorities[i] = parent->priorities[i] - std::floor(parent->priorities[i]);
      }
    }
    h->order = priority_order(h->priorities, group.agents);
    h->pending.push_back(LowNode{});
    auto* raw = h.get();
    explored.emplace(raw->config, raw);
    arena.push_back(std::move(h));
    return raw;
  };

  open.push_back(make_node(group.positions, nullptr));
  const HighNode* solved = nullptr;
  while (!open.empty()) {
    auto* h = open.back();
    if (h->config == goals) {
      solved = h;
      break;
    }
    if (h->pending.empty()) {
      open.pop_back();
      continue;
    }
    LowNode low = std::move(h->pending.front());
    h->pending.pop_front();
    if (low.fixed.size() < n) {
      const auto member = h->order[low.fixed.size()];
      auto nbrs = graph.neighbors(h->config[member]);
      std::vector<VertexId> cands(nbrs.begin(), nbrs.end());
      std::shuffle(cands.begin(), cands.end(), rng);
      for (auto u : cands) {
        LowNode child = low;
        child.fixed.push_back({member, u});
        h->pending.push_back(std::move(child));
      }
    }
    auto q = pibt.step(h->config, h->order, low.fixed, rng);
    if (!q) continue;
    if (auto it = explored.find(*q); it != explored.end()) {
      h->links.push_back(it->second->id);
      continue;
    }
    if (max_nodes_ > 0 && arena.size() >= max_nodes_)
      throw BackupFailure("lacam-ref gave up after " + std::to_string(max_nodes_) + " configurations");
    auto* child = make_node(std::move(*q), h);
    h->links.push_back(child->id);
    open.push_back(child);
  }
  if (!solved) throw BackupFailure("lacam-ref found no solution (infeasible sub-instance)");

  const auto chain = cheapest_chain(arena, goals, solved->id);
  if (chain.size() - 1 > makespan_cap)
    throw DefectError("lacam-ref rollout makespan " + std::to_string(chain.size() - 1) + " exceeds safety cap " +
                      std::to_string(makespan_cap));

  std::vector<Trajectory> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].agent = group.agents[i];
    out[i].vertices.reserve(chain.size());
    for (auto* h : chain) out[i].vertices.push_back(h->config[i]);
  }
  JointTrajectory joint(std::move(out));
  joint.trim();
  return joint;
}

JointTrajectory CbsBackup::rollout(const MapfInstance& instance, const AgentGroup& group) const
{
  try {
    auto joint = run_classic_cbs(instance, group, ClassicCbsOptions{max_expansions_});
    joint.trim();
    return joint;
  } catch (const SearchLimitExceeded&) {
    return fallback_.rollout(instance, group);
  }
}

std::unique_ptr<BackupController> make_backup(std::string_view name, std::uint64_t seed)
{
  if (name == "lacam-ref") return std::make_unique<LacamBackup>(seed);
  if (name == "cbs-full") return std::make_unique<CbsBackup>(seed);
  throw std::invalid_argument("unknown backup controller '" + std::string(name) + "'");
}

}  // namespace daccbs
