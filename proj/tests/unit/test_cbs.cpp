#include "doctest.h"

#include "daccbs/cbs.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace daccbs;

namespace {

AgentGroup everyone(const MapfInstance& inst)
{
  AgentGroup g;
  for (std::size_t a = 0; a < inst.agent_count(); ++a) g.agents.push_back(static_cast<AgentId>(a));
  g.positions = inst.starts();
  return g;
}

Clock::time_point later(int ms = 5000)
{
  return Clock::now() + std::chrono::milliseconds(ms);
}

}  // namespace

TEST_CASE("make_root examples")
{
  auto g = fx::chain(5);
  MapfInstance home(g, {3, 4}, {3, 4});
  CHECK(make_root(home, everyone(home), 8).cost == 0);

  auto single = fx::chain_agent();
  CHECK(make_root(single, everyone(single), 8).cost == 4);

  auto pair = fx::disjoint_chains();
  CHECK(make_root(pair, everyone(pair), 8).cost == 7);
}

TEST_CASE("expand on a vertex conflict")
{
  auto inst = fx::cross();
  auto group = everyone(inst);
  auto root = make_root(inst, group, 6);
  auto c = find_conflict(root, 1, inst.graph().vertex_count());
  REQUIRE(c);
  CHECK(c->kind == Conflict::Kind::Vertex);
  CHECK(c->time == 1);
  auto [a, b] = expand(root, *c, inst, group, 1, 6);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->constraints.back() == Constraint::vertex(0, 1, c->to));
  CHECK(b->constraints.back() == Constraint::vertex(1, 1, c->to));
  CHECK(a->cost == 5);
  CHECK(b->cost == 5);
  CHECK_THROWS_AS(expand(root, *c, inst, group, 0, 6), ContractViolation);
}

TEST_CASE("expand on an edge conflict constrains opposite directions at departure time")
{
  // head-on on a chain: 0 -> 2, 2 -> 0, collide on the edge (1,2)... after one step
  auto g = fx::chain(4);
  MapfInstance inst(g, {1, 2}, {3, 0});
  auto group = everyone(inst);
  auto root = make_root(inst, group, 6);
  auto c = find_conflict(root, 1, 4);
  REQUIRE(c);
  CHECK(c->kind == Conflict::Kind::Edge);
  CHECK(c->time == 1);
  auto [a, b] = expand(root, *c, inst, group, 1, 6);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->constraints.back() == Constraint::edge(0, 0, 1, 2));
  CHECK(b->constraints.back() == Constraint::edge(1, 0, 2, 1));
}

TEST_CASE("expand in a corridor keeps only the feasible child")
{
  auto g = fx::chain(5);
  MapfInstance inst(g, {0, 2}, {4, 0});
  auto group = everyone(inst);
  auto root = make_root(inst, group, 6);
  root.constraints.push_back(Constraint::vertex(0, 1, 0));  // agent 0 may not stay put
  auto c = find_conflict(root, 1, 5);
  REQUIRE(c);
  auto [a, b] = expand(root, *c, inst, group, 1, 6);
  CHECK_FALSE(a);
  CHECK(b);
}

TEST_CASE("run_adaptive on a conflict-free fleet")
{
  auto inst = fx::disjoint_chains();
  int calls = 0;
  auto out = run_adaptive(inst, everyone(inst), 10, later(), [&](const ConstraintTreeNode&, int) { ++calls; });
  CHECK(out.reason == AdaptiveOutcome::Reason::ReachedHorizon);
  CHECK(out.longest_prefix == 10);
  CHECK(out.expansions == 0);
  CHECK(calls >= 1);
}

TEST_CASE("run_adaptive on the cross instance")
{
  auto inst = fx::cross();
  int last = 0;
  auto out = run_adaptive(inst, everyone(inst), 8, later(), [&](const ConstraintTreeNode&, int h) {
    CHECK(h > last);
    last = h;
  });
  REQUIRE(out.node);
  CHECK(out.longest_prefix == 8);
  CHECK(node_cost(*out.node, inst, 8) == 5);
  CHECK_FALSE(find_conflict(*out.node, 8, inst.graph().vertex_count()));
}

TEST_CASE("run_adaptive with no time")
{
  auto inst = fx::cross();
  auto out = run_adaptive(inst, everyone(inst), 8, Clock::now() - std::chrono::seconds(1),
                          [](const ConstraintTreeNode&, int) {});
  CHECK(out.reason == AdaptiveOutcome::Reason::Deadline);
  CHECK(out.longest_prefix == 0);
  CHECK_FALSE(out.node);
}

TEST_CASE("run_classic_cbs examples")
{
  auto single = fx::chain_agent();
  auto s = run_classic_cbs(single);
  CHECK(soc(s, single.goals()) == 4);

  auto cross = fx::cross();
  auto c = run_classic_cbs(cross);
  CHECK(soc(c, cross.goals()) == 5);
  CHECK_FALSE(detect_first_conflict(c, static_cast<int>(c.makespan()), 9));

  // 4-cycle: neighbours on a 2x2 grid trade places
  auto g = fx::open_grid(2, 2);
  MapfInstance swap(g, {fx::at(g, 0, 0), fx::at(g, 0, 1)}, {fx::at(g, 0, 1), fx::at(g, 0, 0)});
  auto w = run_classic_cbs(swap);
  CHECK(soc(w, swap.goals()) == 4);
  CHECK(oracle::optimal_soc(swap).soc == 4);
}

TEST_CASE("run_classic_cbs expansion cap")
{
  auto cross = fx::cross();
  ClassicCbsOptions opts;
  opts.max_expansions = 0;
  CHECK_THROWS_AS(run_classic_cbs(cross, opts), SearchLimitExceeded);
}
