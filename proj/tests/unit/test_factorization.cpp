#include "doctest.h"

#include "daccbs/factorization.hpp"
#include "fixtures.hpp"

using namespace daccbs;

TEST_CASE("slackness examples")
{
  auto inst = fx::disjoint_chains();
  CHECK(slackness(inst, {0, 1}, 7, inst.starts()) == 0);
  auto single = fx::separate_chains({5});
  CHECK(slackness(single, {0}, 7, single.starts()) == 3);
  CHECK(slackness(inst, {0, 1}, 0, inst.goals()) == 0);
  CHECK_THROWS_AS(slackness(inst, {0, 1}, 6, inst.starts()), DefectError);
}

TEST_CASE("reachable_region examples")
{
  auto chain = fx::chain_agent();
  CHECK(reachable_region(chain, 0, 0, 0).vertices == std::vector<VertexId>{0, 1, 2, 3, 4});

  auto g = fx::open_grid(5, 5);
  MapfInstance row(g, {fx::at(g, 0, 0)}, {fx::at(g, 0, 4)});
  auto r0 = reachable_region(row, 0, fx::at(g, 0, 0), 0);
  REQUIRE(r0.vertices.size() == 5);
  for (auto v : r0.vertices) CHECK(g.cell(v).row == 0);

  auto r2 = reachable_region(row, 0, fx::at(g, 0, 0), 2);
  REQUIRE(r2.vertices.size() == 10);
  for (auto v : r2.vertices) CHECK(g.cell(v).row <= 1);
  CHECK(r0.subset_of(r2));
  CHECK_FALSE(r2.subset_of(r0));
  CHECK(r2.contains(fx::at(g, 1, 3)));
  CHECK_FALSE(r2.contains(fx::at(g, 2, 3)));
}

TEST_CASE("partition examples")
{
  auto apart = fx::disjoint_chains();
  std::vector<ReachableRegion> rs{reachable_region(apart, 0, 0, 100), reachable_region(apart, 1, 4, 100)};
  CHECK(partition(rs, apart.graph().vertex_count()).groups.size() == 2);

  auto g = fx::open_grid(5, 5);
  MapfInstance rows(g, {fx::at(g, 0, 0), fx::at(g, 4, 0)}, {fx::at(g, 0, 4), fx::at(g, 4, 4)});
  std::vector<ReachableRegion> rr{reachable_region(rows, 0, rows.start(0), 0),
                                  reachable_region(rows, 1, rows.start(1), 0)};
  auto p = partition(rr, 25);
  REQUIRE(p.groups.size() == 2);
  CHECK(p.groups[0] == std::vector<AgentId>{0});
  CHECK(p.groups[1] == std::vector<AgentId>{1});
  CHECK_FALSE(regions_intersect(rr[0], rr[1]));

  std::vector<ReachableRegion> touching{{0, {1, 2, 3}}, {1, {3, 4}}, {2, {7}}};
  auto t = partition(touching, 8);
  REQUIRE(t.groups.size() == 2);
  CHECK(t.groups[0] == std::vector<AgentId>{0, 1});
  CHECK(regions_intersect(touching[0], touching[1]));
}

TEST_CASE("should_refactor examples")
{
  SlacknessRecord r{0, 10, 10};
  CHECK_FALSE(should_refactor(r, 10, 1));
  CHECK(should_refactor(r, 8, 2));
  CHECK_FALSE(should_refactor(r, 9, 2));
  CHECK(should_refactor(SlacknessRecord{}, 5, 1));  // never factorized yet
}

TEST_CASE("disjoint set")
{
  DisjointSet d(5);
  CHECK(d.unite(0, 1));
  CHECK(d.unite(3, 4));
  CHECK_FALSE(d.unite(1, 0));
  CHECK(d.find(0) == d.find(1));
  CHECK(d.find(2) != d.find(3));
  CHECK(d.size(4) == 2);
}

TEST_CASE("a parked agent can step aside for one unit")
{
  // standing on the goal is free: leaving it for one neighbour costs 1
  auto g = fx::open_grid(3, 3);
  MapfInstance parked(g, {fx::at(g, 1, 1)}, {fx::at(g, 1, 1)});
  CHECK(reachable_region(parked, 0, parked.start(0), 0).vertices.size() == 1);
  CHECK(reachable_region(parked, 0, parked.start(0), 1).vertices.size() == 5);

  // passing the goal on the way: 0 -> 2 -> 3 on a chain with goal 2
  auto c = fx::chain(5);
  MapfInstance past(c, {0}, {2});
  CHECK(reachable_region(past, 0, 0, 1).contains(3));
  CHECK_FALSE(reachable_region(past, 0, 0, 0).contains(3));
}

TEST_CASE("regions stay inside the region of a larger slack")
{
  auto g = fx::open_grid(6, 6);
  MapfInstance inst(g, {fx::at(g, 1, 1)}, {fx::at(g, 4, 5)});
  for (Cost s = 0; s < 6; ++s)
    CHECK(reachable_region(inst, 0, inst.start(0), s).subset_of(reachable_region(inst, 0, inst.start(0), s + 1)));
}
