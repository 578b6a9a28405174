#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace quiverhw;
using namespace quiverhw::testing;

namespace {

std::vector<std::string> names(const Quiver& q, const std::vector<Path>& ps)
{
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(path_name(q, p));
    return out;
}

const Quiver two_cycle(2, {{"a", 1, 2}, {"b", 2, 1}});
const Quiver chain3(3, {{"a", 1, 2}, {"b", 2, 1}, {"g", 2, 3}, {"d", 3, 2}});

} // namespace

TEST(Quiver, RejectsBadArrows)
{
    EXPECT_THROW(Quiver(2, {{"a", 1, 3}}), std::invalid_argument);
    EXPECT_THROW(Quiver(2, {{"a", 1, 2}, {"a", 2, 1}}), std::invalid_argument);
    EXPECT_NO_THROW(Quiver(1, {{"l", 1, 1}}));
    EXPECT_TRUE(Quiver(1, {{"l", 1, 1}}).has_loops());
    EXPECT_FALSE(two_cycle.has_loops());
}

TEST(Quiver, ComposeWithIdentity)
{
    const Path a = path(two_cycle, {"a"});
    EXPECT_EQ(compose_paths(two_cycle, Path::trivial_at(1), a), a);
    EXPECT_EQ(compose_paths(two_cycle, a, Path::trivial_at(2)), a);
    EXPECT_FALSE(compose_paths(two_cycle, a, a).has_value());
}

TEST(Quiver, ComposeCycle)
{
    const auto ba = compose_paths(two_cycle, path(two_cycle, {"b"}), path(two_cycle, {"a"}));
    ASSERT_TRUE(ba);
    EXPECT_EQ(path_name(two_cycle, *ba), "b*a");
    EXPECT_EQ(ba->source, 2);
    EXPECT_EQ(ba->target(two_cycle), 2);
}

TEST(Quiver, ComposeThroughMiddleVertex)
{
    const auto ag = compose_paths(chain3, path(chain3, {"a"}), path(chain3, {"g"}));
    ASSERT_TRUE(ag);
    EXPECT_EQ(ag->source, 1);
    EXPECT_EQ(ag->target(chain3), 3);
}

TEST(Quiver, ComposeIsAssociative)
{
    std::mt19937 rng(7);
    const auto paths = enumerate_paths(chain3, 3);
    std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
    for (int t = 0; t < 500; ++t) {
        const Path &x = paths[pick(rng)], &y = paths[pick(rng)], &z = paths[pick(rng)];
        const auto xy = compose_paths(chain3, x, y);
        const auto yz = compose_paths(chain3, y, z);
        if (!xy || !yz) continue;
        EXPECT_EQ(compose_paths(chain3, *xy, z), compose_paths(chain3, x, *yz));
    }
}

TEST(Quiver, EnumeratePaths)
{
    EXPECT_EQ(names(two_cycle, enumerate_paths(two_cycle, 2)),
              (std::vector<std::string>{"e1", "e2", "a", "b", "a*b", "b*a"}));
    EXPECT_EQ(names(chain3, enumerate_paths(chain3, 2, 2)),
              (std::vector<std::string>{"e1", "e2", "a", "b", "a*b", "b*a"}));
    EXPECT_EQ(names(chain3, enumerate_paths(chain3, 0)), (std::vector<std::string>{"e1", "e2", "e3"}));
}

TEST(Quiver, EnumeratePathsIsMonotone)
{
    auto subset = [](const std::vector<Path>& a, const std::vector<Path>& b) {
        return std::all_of(a.begin(), a.end(), [&](const Path& p) { return std::find(b.begin(), b.end(), p) != b.end(); });
    };
    for (std::size_t len = 0; len <= 4; ++len)
        for (int k = 1; k <= 3; ++k) {
            EXPECT_TRUE(subset(enumerate_paths(chain3, len, k), enumerate_paths(chain3, len, k + 1)));
            EXPECT_TRUE(subset(enumerate_paths(chain3, len, k), enumerate_paths(chain3, len + 1, k)));
        }
}

TEST(Quiver, EnumerateUnderNonNaturalOrdering)
{
    const Ordering o({3, 2, 1});
    EXPECT_EQ(names(chain3, enumerate_paths(chain3, 2, 2, o)),
              (std::vector<std::string>{"e2", "e3", "g", "d", "g*d", "d*g"}));
}

TEST(Quiver, Orderings)
{
    const Ordering o({2, 3, 1});
    EXPECT_EQ(o.vertex_at(1), 2);
    EXPECT_EQ(o.position_of(1), 3);
    EXPECT_THROW(Ordering({1, 1}), std::invalid_argument);
    EXPECT_THROW(Ordering({1, 3}), std::invalid_argument);
}

TEST(Quiver, MaximalVertexOfCycleIsExternal)
{
    const auto c = classify_maximal_vertices(two_cycle, path(two_cycle, {"b", "a"}), Ordering::natural(2));
    EXPECT_EQ(c.max_vertex, 2);
    ASSERT_EQ(c.positions.size(), 2u);
    EXPECT_TRUE(c.all_external());
}

TEST(Quiver, MaximalVertexInsideIsInternal)
{
    const auto c = classify_maximal_vertices(two_cycle, path(two_cycle, {"a", "b"}), Ordering::natural(2));
    EXPECT_EQ(c.max_vertex, 2);
    ASSERT_EQ(c.positions.size(), 1u);
    EXPECT_EQ(c.positions[0].role, VertexRole::internal);
}

TEST(Quiver, MaximalVertexMixedRoles)
{
    const auto c = classify_maximal_vertices(two_cycle, path(two_cycle, {"a", "b", "a"}), Ordering::natural(2));
    EXPECT_EQ(c.max_vertex, 2);
    ASSERT_EQ(c.positions.size(), 2u);
    EXPECT_EQ(c.positions[0].role, VertexRole::internal);
    EXPECT_EQ(c.positions[1].role, VertexRole::external);
    EXPECT_FALSE(c.all_external());
}

TEST(Quiver, ClassificationRejectsTrivialPaths)
{
    EXPECT_THROW(classify_maximal_vertices(two_cycle, Path::trivial_at(1), Ordering::natural(2)), std::invalid_argument);
}

TEST(Quiver, RoleCountsMatchLength)
{
    for (const auto& p : enumerate_paths(chain3, 5)) {
        if (p.trivial()) continue;
        const auto roles = vertex_roles(chain3, p);
        const auto internal = std::count_if(roles.begin(), roles.end(),
                                            [](const auto& r) { return r.second.role == VertexRole::internal; });
        EXPECT_EQ(static_cast<std::size_t>(internal), p.length() - 1);
        EXPECT_EQ(roles.size() - static_cast<std::size_t>(internal), 2u);
    }
}

TEST(Quiver, ReversalIsInvolution)
{
    const Quiver op = chain3.opposite();
    for (const auto& p : enumerate_paths(chain3, 4)) {
        if (p.trivial()) continue;
        const Path r = reverse_path(chain3, p);
        EXPECT_TRUE(is_valid_path(op, r));
        EXPECT_EQ(reverse_path(op, r), p);
    }
}
