#include <gtest/gtest.h>

#include "hetnet/errors.hpp"
#include "hetnet/partition.hpp"

namespace hetnet {
namespace {

TEST(Partition, CanonicalNumberingBySmallestLabel) {
  const Partition p({"c", "a", "b", "d"}, std::vector<std::size_t>{9, 4, 9, 4});
  // {a, d} holds "a" so it becomes community 0.
  EXPECT_EQ(p.community_of(1), 0u);
  EXPECT_EQ(p.community_of(3), 0u);
  EXPECT_EQ(p.community_of(0), 1u);
  EXPECT_EQ(p.community_count(), 2u);
  EXPECT_EQ(p.community_sizes(), (std::vector<std::size_t>{2, 2}));
}

TEST(Partition, EqualityIgnoresInputIds) {
  const Partition a({"x", "y", "z"}, std::vector<std::size_t>{0, 1, 1});
  const Partition b({"x", "y", "z"}, std::vector<std::size_t>{5, 2, 2});
  EXPECT_EQ(a, b);
}

TEST(Partition, MembersAreAscending) {
  const Partition p({"a", "b", "c", "d", "e"}, std::vector<std::size_t>{1, 0, 1, 0, 2});
  const auto m = p.members();
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(m[1], (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(m[2], (std::vector<std::size_t>{4}));
}

TEST(Partition, ReorderedAndRestricted) {
  const Partition p({"a", "b", "c", "d"}, std::vector<std::size_t>{0, 0, 1, 1});
  const Partition r = p.reordered({"d", "c", "b", "a"});
  EXPECT_EQ(r.labels(), (std::vector<std::string>{"d", "c", "b", "a"}));
  EXPECT_TRUE(same_grouping(p, r));
  const Partition s = p.restricted({"c", "a"});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.community_count(), 2u);
  EXPECT_THROW(p.reordered({"a", "b"}), PartitionMismatchError);
  EXPECT_THROW(p.restricted({"zz"}), PartitionMismatchError);
}

TEST(Partition, SameGroupingDetectsDifferences) {
  const Partition p({"a", "b", "c"}, std::vector<std::size_t>{0, 0, 1});
  const Partition q({"c", "b", "a"}, std::vector<std::size_t>{0, 1, 1});
  const Partition r({"c", "b", "a"}, std::vector<std::size_t>{0, 0, 1});
  EXPECT_TRUE(same_grouping(p, q));
  EXPECT_FALSE(same_grouping(p, r));
}

TEST(Partition, RejectsBadInput) {
  EXPECT_THROW(Partition({"a", "b"}, std::vector<std::size_t>{0}), PartitionMismatchError);
  EXPECT_THROW(Partition({"a", "a"}, std::vector<std::size_t>{0, 1}), DataError);
}

}  // namespace
}  // namespace hetnet
