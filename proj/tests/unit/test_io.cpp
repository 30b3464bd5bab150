#include <gtest/gtest.h>

#include <filesystem>

#include "hreg/errors.hpp"
#include "hreg/io.hpp"
#include "hreg/random.hpp"

using namespace hreg;

namespace {

struct Failure {
  ErrorCode code;
  std::string message;
};

template <typename F>
Failure failure_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  ADD_FAILURE() << "no error thrown";
  return {ErrorCode::Format, ""};
}

BipartiteGraph random_graph(Rng& rng, std::uint32_t a, std::uint32_t b) {
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < a; ++l)
    for (std::uint32_t r = 0; r < b; ++r)
      if (rng.chance(1, 2)) e.push_back({l, r});
  return BipartiteGraph({0, a}, {1, b}, e);
}

}  // namespace

TEST(GraphFormat, RoundTripIsByteIdentical) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto g = random_graph(rng, 1 + rng.below(9), 1 + rng.below(9));
    const std::string text = format_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(format_graph(parse_graph(text)), text);
  }
}

TEST(GraphFormat, CommentsAndUnsortedInputCanonicalize) {
  const auto g = parse_graph("# a comment\nbg 2 2 2\n1 0  # trailing\n0 1\n");
  EXPECT_EQ(format_graph(g), "bg 2 2 2\n0 1\n1 0\n");
}

TEST(GraphFormat, Errors) {
  auto bad = failure_of([] { parse_graph("bg 2 2 2\n0 0\n0 0\n"); });
  EXPECT_EQ(bad.code, ErrorCode::DuplicateEdge);
  EXPECT_NE(bad.message.find("line 3"), std::string::npos);
  bad = failure_of([] { parse_graph("bg 2 2 1\n5 0\n"); });
  EXPECT_EQ(bad.code, ErrorCode::IndexOutOfRange);
  EXPECT_NE(bad.message.find("line 2"), std::string::npos);
  bad = failure_of([] { parse_graph("bg 2 two 1\n"); });
  EXPECT_EQ(bad.code, ErrorCode::Format);
  EXPECT_NE(bad.message.find("line 1"), std::string::npos);
  EXPECT_EQ(failure_of([] { parse_graph("bg 2 2 2\n0 0\n"); }).code, ErrorCode::Format);
  EXPECT_EQ(failure_of([] { parse_graph("bg 2 2 1\n0 0\n1 1\n"); }).code, ErrorCode::Format);
}

TEST(ThreeGraphFormat, RoundTripAndDuplicate) {
  const std::string text = "h3 2 2 2 3\n0 0 1\n0 1 0\n1 1 1\n";
  EXPECT_EQ(format_threegraph(parse_threegraph(text)), text);
  const auto dup = failure_of([] { parse_threegraph("h3 2 2 2 3\n0 0 1\n\n# x\n1 1 1\n0 0 1\n"); });
  EXPECT_EQ(dup.code, ErrorCode::DuplicateEdge);
  EXPECT_NE(dup.message.find("line 6"), std::string::npos);
}

TEST(PartitionFormat, RoundTripAndErrors) {
  const std::string text = "vp 5 2\n0 1 1 0 1\n";
  EXPECT_EQ(format_partition(parse_partition(text)), text);
  EXPECT_EQ(failure_of([] { parse_partition("vp 3 2\n0 2 1\n"); }).code, ErrorCode::IndexOutOfRange);
  // label 1 unused
  const auto gap = failure_of([] { parse_partition("vp 3 3\n0 2 2\n"); });
  EXPECT_NE(gap.message.find("line 2"), std::string::npos);
}

TEST(TriadFormat, RoundTripAndMismatch) {
  const std::string text =
      "tr 1 2 2\n"
      "bg 1 2 1\n0 1\n"
      "bg 1 2 2\n0 0\n0 1\n"
      "bg 2 2 1\n1 1\n";
  const Triad t = parse_triad(text);
  EXPECT_EQ(format_triad(t), text);
  EXPECT_EQ(t.c().id, 2u);
  const auto bad = failure_of([] { parse_triad("tr 1 2 2\nbg 1 2 0\nbg 1 3 0\nbg 2 2 0\n"); });
  EXPECT_EQ(bad.code, ErrorCode::ClassMismatch);
  EXPECT_NE(bad.message.find("line 3"), std::string::npos);
}

TEST(TwoPartitionFormat, RoundTrip) {
  const std::string text =
      "tp 2 1 2\n"
      "vp 3 2\n0 1 1\n"
      "pair 0 1\nbg 1 2 1\n0 0\n"
      "pair 0 1\nbg 1 2 1\n0 1\n";
  EXPECT_EQ(format_twopartition(parse_twopartition(text)), text);
}

TEST(TwoPartitionFormat, MissingEdgeNamesClusterPair) {
  const std::string text =
      "tp 2 1 2\n"
      "vp 3 2\n0 1 1\n"
      "pair 0 1\nbg 1 2 1\n0 0\n";
  const auto f = failure_of([&] { parse_twopartition(text); });
  EXPECT_EQ(f.code, ErrorCode::InvariantViolation);
  EXPECT_NE(f.message.find("line 4"), std::string::npos);
  EXPECT_NE(f.message.find("cluster pair (0,1)"), std::string::npos);
}

TEST(TwoPartitionFormat, OverlapIsNotDisjoint) {
  const std::string text =
      "tp 2 1 2\n"
      "vp 3 2\n0 1 1\n"
      "pair 0 1\nbg 1 2 2\n0 0\n0 1\n"
      "pair 0 1\nbg 1 2 1\n0 1\n";
  EXPECT_EQ(failure_of([&] { parse_twopartition(text); }).code, ErrorCode::NotDisjoint);
}

TEST(Files, SaveLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "hreg_io_test";
  std::filesystem::create_directories(dir);
  Rng rng(2);
  const auto g = random_graph(rng, 5, 6);
  save_graph(dir / "g.bg", g);
  EXPECT_EQ(load_graph(dir / "g.bg"), g);
  EXPECT_EQ(failure_of([&] { load_graph(dir / "missing.bg"); }).code, ErrorCode::Format);
  std::filesystem::remove_all(dir);
}

TEST(Digest, KnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
