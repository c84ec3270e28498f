#include <algorithm>
#include <map>
#include <set>
#include <random>

#include "doctest.h"
#include "fixture.hpp"
#include "katka/contexts.hpp"

using namespace katka;

namespace {

std::vector<std::string> as_strings(const std::vector<std::string_view>& v) {
  return {v.begin(), v.end()};
}

struct Example {
  PhyloTree tree = parse_newick(test::kExampleNewick);
  Concatenation concat = build_concatenation(tree, test::example_genomes());
  Lz77Parse parse = lz77_parse(concat.text());
  ContextSets sets = build_context_sets(concat, parse);
};

}  // namespace

TEST_CASE("contexts: maximal phrase suffix") {
  CHECK(max_suffix_of_phrase("CAT$G") == "G");
  CHECK(max_suffix_of_phrase("AGAT$") == "");
  CHECK(max_suffix_of_phrase("ATACAT$GATT") == "GATT");
  CHECK(max_suffix_of_phrase("TA") == "TA");
  CHECK(max_suffix_of_phrase("A#B", '#') == "B");
}

TEST_CASE("contexts: maximal boundary prefix") {
  const std::string text = test::kExampleText;
  CHECK(max_prefix_at(text, 1) == "ATTACAT");
  CHECK(max_prefix_at(text, 44) == "");
  CHECK(max_prefix_at(text, 30) == "AGAT");
  CHECK(max_prefix_at(text, 8) == "");
  CHECK_THROWS_AS(max_prefix_at(text, 45), std::out_of_range);
}

TEST_CASE("contexts: orders") {
  CHECK(colex_less("A", "TA"));
  CHECK(colex_less("GATTAGATA", "C"));
  CHECK(colex_less("AG", "T"));
  CHECK_FALSE(colex_less("T", "T"));
  CHECK(lex_less("", "A"));
  CHECK(lex_less("\x7f", "\x80"));  // raw bytes compare unsigned
}

TEST_CASE("contexts: example suffix and prefix sets") {
  Example ex;
  CHECK(as_strings(ex.sets.suffixes.strings()) ==
        std::vector<std::string>{"A", "TA", "ATA", "GATTAGATA", "C", "G", "AG", "T", "GATT"});
  CHECK(as_strings(ex.sets.candidate_prefixes) ==
        std::vector<std::string>{"", "AGAT", "AGATACAT", "AT", "ATACAT", "ATTACAT", "CAT",
                                 "GATTACAT", "GATTAGATA", "TACAT", "TTACAT"});
  CHECK(as_strings(ex.sets.prefixes.strings()) ==
        std::vector<std::string>{"", "AGAT", "AT", "ATACAT", "ATTACAT", "CAT", "TACAT", "TTACAT"});
  for (const char* gone : {"GATTACAT", "AGATACAT", "GATTAGATA"}) {
    CHECK_FALSE(ex.sets.prefixes.rank(gone).has_value());
  }
  CHECK(ex.sets.prefixes.rank("") == 1u);
  CHECK(ex.sets.suffixes.rank("GATT") == 9u);
  CHECK(ex.sets.contexts.size() == 10);
}

TEST_CASE("contexts: example grid points (min and max)") {
  Example ex;
  std::vector<VertexNumber> leaves(ex.tree.leaves().begin(), ex.tree.leaves().end());
  auto pts = grid_points(ex.sets.contexts, ex.sets.suffixes, ex.sets.prefixes, Aggregate::min, leaves);

  auto x = [&](const char* s) { return static_cast<std::uint32_t>(*ex.sets.suffixes.rank(s)); };
  auto y = [&](const char* s) { return static_cast<std::uint32_t>(*ex.sets.prefixes.rank(s)); };
  std::vector<GridPoint> expected = {
      {x("GATTAGATA"), y(""), 9}, {x("GATT"), y("AGAT"), 7},  {x("C"), y("AT"), 1},
      {x("G"), y("ATACAT"), 5},   {x("AG"), y("ATACAT"), 3},  {x("G"), y("ATTACAT"), 1},
      {x("TA"), y("CAT"), 1},     {x("ATA"), y("CAT"), 3},    {x("T"), y("TACAT"), 1},
      {x("A"), y("TTACAT"), 1}};
  std::sort(expected.begin(), expected.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  CHECK(pts == expected);
  // No pair repeats in the example, so max labels agree.
  CHECK(grid_points(ex.sets.contexts, ex.sets.suffixes, ex.sets.prefixes, Aggregate::max, leaves) ==
        expected);
}

TEST_CASE("contexts: shared pair collapses under the aggregator") {
  std::string text = "xy";
  std::vector<BoundaryContext> ctx = {{1, std::string_view(text).substr(0, 1), "", 2},
                                      {1, std::string_view(text).substr(0, 1), "", 4}};
  SuffixSet s({{ctx[0].suffix, 1}});
  PrefixSet p({{ctx[0].prefix, 1}});
  std::vector<VertexNumber> leaves = {1, 3, 5, 7};
  auto lo = grid_points(ctx, s, p, Aggregate::min, leaves);
  auto hi = grid_points(ctx, s, p, Aggregate::max, leaves);
  REQUIRE(lo.size() == 1);
  REQUIRE(hi.size() == 1);
  CHECK(lo[0].label == 3);
  CHECK(hi[0].label == 7);
}

TEST_CASE("contexts: single genome") {
  PhyloTree t = parse_newick("G;");
  Concatenation c = build_concatenation(t, {{"G", "G"}});
  ContextSets sets = build_context_sets(c, lz77_parse(c.text()));
  CHECK(as_strings(sets.suffixes.strings()) == std::vector<std::string>{"G"});
  CHECK(as_strings(sets.prefixes.strings()) == std::vector<std::string>{""});
  REQUIRE(sets.contexts.size() == 1);
  CHECK(sets.contexts[0].boundary_pos == 1);
  CHECK(sets.contexts[0].suffix == "G");
  CHECK(sets.contexts[0].prefix == "");
  CHECK(sets.contexts[0].genome == 1);
}

TEST_CASE("contexts: properties on random instances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = test::random_instance(rng, 6, 40, "ACGT", true);
    Concatenation c = build_concatenation(inst.tree, inst.genomes);
    Lz77Parse parse = lz77_parse(c.text());
    ContextSets sets = build_context_sets(c, parse);
    std::vector<VertexNumber> leaves(inst.tree.leaves().begin(), inst.tree.leaves().end());

    // Retained prefixes are exactly the prefixes seen in contexts.
    std::set<std::string> in_contexts;
    for (const auto& ctx : sets.contexts) {
      in_contexts.insert(std::string(ctx.prefix));
      CHECK(ctx.suffix.find('$') == std::string_view::npos);
      CHECK(ctx.prefix.find('$') == std::string_view::npos);
      CHECK(c.genome(ctx.genome).find(std::string(ctx.suffix) + std::string(ctx.prefix)) !=
            std::string_view::npos);
    }
    std::set<std::string> retained;
    for (auto s : sets.prefixes.strings()) {
      retained.insert(std::string(s));
    }
    CHECK(retained == in_contexts);

    for (Aggregate agg : {Aggregate::min, Aggregate::max}) {
      auto pts = grid_points(sets.contexts, sets.suffixes, sets.prefixes, agg, leaves);
      CHECK(pts.size() <= sets.contexts.size());
      CHECK(pts.size() <= parse.z());
      for (const auto& p : pts) {
        CHECK(p.label % 2 == 1);  // leaves of a binary tree
        CHECK(p.x <= sets.suffixes.size());
        CHECK(p.y <= sets.prefixes.size());
        auto g = inst.tree.leaf_ordinal(p.label);
        REQUIRE(g.has_value());
        std::string joined = std::string(sets.suffixes.at_rank(p.x).value) +
                             std::string(sets.prefixes.at_rank(p.y).value);
        CHECK(c.genome(*g).find(joined) != std::string_view::npos);
      }
    }
  }
}
