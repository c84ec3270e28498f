#include <random>
#include <sstream>

#include "doctest.h"
#include "fixture.hpp"
#include "katka/error.hpp"
#include "katka/index_io.hpp"

using namespace katka;

namespace {

std::string serialize(const KatkaIndex& idx) {
  std::ostringstream out(std::ios::binary);
  save_index(idx, out);
  return out.str();
}

KatkaIndex deserialize(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return load_index(in);
}

}  // namespace

TEST_CASE("index io: example round trip") {
  KatkaIndex idx = build_index(parse_newick(test::kExampleNewick), test::example_genomes());
  std::string bytes = serialize(idx);
  CHECK(bytes.substr(0, 8) == "KATKAIDX");
  CHECK(bytes.substr(8, 4) == std::string("\x01\x00\x00\x00", 4));  // version, little-endian
  CHECK(bytes[12] == '$');

  KatkaIndex back = deserialize(bytes);
  CHECK(back.forward().parse.phrases() == idx.forward().parse.phrases());
  CHECK(back.tree().size() == 9);
  CHECK(back.tree().label(9) == "GATTAGATA");
  CHECK(back.classify("TAGACA", 3) == idx.classify("TAGACA", 3));
  CHECK(serialize(back) == bytes);
}

TEST_CASE("index io: random round trips preserve every answer") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = test::random_instance(rng, 8, 64, "ACGT", trial % 2 == 0);
    KatkaIndex idx = build_index(inst.tree, inst.genomes);
    KatkaIndex back = deserialize(serialize(idx));
    for (int q = 0; q < 10; ++q) {
      std::string p = test::random_string(rng, 16, "ACGT");
      for (std::size_t k = 1; k <= p.size(); k += 3) {
        CHECK(back.classify(p, k) == idx.classify(p, k));
      }
    }
  }
}

TEST_CASE("index io: corrupt input is rejected") {
  KatkaIndex idx = build_index(parse_newick(test::kExampleNewick), test::example_genomes());
  const std::string bytes = serialize(idx);

  CHECK_THROWS_AS(deserialize(""), IndexFormatError);
  CHECK_THROWS_AS(deserialize("not an index at all"), IndexFormatError);

  std::string flipped = bytes;
  flipped[40] ^= 0x10;
  CHECK_THROWS_AS(deserialize(flipped), IndexFormatError);

  CHECK_THROWS_AS(deserialize(bytes.substr(0, bytes.size() / 2)), IndexFormatError);

  std::string version = bytes;
  version[8] = 2;
  CHECK_THROWS_AS(deserialize(version), IndexFormatError);

  CHECK_THROWS_AS(load_index(std::filesystem::path("/nonexistent/katka.idx")), IndexFormatError);
}

TEST_CASE("index io: custom sentinel survives") {
  PhyloTree t = parse_newick("(a,b);");
  KatkaIndex idx = build_index(t, {{"a", "AC$GT"}, {"b", "CCGT"}}, '#');
  KatkaIndex back = deserialize(serialize(idx));
  CHECK(back.sentinel() == '#');
  CHECK(back.classify("$G", 2)[0].answer == 1u);
  CHECK_THROWS_AS(back.classify("C#", 2), std::invalid_argument);
}
