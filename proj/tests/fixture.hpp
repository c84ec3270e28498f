#pragma once

#include <random>
#include <string>
#include <vector>

#include "katka/model.hpp"

namespace katka::test {

// Five-genome example tree: leaves 1, 3, 5, 7, 9; root 6.
inline const char* const kExampleNewick =
    "((GATTACAT,(AGATACAT,GATACAT)),(GATTAGAT,GATTAGATA));";

inline const char* const kExampleFasta =
    ">GATTACAT\nGATTACAT\n"
    ">AGATACAT\nAGATACAT\n"
    ">GATACAT\nGATACAT\n"
    ">GATTAGAT\nGATTAGAT\n"
    ">GATTAGATA\nGATTAGATA\n";

inline const char* const kExampleText = "GATTACAT$AGATACAT$GATACAT$GATTAGAT$GATTAGATA";

inline std::vector<GenomeRecord> example_genomes() {
  return {{"GATTACAT", "GATTACAT"},
          {"AGATACAT", "AGATACAT"},
          {"GATACAT", "GATACAT"},
          {"GATTAGAT", "GATTAGAT"},
          {"GATTAGATA", "GATTAGATA"}};
}

inline std::string random_string(std::mt19937_64& rng, std::size_t len, std::string_view alphabet) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len, '\0');
  for (char& c : s) {
    c = alphabet[pick(rng)];
  }
  return s;
}

// Random binary Newick over leaves g1..gN, leaves in that order.
inline std::string random_binary_newick(std::mt19937_64& rng, std::size_t leaves) {
  std::vector<std::string> items;
  for (std::size_t i = 1; i <= leaves; ++i) {
    items.push_back("g" + std::to_string(i));
  }
  while (items.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, items.size() - 2);
    std::size_t i = pick(rng);
    items[i] = "(" + items[i] + "," + items[i + 1] + ")";
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return items.front() + ";";
}

// Random tree of arbitrary arity over leaves g1..gN (in order).
inline std::string random_newick(std::mt19937_64& rng, std::size_t leaves) {
  std::vector<std::string> items;
  for (std::size_t i = 1; i <= leaves; ++i) {
    items.push_back("g" + std::to_string(i));
  }
  while (items.size() > 1) {
    std::uniform_int_distribution<std::size_t> width(2, std::min<std::size_t>(4, items.size()));
    std::size_t w = width(rng);
    std::uniform_int_distribution<std::size_t> pick(0, items.size() - w);
    std::size_t i = pick(rng);
    std::string joined = "(";
    for (std::size_t j = 0; j < w; ++j) {
      joined += (j ? "," : "") + items[i + j];
    }
    joined += ")";
    items[i] = joined;
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                items.begin() + static_cast<std::ptrdiff_t>(i + w));
  }
  return items.front() + ";";
}

struct Instance {
  PhyloTree tree;
  std::vector<GenomeRecord> genomes;
};

inline Instance random_instance(std::mt19937_64& rng, std::size_t max_genomes, std::size_t max_len,
                                std::string_view alphabet, bool binary = true) {
  std::uniform_int_distribution<std::size_t> count(1, max_genomes);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::size_t g = count(rng);
  Instance inst;
  inst.tree = parse_newick(binary ? random_binary_newick(rng, g) : random_newick(rng, g));
  // Genomes often share material, as related strains do.
  std::string base = random_string(rng, max_len, alphabet);
  std::bernoulli_distribution mutate(0.5);
  for (std::size_t i = 1; i <= g; ++i) {
    std::string seq;
    if (mutate(rng)) {
      seq = base.substr(0, len(rng));
      std::uniform_int_distribution<std::size_t> at(0, seq.size() - 1);
      seq[at(rng)] = random_string(rng, 1, alphabet)[0];
    } else {
      seq = random_string(rng, len(rng), alphabet);
    }
    inst.genomes.push_back({"g" + std::to_string(i), seq});
  }
  return inst;
}

}  // namespace katka::test
