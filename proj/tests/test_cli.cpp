#include <unistd.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "fixture.hpp"
#include "katka/index_io.hpp"

using namespace katka;
namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path dir;

  Workdir() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("katka_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(dir / name, std::ios::binary) << content;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "katka");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
      cells.push_back(line.substr(start, tab - start));
    }
    cells.push_back(line.substr(start));
    out.push_back(cells);
  }
  return out;
}

std::string build_example(const Workdir& w) {
  std::string tree = w.write("tree.nwk", std::string(test::kExampleNewick) + "\n");
  std::string fasta = w.write("genomes.fa", test::kExampleFasta);
  std::string idx = w.path("example.idx");
  auto r = run({"build", "--tree", tree, "--genomes", fasta, "--out", idx});
  REQUIRE(r.status == 0);
  return idx;
}

}  // namespace

TEST_CASE("cli: build prints a summary") {
  Workdir w;
  std::string tree = w.write("tree.nwk", test::kExampleNewick);
  std::string fasta = w.write("genomes.fa", test::kExampleFasta);
  auto r = run({"build", "--tree", tree, "--genomes", fasta, "--out", w.path("x.idx")});
  CHECK(r.status == 0);
  CHECK(r.out.find("genomes\t5\n") != std::string::npos);
  CHECK(r.out.find("text_length\t44\n") != std::string::npos);
  CHECK(r.out.find("forward_phrases\t12\n") != std::string::npos);
  CHECK(r.out.find("forward_grid_points\t10\n") != std::string::npos);
  CHECK(fs::exists(w.path("x.idx")));
}

TEST_CASE("cli: build errors") {
  Workdir w;
  std::string tree = w.write("tree.nwk", test::kExampleNewick);
  std::string partial = w.write("partial.fa", ">GATTACAT\nGATTACAT\n");
  auto missing = run({"build", "--tree", tree, "--genomes", partial, "--out", w.path("x.idx")});
  CHECK(missing.status != 0);
  CHECK(missing.err.find("AGATACAT") != std::string::npos);

  std::string fasta = w.write("genomes.fa", test::kExampleFasta);
  auto with_k = run({"build", "--tree", tree, "--genomes", fasta, "--out", w.path("x.idx"), "-k", "3"});
  CHECK(with_k.status != 0);

  auto no_tree = run({"build", "--tree", w.path("none.nwk"), "--genomes", fasta, "--out", w.path("x.idx")});
  CHECK(no_tree.status != 0);
  CHECK(no_tree.err.find("katka build:") != std::string::npos);

  std::string bad = w.write("bad.nwk", "(a,\nb;\n");
  auto unbalanced = run({"build", "--tree", bad, "--genomes", fasta, "--out", w.path("x.idx")});
  CHECK(unbalanced.status != 0);
  CHECK(unbalanced.err.find("line") != std::string::npos);
}

TEST_CASE("cli: query a single pattern") {
  Workdir w;
  std::string idx = build_example(w);
  auto r = run({"query", "--index", idx, "--pattern", "TAGACA", "-k", "3"});
  REQUIRE(r.status == 0);
  auto t = rows(r.out);
  REQUIRE(t.size() == 5);
  CHECK(t[0] == std::vector<std::string>{"read_id", "position", "kmer", "vertex", "label"});
  CHECK(t[1] == std::vector<std::string>{"pattern", "1", "TAG", "8", ""});
  CHECK(t[2] == std::vector<std::string>{"pattern", "2", "AGA", "6", ""});
  CHECK(t[3] == std::vector<std::string>{"pattern", "3", "GAC", "NULL", ""});
  CHECK(t[4] == std::vector<std::string>{"pattern", "4", "ACA", "2", ""});

  auto leaf = run({"query", "--index", idx, "--pattern", "tagata", "-k", "6"});
  REQUIRE(leaf.status == 0);
  CHECK(rows(leaf.out)[1] == std::vector<std::string>{"pattern", "1", "TAGATA", "9", "GATTAGATA"});
}

TEST_CASE("cli: k longer than the pattern warns and emits no rows") {
  Workdir w;
  std::string idx = build_example(w);
  auto r = run({"query", "--index", idx, "--pattern", "TAGACA", "-k", "7"});
  CHECK(r.status == 0);
  CHECK(rows(r.out).size() == 1);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("cli: query errors") {
  Workdir w;
  std::string idx = build_example(w);
  auto sentinel = run({"query", "--index", idx, "--pattern", "TA$G", "-k", "2"});
  CHECK(sentinel.status != 0);
  CHECK(sentinel.err.find("sentinel") != std::string::npos);

  auto zero = run({"query", "--index", idx, "--pattern", "TAG", "-k", "0"});
  CHECK(zero.status != 0);

  auto neither = run({"query", "--index", idx, "-k", "2"});
  CHECK(neither.status != 0);

  std::string junk = w.write("junk.idx", "KATKAIDX but not really");
  auto corrupt = run({"query", "--index", junk, "--pattern", "TAG", "-k", "2"});
  CHECK(corrupt.status != 0);
  CHECK(corrupt.err.find("katka query:") != std::string::npos);

  auto absent = run({"query", "--index", w.path("absent.idx"), "--pattern", "TAG", "-k", "2"});
  CHECK(absent.status != 0);

  std::string reads = w.write("bad.fq", "@r1\nACGT\n+\nII\n");
  auto badq = run({"query", "--index", idx, "--reads", reads, "-k", "2"});
  CHECK(badq.status != 0);
}

TEST_CASE("cli: FASTQ batch matches the library, with threads and a TSV file") {
  Workdir w;
  std::mt19937_64 rng(71);
  auto inst = test::random_instance(rng, 8, 64, "ACGT", true);
  std::string newick;
  {
    // Round trip the tree through Newick text.
    std::function<std::string(VertexNumber)> emit = [&](VertexNumber v) -> std::string {
      if (inst.tree.is_leaf(v)) {
        return inst.tree.label(v);
      }
      std::string s = "(";
      for (VertexNumber c : inst.tree.children(v)) {
        s += (s.size() > 1 ? "," : "") + emit(c);
      }
      return s + ")";
    };
    newick = emit(inst.tree.root()) + ";";
  }
  std::string fasta;
  for (const auto& g : inst.genomes) {
    fasta += ">" + g.name + "\n" + g.sequence + "\n";
  }
  std::string idx = w.path("r.idx");
  REQUIRE(run({"build", "--tree", w.write("t.nwk", newick), "--genomes", w.write("g.fa", fasta),
               "--out", idx})
              .status == 0);

  std::string fastq;
  std::vector<std::string> seqs;
  for (int i = 0; i < 40; ++i) {
    std::string s = test::random_string(rng, 5 + i % 20, "ACGT");
    seqs.push_back(s);
    fastq += "@read" + std::to_string(i) + " extra\n" + s + "\n+\n" + std::string(s.size(), 'I') + "\n";
  }
  std::string reads = w.write("reads.fq", fastq);

  auto one = run({"query", "--index", idx, "--reads", reads, "-k", "4"});
  REQUIRE(one.status == 0);
  auto many = run({"query", "--index", idx, "--reads", reads, "-k", "4", "--threads", "3"});
  REQUIRE(many.status == 0);
  CHECK(many.out == one.out);

  std::string tsv = w.path("out.tsv");
  auto to_file = run({"query", "--index", idx, "--reads", reads, "-k", "4", "--tsv", tsv});
  REQUIRE(to_file.status == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(tsv);
  std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == one.out);

  KatkaIndex lib = load_index(fs::path(idx));
  auto t = rows(one.out);
  std::size_t row = 1;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (const auto& r : lib.classify(seqs[i], 4)) {
      REQUIRE(row < t.size());
      CHECK(t[row][0] == "read" + std::to_string(i));
      CHECK(t[row][1] == std::to_string(r.position));
      CHECK(t[row][3] == (r.answer ? std::to_string(*r.answer) : "NULL"));
      ++row;
    }
  }
  CHECK(row == t.size());
}

TEST_CASE("cli: reads given as FASTA") {
  std::istringstream in(">a\nacg\n>b\nTT\n");
  auto reads = cli::parse_reads(in);
  REQUIRE(reads.size() == 2);
  CHECK(reads[0].id == "a");
  CHECK(reads[0].sequence == "ACG");
}
