#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "katka/error.hpp"
#include "katka/index.hpp"
#include "katka/index_io.hpp"
#include "katka/model.hpp"

namespace katka::cli {

namespace {

std::string upper(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return s;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(path + ": cannot open for reading");
  }
  return in;
}

// Rows for one read, TSV.
std::string classify_rows(const KatkaIndex& index, const Read& read, std::size_t k) {
  std::ostringstream rows;
  for (const auto& r : index.classify(read.sequence, k)) {
    rows << read.id << '\t' << r.position << '\t' << r.kmer << '\t';
    if (r.answer) {
      rows << *r.answer << '\t' << index.tree().label(*r.answer);
    } else {
      rows << "NULL\t";
    }
    rows << '\n';
  }
  return rows.str();
}

}  // namespace

std::vector<Read> parse_reads(std::istream& in) {
  std::vector<Read> reads;
  if (in.peek() == '>') {
    for (auto& rec : parse_fasta(in)) {
      reads.push_back({std::move(rec.name), std::move(rec.sequence)});
    }
    return reads;
  }

  std::string header, seq, plus, qual;
  std::size_t line = 0;
  while (std::getline(in, header)) {
    ++line;
    if (!header.empty() && header.back() == '\r') {
      header.pop_back();
    }
    if (header.empty()) {
      continue;
    }
    if (header.front() != '@') {
      throw ParseError("expected '@' at the start of a FASTQ record", line);
    }
    if (!std::getline(in, seq) || !std::getline(in, plus) || !std::getline(in, qual)) {
      throw ParseError("truncated FASTQ record", line);
    }
    for (std::string* s : {&seq, &plus, &qual}) {
      if (!s->empty() && s->back() == '\r') {
        s->pop_back();
      }
    }
    if (plus.empty() || plus.front() != '+') {
      throw ParseError("expected '+' separator line", line + 2);
    }
    if (qual.size() != seq.size()) {
      throw ParseError("quality line length differs from the sequence", line + 3);
    }
    line += 3;
    std::string id = header.substr(1, header.find_first_of(" \t") - 1);
    reads.push_back({std::move(id), upper(std::move(seq))});
  }
  return reads;
}

int cmd_build(const BuildOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    PhyloTree tree;
    {
      auto in = open_input(opts.tree_path);
      try {
        tree = parse_newick(in);
      } catch (const ParseError& e) {
        throw Error(opts.tree_path + ": " + e.what());
      }
    }
    std::vector<GenomeRecord> genomes;
    {
      auto in = open_input(opts.genomes_path);
      try {
        genomes = parse_fasta(in, opts.sentinel);
      } catch (const ParseError& e) {
        throw Error(opts.genomes_path + ": " + e.what());
      }
    }

    KatkaIndex index = build_index(tree, genomes, opts.sentinel);
    save_index(index, opts.out_path);

    out << "genomes\t" << index.genome_count() << '\n'
        << "text_length\t" << index.text_size() << '\n'
        << "forward_phrases\t" << index.forward().parse.z() << '\n'
        << "reverse_phrases\t" << index.reverse().parse.z() << '\n'
        << "forward_grid_points\t" << index.forward().grid.point_count() << '\n'
        << "reverse_grid_points\t" << index.reverse().grid.point_count() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "katka build: " << e.what() << '\n';
    return 1;
  }
}

int cmd_query(const QueryOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.k < 1) {
      throw Error("k must be at least 1");
    }
    if (opts.pattern.has_value() == opts.reads_path.has_value()) {
      throw Error("give exactly one of --pattern and --reads");
    }
    KatkaIndex index = load_index(std::filesystem::path(opts.index_path));

    std::vector<Read> reads;
    if (opts.pattern) {
      reads.push_back({"pattern", upper(*opts.pattern)});
    } else {
      auto in = open_input(*opts.reads_path);
      try {
        reads = parse_reads(in);
      } catch (const ParseError& e) {
        throw Error(*opts.reads_path + ": " + e.what());
      }
    }
    for (const auto& r : reads) {
      if (r.sequence.find(index.sentinel()) != std::string::npos) {
        throw Error("read '" + r.id + "' contains the sentinel byte");
      }
      if (r.sequence.size() < opts.k) {
        err << "katka query: warning: read '" << r.id << "' is shorter than k=" << opts.k
            << ", no k-mers\n";
      }
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (opts.tsv_path) {
      file.open(*opts.tsv_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        throw Error(*opts.tsv_path + ": cannot open for writing");
      }
      sink = &file;
    }
    *sink << "read_id\tposition\tkmer\tvertex\tlabel\n";

    // Reads are classified in blocks across threads; rows keep input order.
    const std::size_t threads = std::max(1u, opts.threads);
    const std::size_t block = std::max<std::size_t>(1, (reads.size() + threads - 1) / threads);
    std::vector<std::future<std::string>> parts;
    for (std::size_t begin = 0; begin < reads.size(); begin += block) {
      const std::size_t end = std::min(reads.size(), begin + block);
      auto work = [&index, &reads, &opts, begin, end] {
        std::string rows;
        for (std::size_t i = begin; i < end; ++i) {
          rows += classify_rows(index, reads[i], opts.k);
        }
        return rows;
      };
      parts.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, work));
    }
    for (auto& p : parts) {
      *sink << p.get();
    }
    sink->flush();
    if (!*sink) {
      throw Error("failed to write output");
    }
    return 0;
  } catch (const std::exception& e) {
    err << "katka query: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"KATKA: leftmost/rightmost genome index over a phylogenetic tree, k chosen per query"};
  app.require_subcommand(1);

  BuildOptions build;
  std::string sentinel = "$";
  auto* b = app.add_subcommand("build", "Build an index from a Newick tree and FASTA genomes");
  b->add_option("--tree", build.tree_path, "Newick tree")->required();
  b->add_option("--genomes", build.genomes_path, "FASTA genomes named after the leaves")->required();
  b->add_option("--out", build.out_path, "Index file to write")->required();
  b->add_option("--sentinel", sentinel, "Separator byte between genomes")
      ->check([](const std::string& s) { return s.size() == 1 ? "" : "must be a single byte"; });

  QueryOptions query;
  std::string pattern, reads_path, tsv_path;
  auto* q = app.add_subcommand("query", "Classify the k-mers of a pattern or of FASTQ reads");
  q->add_option("--index", query.index_path, "Index file")->required();
  auto* pat = q->add_option("--pattern", pattern, "Single pattern");
  auto* rds = q->add_option("--reads", reads_path, "FASTQ (or FASTA) reads");
  pat->excludes(rds);
  q->add_option("-k", query.k, "k-mer length")->required()->check(CLI::PositiveNumber);
  auto* tsv = q->add_option("--tsv", tsv_path, "Write rows here instead of stdout");
  q->add_option("--threads", query.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (b->parsed()) {
    build.sentinel = sentinel[0];
    return cmd_build(build, out, err);
  }
  if (pat->count() > 0) {
    query.pattern = pattern;
  }
  if (rds->count() > 0) {
    query.reads_path = reads_path;
  }
  if (tsv->count() > 0) {
    query.tsv_path = tsv_path;
  }
  return cmd_query(query, out, err);
}

}  // namespace katka::cli
