#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace katka::cli {

struct BuildOptions {
  std::string tree_path;
  std::string genomes_path;
  std::string out_path;
  char sentinel = '$';
};

struct QueryOptions {
  std::string index_path;
  std::optional<std::string> pattern;
  std::optional<std::string> reads_path;
  std::size_t k = 0;
  std::optional<std::string> tsv_path;  // stdout when absent
  unsigned threads = 1;
};

struct Read {
  std::string id;
  std::string sequence;
};

// FASTQ records (quality lines are checked for shape and otherwise ignored).
// A file starting with '>' is read as FASTA instead. Sequences are uppercased.
std::vector<Read> parse_reads(std::istream& in);

// Both return the process exit status and report problems on err.
int cmd_build(const BuildOptions& opts, std::ostream& out, std::ostream& err);
int cmd_query(const QueryOptions& opts, std::ostream& out, std::ostream& err);

// Full command line: `build ...` or `query ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace katka::cli
