#include <cctype>
#include <istream>
#include <unordered_set>

#include "katka/error.hpp"
#include "katka/model.hpp"

namespace katka {

std::vector<GenomeRecord> parse_fasta(std::istream& in, char sentinel) {
  std::vector<GenomeRecord> records;
  std::unordered_set<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  std::size_t header_line = 0;

  auto finish = [&] {
    if (!records.empty() && records.back().sequence.empty()) {
      throw ParseError("record '" + records.back().name + "' has an empty sequence", header_line);
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty() && line.front() == '>') {
      finish();
      std::size_t begin = 1;
      while (begin < line.size() && std::isspace(static_cast<unsigned char>(line[begin]))) {
        ++begin;
      }
      std::size_t end = begin;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) {
        ++end;
      }
      std::string name = line.substr(begin, end - begin);
      if (name.empty()) {
        throw ParseError("record without a name", line_no);
      }
      if (!names.insert(name).second) {
        throw ParseError("duplicate record name '" + name + "'", line_no);
      }
      records.push_back({std::move(name), {}});
      header_line = line_no;
      continue;
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      if (records.empty()) {
        throw ParseError("sequence data before the first '>' header", line_no);
      }
      if (c == sentinel) {
        throw ParseError("record '" + records.back().name + "' contains the sentinel byte '" +
                             std::string(1, sentinel) + "'",
                         line_no);
      }
      records.back().sequence.push_back(
          static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (records.empty()) {
    throw ParseError("no FASTA records");
  }
  finish();
  return records;
}

}  // namespace katka
