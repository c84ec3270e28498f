#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace katka {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed Newick / FASTA / FASTQ input. line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Unreadable or corrupt index file.
class IndexFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace katka
