#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace katka {

/*
 * One LZ77 phrase: a copy of match_len bytes from an earlier position
 * (possibly overlapping the phrase itself) followed by one literal byte.
 * The final phrase of a text may end with the copy and carry no literal.
 */
struct Phrase {
  std::size_t start = 0;
  std::size_t match_len = 0;
  std::optional<char> literal;
  std::optional<std::size_t> source;  // set iff match_len > 0

  std::size_t length() const { return match_len + (literal ? 1 : 0); }
  std::size_t end() const { return start + length(); }
  bool operator==(const Phrase&) const = default;
};

class Lz77Parse {
 public:
  Lz77Parse() = default;
  Lz77Parse(std::vector<Phrase> phrases, std::size_t text_size);

  const std::vector<Phrase>& phrases() const { return phrases_; }
  std::size_t z() const { return phrases_.size(); }
  std::size_t text_size() const { return text_size_; }

  // Start of every phrase plus the end-of-text position, ascending.
  const std::vector<std::size_t>& boundary_positions() const { return boundaries_; }

  // Materializes the phrases left to right.
  std::string reconstruct() const;

 private:
  std::vector<Phrase> phrases_;
  std::size_t text_size_ = 0;
  std::vector<std::size_t> boundaries_;
};

// Greedy self-referential factorization. Throws std::invalid_argument on
// empty input.
Lz77Parse lz77_parse(std::string_view text);

inline const std::vector<std::size_t>& boundaries(const Lz77Parse& parse) {
  return parse.boundary_positions();
}

// Suffix array by prefix doubling. Exposed for the factorizer's tests.
std::vector<std::size_t> suffix_array(std::string_view text);

}  // namespace katka
