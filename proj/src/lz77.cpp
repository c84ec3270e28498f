#include "katka/lz77.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace katka {

Lz77Parse::Lz77Parse(std::vector<Phrase> phrases, std::size_t text_size)
    : phrases_(std::move(phrases)), text_size_(text_size) {
  boundaries_.reserve(phrases_.size() + 1);
  for (const Phrase& p : phrases_) {
    boundaries_.push_back(p.start);
  }
  boundaries_.push_back(text_size_);
}

std::string Lz77Parse::reconstruct() const {
  std::string out;
  out.reserve(text_size_);
  for (const Phrase& p : phrases_) {
    if (p.match_len > 0) {
      // Byte by byte: the copy may overlap the bytes it produces.
      for (std::size_t i = 0; i < p.match_len; ++i) {
        out.push_back(out[*p.source + i]);
      }
    }
    if (p.literal) {
      out.push_back(*p.literal);
    }
  }
  return out;
}

std::vector<std::size_t> suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  std::vector<std::size_t> sa(n);
  std::vector<std::size_t> rank(n);
  std::vector<std::size_t> tmp(n);
  std::iota(sa.begin(), sa.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    rank[i] = static_cast<unsigned char>(text[i]);
  }
  for (std::size_t h = 1;; h <<= 1) {
    // Ranks are shifted by one so that "past the end" (0) sorts first.
    auto key = [&](std::size_t i) {
      return std::pair<std::size_t, std::size_t>(rank[i], i + h < n ? rank[i + h] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    if (n == 0) {
      break;
    }
    tmp[sa[0]] = 0;
    for (std::size_t r = 1; r < n; ++r) {
      tmp[sa[r]] = tmp[sa[r - 1]] + (key(sa[r - 1]) < key(sa[r]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1 || h >= n) {
      break;
    }
  }
  return sa;
}

Lz77Parse lz77_parse(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("cannot factorize an empty text");
  }
  const std::size_t n = text.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // For each position, the nearest suffix on either side in suffix-array order
  // that starts earlier in the text. The longest previous match is against one
  // of the two.
  std::vector<std::size_t> sa = suffix_array(text);
  std::vector<std::size_t> psv(n, kNone);
  std::vector<std::size_t> nsv(n, kNone);
  std::vector<std::size_t> stack;
  for (std::size_t r = 0; r < n; ++r) {
    while (!stack.empty() && stack.back() > sa[r]) {
      stack.pop_back();
    }
    if (!stack.empty()) {
      psv[sa[r]] = stack.back();
    }
    stack.push_back(sa[r]);
  }
  stack.clear();
  for (std::size_t r = n; r-- > 0;) {
    while (!stack.empty() && stack.back() > sa[r]) {
      stack.pop_back();
    }
    if (!stack.empty()) {
      nsv[sa[r]] = stack.back();
    }
    stack.push_back(sa[r]);
  }

  auto lcp = [&](std::size_t a, std::size_t b) {
    std::size_t l = 0;
    while (b + l < n && text[a + l] == text[b + l]) {
      ++l;
    }
    return l;
  };

  // Only phrase starts compute matches, so the direct comparisons sum to O(n).
  std::vector<Phrase> phrases;
  std::size_t i = 0;
  while (i < n) {
    Phrase p;
    p.start = i;
    std::size_t best_len = 0;
    std::size_t best_src = kNone;
    for (std::size_t cand : {psv[i], nsv[i]}) {
      if (cand == kNone) {
        continue;
      }
      std::size_t l = lcp(cand, i);
      if (l > best_len || (l == best_len && l > 0 && cand < best_src)) {
        best_len = l;
        best_src = cand;
      }
    }
    p.match_len = best_len;
    if (best_len > 0) {
      p.source = best_src;
    }
    if (i + best_len < n) {
      p.literal = text[i + best_len];
    }
    i = p.end();
    phrases.push_back(p);
  }
  return Lz77Parse(std::move(phrases), n);
}

}  // namespace katka
