#include "katka/contexts.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace katka {

namespace {

bool byte_less(char a, char b) {
  return static_cast<unsigned char>(a) < static_cast<unsigned char>(b);
}

}  // namespace

bool lex_less(std::string_view a, std::string_view b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), byte_less);
}

bool colex_less(std::string_view a, std::string_view b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend(), byte_less);
}

template <bool Colex>
ContextStringSet<Colex>::ContextStringSet(std::vector<ContextString> entries)
    : entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const ContextString& a, const ContextString& b) { return less(a.value, b.value); });
  entries_.erase(std::unique(entries_.begin(), entries_.end(),
                             [](const ContextString& a, const ContextString& b) {
                               return a.value == b.value;
                             }),
                 entries_.end());
}

template <bool Colex>
std::vector<std::string_view> ContextStringSet<Colex>::strings() const {
  std::vector<std::string_view> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    out.push_back(e.value);
  }
  return out;
}

template <bool Colex>
std::optional<std::size_t> ContextStringSet<Colex>::rank(std::string_view s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const ContextString& e, std::string_view v) { return less(e.value, v); });
  if (it == entries_.end() || it->value != s) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - entries_.begin()) + 1;
}

template class ContextStringSet<true>;
template class ContextStringSet<false>;

std::string_view max_suffix_of_phrase(std::string_view phrase, char sentinel) {
  std::size_t cut = phrase.rfind(sentinel);
  return cut == std::string_view::npos ? phrase : phrase.substr(cut + 1);
}

std::string_view max_prefix_at(std::string_view text, std::size_t pos, char sentinel) {
  if (pos > text.size()) {
    throw std::out_of_range("boundary " + std::to_string(pos) + " past end of text");
  }
  std::string_view rest = text.substr(pos);
  return rest.substr(0, rest.find(sentinel));
}

ContextSets build_context_sets(std::string_view text, const Lz77Parse& parse, char sentinel,
                               const GenomeLookup& genome_of_byte) {
  if (parse.text_size() != text.size()) {
    throw std::invalid_argument("parse does not belong to this text");
  }
  const auto& bounds = parse.boundary_positions();

  ContextSets out;
  std::vector<ContextString> suffixes;
  std::vector<ContextString> prefixes;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const std::size_t b = bounds[i];
    std::string_view prefix = max_prefix_at(text, b, sentinel);
    out.candidate_prefixes.push_back(prefix);
    if (i == 0) {
      continue;  // nothing precedes the text start
    }
    std::string_view phrase = text.substr(bounds[i - 1], b - bounds[i - 1]);
    std::string_view suffix = max_suffix_of_phrase(phrase, sentinel);
    if (suffix.empty()) {
      continue;
    }
    auto genome = genome_of_byte(b - 1);
    if (!genome) {
      throw std::logic_error("non-sentinel byte outside every genome");
    }
    suffixes.push_back({suffix, b});
    prefixes.push_back({prefix, b});
    out.contexts.push_back({b, suffix, prefix, *genome});
  }

  std::sort(out.candidate_prefixes.begin(), out.candidate_prefixes.end(), lex_less);
  out.candidate_prefixes.erase(
      std::unique(out.candidate_prefixes.begin(), out.candidate_prefixes.end()),
      out.candidate_prefixes.end());
  out.suffixes = SuffixSet(std::move(suffixes));
  out.prefixes = PrefixSet(std::move(prefixes));
  return out;
}

ContextSets build_context_sets(const Concatenation& c, const Lz77Parse& parse) {
  return build_context_sets(c.text(), parse, c.sentinel(),
                            [&c](std::size_t pos) { return c.genome_of_position(pos); });
}

std::vector<GridPoint> grid_points(std::span<const BoundaryContext> contexts,
                                   const SuffixSet& suffixes, const PrefixSet& prefixes,
                                   Aggregate aggregate,
                                   std::span<const VertexNumber> vertex_of_genome) {
  std::vector<GridPoint> raw;
  raw.reserve(contexts.size());
  for (const auto& ctx : contexts) {
    auto x = suffixes.rank(ctx.suffix);
    auto y = prefixes.rank(ctx.prefix);
    if (!x || !y) {
      throw std::invalid_argument("context string missing from its set");
    }
    if (ctx.genome < 1 || ctx.genome > vertex_of_genome.size()) {
      throw std::out_of_range("context genome has no leaf vertex");
    }
    raw.push_back({static_cast<std::uint32_t>(*x), static_cast<std::uint32_t>(*y),
                   vertex_of_genome[ctx.genome - 1]});
  }
  std::sort(raw.begin(), raw.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });

  std::vector<GridPoint> points;
  for (const auto& p : raw) {
    if (!points.empty() && points.back().x == p.x && points.back().y == p.y) {
      VertexNumber& l = points.back().label;
      l = aggregate == Aggregate::min ? std::min(l, p.label) : std::max(l, p.label);
    } else {
      points.push_back(p);
    }
  }
  return points;
}

}  // namespace katka
