#include "katka/index_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "katka/error.hpp"

namespace katka {

namespace {

constexpr std::array<char, 8> kMagic = {'K', 'A', 'T', 'K', 'A', 'I', 'D', 'X'};

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Writer {
 public:
  template <typename T>
  void put(T value) {
    auto v = static_cast<std::uint64_t>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
  }
  void bytes(std::string_view s) {
    put<std::uint64_t>(s.size());
    buf_.append(s);
  }
  void raw(std::string_view s) { buf_.append(s); }
  const std::string& buffer() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string bytes() {
    auto n = get<std::uint64_t>();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  // Element counts are bounded by the bytes left so corrupt sizes cannot
  // trigger huge allocations.
  std::uint64_t count(std::size_t min_element_size) {
    auto n = get<std::uint64_t>();
    if (n > (data_.size() - pos_) / min_element_size) {
      throw IndexFormatError("index file truncated or corrupt (element count)");
    }
    return n;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) {
      throw IndexFormatError("index file truncated");
    }
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_tree(Writer& w, const PhyloTree& tree) {
  w.put<std::uint64_t>(tree.size());
  w.put<std::uint32_t>(tree.root());
  for (VertexNumber v = 1; v <= tree.size(); ++v) {
    w.bytes(tree.label(v));
    auto kids = tree.children(v);
    w.put<std::uint64_t>(kids.size());
    for (VertexNumber c : kids) {
      w.put<std::uint32_t>(c);
    }
  }
}

PhyloTree read_tree(Reader& r) {
  auto n = r.count(12);
  if (n == 0) {
    throw IndexFormatError("index holds an empty tree");
  }
  auto root = r.get<std::uint32_t>();
  std::vector<PhyloTree::NodeSpec> nodes(n);
  for (auto& node : nodes) {
    node.label = r.bytes();
    auto kids = r.count(4);
    for (std::uint64_t i = 0; i < kids; ++i) {
      auto c = r.get<std::uint32_t>();
      if (c < 1 || c > n) {
        throw IndexFormatError("tree child out of range");
      }
      node.children.push_back(c - 1);
    }
  }
  if (root < 1 || root > n) {
    throw IndexFormatError("tree root out of range");
  }
  PhyloTree tree;
  try {
    tree = PhyloTree::from_nodes(nodes, root - 1);
  } catch (const std::invalid_argument& e) {
    throw IndexFormatError(std::string("corrupt tree: ") + e.what());
  }
  // Stored ids are vertex numbers, so renumbering must be the identity.
  for (VertexNumber v = 1; v <= n; ++v) {
    if (tree.label(v) != nodes[v - 1].label) {
      throw IndexFormatError("tree vertex numbering mismatch");
    }
  }
  return tree;
}

void write_trie(Writer& w, const CompactTrie& t) {
  w.put<std::uint64_t>(t.nodes().size());
  for (const auto& n : t.nodes()) {
    w.put<std::uint32_t>(n.depth);
    w.put<std::uint32_t>(n.lo);
    w.put<std::uint32_t>(n.hi);
    w.put<std::uint32_t>(n.edge_begin);
    w.put<std::uint32_t>(n.edge_end);
    w.put<std::uint8_t>(n.terminal ? 1 : 0);
  }
  w.put<std::uint64_t>(t.edges().size());
  for (const auto& e : t.edges()) {
    w.put<std::uint8_t>(e.first);
    w.put<std::uint32_t>(e.target);
  }
  w.put<std::uint64_t>(t.keys().size());
  for (const auto& k : t.keys()) {
    w.put<std::uint64_t>(k.pos);
    w.put<std::uint32_t>(k.len);
    w.put<std::uint8_t>(k.backward ? 1 : 0);
  }
}

CompactTrie read_trie(Reader& r, std::string_view text) {
  std::vector<CompactTrie::Node> nodes(r.count(21));
  for (auto& n : nodes) {
    n.depth = r.get<std::uint32_t>();
    n.lo = r.get<std::uint32_t>();
    n.hi = r.get<std::uint32_t>();
    n.edge_begin = r.get<std::uint32_t>();
    n.edge_end = r.get<std::uint32_t>();
    n.terminal = r.get<std::uint8_t>() != 0;
  }
  std::vector<CompactTrie::Edge> edges(r.count(5));
  for (auto& e : edges) {
    e.first = r.get<std::uint8_t>();
    e.target = r.get<std::uint32_t>();
  }
  std::vector<KeyRef> keys(r.count(13));
  for (auto& k : keys) {
    k.pos = r.get<std::uint64_t>();
    k.len = r.get<std::uint32_t>();
    k.backward = r.get<std::uint8_t>() != 0;
    if (k.backward ? k.pos < k.len || k.pos > text.size() : k.pos + k.len > text.size()) {
      throw IndexFormatError("trie key outside the text");
    }
  }
  try {
    return CompactTrie::from_parts(std::move(nodes), std::move(edges), std::move(keys));
  } catch (const std::invalid_argument& e) {
    throw IndexFormatError(std::string("corrupt trie: ") + e.what());
  }
}

void write_side(Writer& w, const SideIndex& side) {
  w.put<std::uint8_t>(side.reversed ? 1 : 0);
  w.bytes(side.text);
  const auto& phrases = side.parse.phrases();
  w.put<std::uint64_t>(phrases.size());
  for (const auto& p : phrases) {
    w.put<std::uint64_t>(p.start);
    w.put<std::uint64_t>(p.match_len);
    w.put<std::uint8_t>((p.literal ? 1 : 0) | (p.source ? 2 : 0));
    w.put<std::uint8_t>(static_cast<unsigned char>(p.literal.value_or('\0')));
    w.put<std::uint64_t>(p.source.value_or(0));
  }
  write_trie(w, side.suffix_trie);
  write_trie(w, side.prefix_trie);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(side.grid.aggregate()));
  w.put<std::uint32_t>(side.grid.width());
  w.put<std::uint32_t>(side.grid.height());
  w.put<std::uint64_t>(side.grid.point_count());
  for (const auto& p : side.grid.points()) {
    w.put<std::uint32_t>(p.x);
    w.put<std::uint32_t>(p.y);
    w.put<std::uint32_t>(p.label);
  }
}

SideIndex read_side(Reader& r, char sentinel, std::size_t vertex_count) {
  SideIndex side;
  side.sentinel = sentinel;
  side.reversed = r.get<std::uint8_t>() != 0;
  side.text = r.bytes();

  std::vector<Phrase> phrases(r.count(26));
  for (auto& p : phrases) {
    p.start = r.get<std::uint64_t>();
    p.match_len = r.get<std::uint64_t>();
    auto flags = r.get<std::uint8_t>();
    auto literal = static_cast<char>(r.get<std::uint8_t>());
    auto source = r.get<std::uint64_t>();
    if (flags & 1) {
      p.literal = literal;
    }
    if (flags & 2) {
      p.source = source;
    }
  }
  // Phrases must tile the text and reproduce it.
  std::size_t expect = 0;
  for (const auto& p : phrases) {
    if (p.start != expect || (p.match_len > 0) != p.source.has_value() ||
        (p.source && *p.source >= p.start) || p.length() == 0) {
      throw IndexFormatError("corrupt LZ77 parse");
    }
    expect = p.end();
  }
  if (expect != side.text.size()) {
    throw IndexFormatError("LZ77 parse does not cover the text");
  }
  side.parse = Lz77Parse(std::move(phrases), side.text.size());
  if (side.parse.reconstruct() != side.text) {
    throw IndexFormatError("LZ77 parse does not reproduce the text");
  }

  side.suffix_trie = read_trie(r, side.text);
  side.prefix_trie = read_trie(r, side.text);

  auto aggregate = r.get<std::uint8_t>();
  if (aggregate > 1) {
    throw IndexFormatError("unknown grid aggregate");
  }
  auto width = r.get<std::uint32_t>();
  auto height = r.get<std::uint32_t>();
  if (width != side.suffix_trie.size() || height != side.prefix_trie.size()) {
    throw IndexFormatError("grid dimensions disagree with the tries");
  }
  std::vector<GridPoint> points(r.count(12));
  for (auto& p : points) {
    p.x = r.get<std::uint32_t>();
    p.y = r.get<std::uint32_t>();
    p.label = r.get<std::uint32_t>();
    if (p.label < 1 || p.label > vertex_count) {
      throw IndexFormatError("grid label is not a vertex");
    }
  }
  try {
    side.grid = ContextGrid(std::move(points), static_cast<Aggregate>(aggregate), width, height);
  } catch (const std::invalid_argument& e) {
    throw IndexFormatError(std::string("corrupt grid: ") + e.what());
  }
  return side;
}

}  // namespace

void save_index(const KatkaIndex& index, std::ostream& out) {
  Writer w;
  w.raw(std::string_view(kMagic.data(), kMagic.size()));
  w.put<std::uint32_t>(index.version());
  w.put<std::uint8_t>(static_cast<unsigned char>(index.sentinel()));
  write_tree(w, index.tree());
  write_side(w, index.forward());
  write_side(w, index.reverse());
  const std::uint64_t checksum = fnv1a(w.buffer());
  w.put<std::uint64_t>(checksum);
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) {
    throw Error("failed to write index");
  }
}

void save_index(const KatkaIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  save_index(index, out);
}

KatkaIndex load_index(std::istream& in) {
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (data.size() < kMagic.size() + 8 ||
      std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IndexFormatError("not a KATKA index (bad magic)");
  }
  std::string_view body(data.data(), data.size() - 8);
  Reader tail(std::string_view(data).substr(data.size() - 8));
  if (tail.get<std::uint64_t>() != fnv1a(body)) {
    throw IndexFormatError("index checksum mismatch");
  }

  Reader r(body);
  r.raw(kMagic.size());
  auto version = r.get<std::uint32_t>();
  if (version != kIndexVersion) {
    throw IndexFormatError("unsupported index version " + std::to_string(version));
  }
  auto sentinel = static_cast<char>(r.get<std::uint8_t>());
  PhyloTree tree = read_tree(r);
  SideIndex forward = read_side(r, sentinel, tree.size());
  SideIndex reverse = read_side(r, sentinel, tree.size());
  if (!r.done()) {
    throw IndexFormatError("trailing bytes in index");
  }
  if (forward.reversed || !reverse.reversed ||
      !std::equal(forward.text.begin(), forward.text.end(), reverse.text.rbegin(),
                  reverse.text.rend()) ||
      forward.text.size() != reverse.text.size()) {
    throw IndexFormatError("forward and reverse sides do not mirror each other");
  }
  return KatkaIndex(std::move(tree), std::move(forward), std::move(reverse), sentinel);
}

KatkaIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IndexFormatError("cannot open index '" + path.string() + "'");
  }
  return load_index(in);
}

}  // namespace katka
