#include <cctype>
#include <cstdint>
#include <istream>
#include <iterator>
#include <unordered_set>

#include "katka/error.hpp"
#include "katka/model.hpp"

namespace katka {

namespace {

class NewickReader {
 public:
  explicit NewickReader(std::string_view src) : src_(src) {}

  PhyloTree read() {
    skip_blank();
    if (at_end()) {
      throw ParseError("empty tree", line_);
    }

    std::vector<PhyloTree::NodeSpec> nodes;
    std::vector<std::size_t> open;
    auto attach = [&](std::size_t id) {
      if (!open.empty()) {
        nodes[open.back()].children.push_back(id);
      } else if (id != 0) {
        throw ParseError("more than one top-level subtree", line_);
      }
    };

    bool expect_subtree = true;
    bool done = false;
    while (!done) {
      skip_blank();
      if (at_end()) {
        throw ParseError("missing terminating ';'", line_);
      }
      char c = src_[pos_];
      if (expect_subtree) {
        if (c == '(') {
          ++pos_;
          nodes.emplace_back();
          attach(nodes.size() - 1);
          open.push_back(nodes.size() - 1);
          continue;
        }
        std::string label = read_label();
        if (label.empty()) {
          throw ParseError("leaf without a label", line_);
        }
        nodes.push_back({{}, std::move(label)});
        attach(nodes.size() - 1);
        skip_length();
        expect_subtree = false;
        continue;
      }
      switch (c) {
        case ',':
          if (open.empty()) {
            throw ParseError("',' outside parentheses", line_);
          }
          ++pos_;
          expect_subtree = true;
          break;
        case ')': {
          if (open.empty()) {
            throw ParseError("unbalanced ')'", line_);
          }
          ++pos_;
          std::size_t id = open.back();
          open.pop_back();
          nodes[id].label = read_label();
          skip_length();
          break;
        }
        case ';':
          if (!open.empty()) {
            throw ParseError("unbalanced '('", line_);
          }
          ++pos_;
          done = true;
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line_);
      }
    }
    skip_blank();
    if (!at_end()) {
      throw ParseError("trailing input after ';'", line_);
    }

    std::unordered_set<std::string_view> seen;
    for (const auto& n : nodes) {
      if (n.children.empty() && !seen.insert(n.label).second) {
        throw ParseError("duplicate leaf label '" + n.label + "'");
      }
    }

    std::size_t root = 0;
    while (nodes[root].children.size() == 1 && nodes[root].label.empty()) {
      root = nodes[root].children.front();
    }
    if (root == 0) {
      return PhyloTree::from_nodes(nodes, 0);
    }
    // Drop the collapsed chain and renumber the remaining ids.
    std::vector<std::size_t> remap(nodes.size(), SIZE_MAX);
    std::vector<PhyloTree::NodeSpec> kept;
    std::vector<std::size_t> todo{root};
    while (!todo.empty()) {
      std::size_t id = todo.back();
      todo.pop_back();
      remap[id] = kept.size();
      kept.push_back(nodes[id]);
      for (std::size_t c : nodes[id].children) {
        todo.push_back(c);
      }
    }
    for (auto& n : kept) {
      for (auto& c : n.children) {
        c = remap[c];
      }
    }
    return PhyloTree::from_nodes(kept, 0);
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }

  void skip_blank() {
    while (!at_end()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        std::size_t close = src_.find(']', pos_);
        if (close == std::string_view::npos) {
          throw ParseError("unterminated comment", line_);
        }
        for (std::size_t i = pos_; i < close; ++i) {
          line_ += src_[i] == '\n';
        }
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  std::string read_label() {
    skip_blank();
    std::string label;
    if (!at_end() && src_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (at_end()) {
          throw ParseError("unterminated quoted label", line_);
        }
        char c = src_[pos_++];
        if (c == '\'') {
          if (!at_end() && src_[pos_] == '\'') {
            label.push_back('\'');
            ++pos_;
            continue;
          }
          break;
        }
        line_ += c == '\n';
        label.push_back(c);
      }
      return label;
    }
    while (!at_end() && !is_delimiter(src_[pos_])) {
      label.push_back(src_[pos_++]);
    }
    return label;
  }

  void skip_length() {
    skip_blank();
    if (at_end() || src_[pos_] != ':') {
      return;
    }
    ++pos_;
    skip_blank();
    std::size_t start = pos_;
    while (!at_end() && !is_delimiter(src_[pos_])) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError("missing branch length after ':'", line_);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

PhyloTree parse_newick(std::string_view source) { return NewickReader(source).read(); }

PhyloTree parse_newick(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_newick(text);
}

}  // namespace katka
