#include "rspr/tree.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <utility>

namespace rspr {

namespace {

void rebuild_from(Tree& t, int v, int parent, int depth) {
  Node& node = t.nodes[v];
  node.parent = parent;
  node.depth = depth;
  if (node.left < 0) {
    node.size = 1;
    node.nleaves = 1;
    node.min_label = node.label;
    return;
  }
  rebuild_from(t, node.left, v, depth + 1);
  rebuild_from(t, node.right, v, depth + 1);
  if (t.nodes[node.left].min_label > t.nodes[node.right].min_label)
    std::swap(node.left, node.right);
  node.size = 1 + t.nodes[node.left].size + t.nodes[node.right].size;
  node.nleaves = t.nodes[node.left].nleaves + t.nodes[node.right].nleaves;
  node.min_label = t.nodes[node.left].min_label;
}

class NewickParser {
 public:
  explicit NewickParser(const std::string& text) : text_(text) {}

  Tree parse() {
    Tree t;
    t.root = parse_subtree(t);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ';') {
      ++pos_;
      skip_space();
    }
    if (pos_ != text_.size()) fail("trailing characters");
    rebuild(t);
    validate_labels(t);
    return t;
  }

 private:
  int parse_subtree(Tree& t) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    int v;
    if (text_[pos_] == '(') {
      ++pos_;
      const int left = parse_subtree(t);
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ',')
        fail("internal nodes need exactly two children");
      ++pos_;
      const int right = parse_subtree(t);
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',')
        fail("internal nodes need exactly two children");
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      v = static_cast<int>(t.nodes.size());
      t.nodes.emplace_back();
      t.nodes[v].left = left;
      t.nodes[v].right = right;
    } else {
      if (!std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected '(' or a leaf label");
      long label = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        label = label * 10 + (text_[pos_] - '0');
        if (label > 1000000) fail("leaf label out of range");
        ++pos_;
      }
      if (label == 0) fail("leaf labels start at 1");
      v = static_cast<int>(t.nodes.size());
      t.nodes.emplace_back();
      t.nodes[v].label = static_cast<int>(label);
    }
    skip_branch_length();
    return v;
  }

  void skip_branch_length() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
              text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ == start) fail("expected a branch length after ':'");
    }
  }

  void validate_labels(const Tree& t) {
    std::set<int> seen;
    int n = 0;
    for (const Node& node : t.nodes) {
      if (node.left >= 0) continue;
      ++n;
      if (!seen.insert(node.label).second) fail_nopos("duplicate label");
    }
    if (*seen.begin() != 1 || *seen.rbegin() != n)
      fail_nopos("leaf labels must be exactly 1..n");
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("newick parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }
  [[noreturn]] void fail_nopos(const std::string& what) {
    throw std::invalid_argument("newick parse error: " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void write_newick(const Tree& t, int v, std::string& out) {
  const Node& node = t.nodes[v];
  if (node.left < 0) {
    out += std::to_string(node.label);
    return;
  }
  out += '(';
  write_newick(t, node.left, out);
  out += ',';
  write_newick(t, node.right, out);
  out += ')';
}

}  // namespace

void rebuild(Tree& t) {
  if (t.root < 0) throw std::logic_error("rebuild: empty tree");
  rebuild_from(t, t.root, -1, 0);
}

Tree parse_newick(const std::string& text) { return NewickParser(text).parse(); }

std::string to_newick(const Tree& t) {
  std::string out;
  out.reserve(t.nodes.size() * 3 + 2);
  write_newick(t, t.root, out);
  out += ';';
  return out;
}

std::vector<int> preorder(const Tree& t) {
  std::vector<int> order;
  order.reserve(t.nodes.size());
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (!t.is_leaf(v)) {
      stack.push_back(t.nodes[v].right);
      stack.push_back(t.nodes[v].left);
    }
  }
  return order;
}

int lca(const Tree& t, int u, int v) {
  while (u != v) {
    if (t.nodes[u].depth >= t.nodes[v].depth)
      u = t.nodes[u].parent;
    else
      v = t.nodes[v].parent;
  }
  return u;
}

int find_leaf(const Tree& t, int label) {
  for (std::size_t v = 0; v < t.nodes.size(); ++v)
    if (t.nodes[v].left < 0 && t.nodes[v].label == label)
      return static_cast<int>(v);
  return -1;
}

std::vector<int> leaf_labels(const Tree& t) {
  std::vector<int> labels;
  for (const Node& node : t.nodes)
    if (node.left < 0) labels.push_back(node.label);
  std::sort(labels.begin(), labels.end());
  return labels;
}

namespace {

int restrict_rec(const Tree& t, int v, const std::set<int>& keep, Tree& out) {
  const Node& node = t.nodes[v];
  if (node.left < 0) {
    if (!keep.count(node.label)) return -1;
    const int id = static_cast<int>(out.nodes.size());
    out.nodes.emplace_back();
    out.nodes[id].label = node.label;
    return id;
  }
  const int l = restrict_rec(t, node.left, keep, out);
  const int r = restrict_rec(t, node.right, keep, out);
  if (l < 0) return r;
  if (r < 0) return l;
  const int id = static_cast<int>(out.nodes.size());
  out.nodes.emplace_back();
  out.nodes[id].left = l;
  out.nodes[id].right = r;
  return id;
}

}  // namespace

Tree restrict_to(const Tree& t, const std::vector<int>& labels) {
  if (labels.size() < 2)
    throw std::invalid_argument("restrict_to: need at least two labels");
  std::set<int> keep(labels.begin(), labels.end());
  for (int label : keep)
    if (find_leaf(t, label) < 0)
      throw std::invalid_argument("restrict_to: label " +
                                  std::to_string(label) + " not in tree");
  Tree out;
  out.root = restrict_rec(t, t.root, keep, out);
  rebuild(out);
  return out;
}

Tree relabel(const Tree& t, const std::vector<int>& perm) {
  const int n = t.n_leaves();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("relabel: permutation size mismatch");
  Tree out = t;
  for (Node& node : out.nodes)
    if (node.left < 0) {
      if (node.label < 1 || node.label > n)
        throw std::invalid_argument("relabel: tree labels must be 1..n");
      node.label = perm[node.label - 1];
    }
  rebuild(out);
  return out;
}

bool same_topology(const Tree& a, const Tree& b) {
  return to_newick(a) == to_newick(b);
}

namespace {

std::string shape_rec(const Tree& t, int v) {
  if (t.is_leaf(v)) return "*";
  std::string l = shape_rec(t, t.nodes[v].left);
  std::string r = shape_rec(t, t.nodes[v].right);
  if (r < l) std::swap(l, r);
  return "(" + l + "," + r + ")";
}

}  // namespace

std::string shape_string(const Tree& t) { return shape_rec(t, t.root); }

Tree make_leaf_tree(int label) {
  Tree t;
  t.nodes.emplace_back();
  t.nodes[0].label = label;
  t.root = 0;
  rebuild(t);
  return t;
}

Tree join(const Tree& a, const Tree& b) {
  Tree t;
  t.nodes.reserve(a.nodes.size() + b.nodes.size() + 1);
  t.nodes = a.nodes;
  const int offset = static_cast<int>(t.nodes.size());
  for (Node node : b.nodes) {
    if (node.left >= 0) {
      node.left += offset;
      node.right += offset;
    }
    t.nodes.push_back(node);
  }
  const int root = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  t.nodes[root].left = a.root;
  t.nodes[root].right = b.root + offset;
  t.root = root;
  rebuild(t);
  return t;
}

Tree make_ladder(int n) {
  if (n < 2) throw std::invalid_argument("make_ladder: need n >= 2");
  Tree t = make_leaf_tree(1);
  for (int label = 2; label <= n; ++label) t = join(t, make_leaf_tree(label));
  return t;
}

namespace {

Tree balanced_range(int lo, int hi) {
  if (lo == hi) return make_leaf_tree(lo);
  const int mid = lo + (hi - lo) / 2;
  return join(balanced_range(lo, mid), balanced_range(mid + 1, hi));
}

}  // namespace

Tree make_balanced(int n) {
  if (n < 2) throw std::invalid_argument("make_balanced: need n >= 2");
  return balanced_range(1, n);
}

}  // namespace rspr
