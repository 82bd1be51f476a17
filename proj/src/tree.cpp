#include "dendro/tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dendro {

int Tree::index(const std::string& n) const {
  auto it = idx_.find(n);
  return it == idx_.end() ? -1 : it->second;
}

int Tree::must_index(const std::string& n) const {
  int i = index(n);
  if (i < 0) throw tree_error("unknown edge: " + n);
  return i;
}

const std::vector<int>& Tree::inputs(int e) const {
  static const std::vector<int> none;
  return kids_[e] ? *kids_[e] : none;
}

bool Tree::weakly_above(int x, int y) const {
  for (int c = x; c >= 0; c = parent_[c])
    if (c == y) return true;
  return false;
}

std::vector<int> Tree::vertex_edges() const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (has_vertex(e)) out.push_back(e);
  return out;
}

std::vector<int> Tree::leaf_edges() const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (is_leaf(e)) out.push_back(e);
  return out;
}

int Tree::leaf_count() const { return static_cast<int>(leaf_edges().size()); }

bool Tree::operator==(const Tree& o) const {
  return names_ == o.names_ && root_ == o.root_ && kids_ == o.kids_;
}

Tree Tree::single_edge(const std::string& name) {
  Tree t;
  t.names_ = {name};
  t.idx_[name] = 0;
  t.root_ = 0;
  t.kids_.resize(1);
  t.finish();
  return t;
}

Tree Tree::from_parts(const std::string& root,
                      const std::map<std::string, std::vector<std::string>>& vertices) {
  Tree t;
  auto intern = [&](const std::string& n) {
    auto it = t.idx_.find(n);
    if (it != t.idx_.end()) return it->second;
    int i = static_cast<int>(t.names_.size());
    t.names_.push_back(n);
    t.idx_[n] = i;
    return i;
  };
  intern(root);
  for (auto& [out, ins] : vertices) {
    intern(out);
    for (auto& i : ins) intern(i);
  }
  t.root_ = t.idx_.at(root);
  t.kids_.resize(t.names_.size());
  for (auto& [out, ins] : vertices) {
    std::vector<int> k;
    for (auto& i : ins) k.push_back(t.idx_.at(i));
    t.kids_[t.idx_.at(out)] = std::move(k);
  }
  t.finish();
  return t;
}

void Tree::finish() {
  int n = n_edges();
  parent_.assign(n, -1);
  n_vertices_ = 0;
  for (int e = 0; e < n; ++e) {
    if (!kids_[e]) continue;
    ++n_vertices_;
    for (int c : *kids_[e]) {
      if (parent_[c] != -1) throw tree_error("edge " + names_[c] + " has two parents");
      if (c == root_) throw tree_error("root cannot be a vertex input");
      parent_[c] = e;
    }
  }
  // connectivity and acyclicity: everything reachable from the root, once
  std::vector<char> seen(n, 0);
  std::vector<int> stack{root_};
  int reached = 0;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (seen[e]) throw tree_error("cycle through edge " + names_[e]);
    seen[e] = 1;
    ++reached;
    for (int c : inputs(e)) stack.push_back(c);
  }
  if (reached != n) throw tree_error("tree is not connected");
  // canonical codes, bottom-up
  sub_code_.assign(n, "");
  std::function<void(int)> go = [&](int e) {
    if (!kids_[e]) {
      sub_code_[e] = "*";
      return;
    }
    std::vector<std::string> cs;
    for (int c : *kids_[e]) {
      go(c);
      cs.push_back(sub_code_[c]);
    }
    std::sort(cs.begin(), cs.end());
    std::string s = "(";
    for (auto& c : cs) s += c;
    s += ")";
    sub_code_[e] = std::move(s);
  };
  go(root_);
  code_ = sub_code_[root_];
}

// --- moves ---------------------------------------------------------------

TreeMove Tree::inner_face(int e) const {
  if (e < 0 || e >= n_edges()) throw tree_error("edge index out of range");
  if (!is_inner(e)) throw tree_error("edge " + names_[e] + " is not inner");
  int p = parent_[e];
  std::map<std::string, std::vector<std::string>> verts;
  for (int x = 0; x < n_edges(); ++x) {
    if (x == e || !kids_[x]) continue;
    std::vector<std::string> ins;
    if (x == p) {
      for (int c : *kids_[x]) {
        if (c == e)
          for (int g : inputs(e)) ins.push_back(names_[g]);
        else
          ins.push_back(names_[c]);
      }
    } else {
      for (int c : *kids_[x]) ins.push_back(names_[c]);
    }
    verts[names_[x]] = std::move(ins);
  }
  TreeMove m{from_parts(names_[root_], verts), {}};
  for (int x = 0; x < n_edges(); ++x)
    if (x != e) m.old_to_new[names_[x]] = names_[x];
  return m;
}

TreeMove Tree::outer_face(int v, std::optional<int> keep) const {
  if (v < 0 || v >= n_edges()) throw tree_error("edge index out of range");
  if (!has_vertex(v)) throw tree_error("edge " + names_[v] + " carries no vertex");
  std::vector<int> incident{v};
  for (int c : *kids_[v]) incident.push_back(c);
  std::vector<int> inner;
  for (int x : incident)
    if (is_inner(x)) inner.push_back(x);
  if (inner.size() > 1) throw tree_error("vertex on " + names_[v] + " is not an outer cluster");

  if (inner.empty()) {
    // corolla: the whole tree is this one vertex
    if (!keep) throw tree_error("corolla outer face needs a surviving edge");
    int k = *keep;
    if (std::find(incident.begin(), incident.end(), k) == incident.end())
      throw tree_error("surviving edge is not incident to the vertex");
    TreeMove m{single_edge(names_[k]), {}};
    m.old_to_new[names_[k]] = names_[k];
    return m;
  }
  if (keep) throw tree_error("surviving edge only applies to corollas");

  int survivor = inner[0];
  std::vector<char> removed(n_edges(), 0);
  for (int x : incident)
    if (x != survivor) removed[x] = 1;

  std::string new_root = names_[root_];
  if (survivor != v) new_root = names_[survivor];  // root cluster removed

  std::map<std::string, std::vector<std::string>> verts;
  for (int x = 0; x < n_edges(); ++x) {
    if (removed[x] || !kids_[x] || x == v) continue;
    std::vector<std::string> ins;
    for (int c : *kids_[x]) ins.push_back(names_[c]);
    verts[names_[x]] = std::move(ins);
  }
  TreeMove m{from_parts(new_root, verts), {}};
  for (int x = 0; x < n_edges(); ++x)
    if (!removed[x]) m.old_to_new[names_[x]] = names_[x];
  return m;
}

TreeMove Tree::outer_face(const std::string& v, std::optional<std::string> keep) const {
  std::optional<int> k;
  if (keep) k = must_index(*keep);
  return outer_face(must_index(v), k);
}

TreeMove Tree::inner_face(const std::string& e) const { return inner_face(must_index(e)); }
TreeMove Tree::degeneracy(const std::string& v) const { return degeneracy(must_index(v)); }

TreeMove Tree::degeneracy(int v) const {
  if (v < 0 || v >= n_edges()) throw tree_error("edge index out of range");
  if (!has_vertex(v) || valence(v) != 1)
    throw tree_error("vertex on " + names_[v] + " is not unary");
  int x = (*kids_[v])[0];
  std::map<std::string, std::vector<std::string>> verts;
  for (int y = 0; y < n_edges(); ++y) {
    if (y == x || !kids_[y]) continue;
    std::vector<std::string> ins;
    if (y == v) {
      if (!kids_[x]) continue;  // merged edge becomes a leaf
      for (int c : *kids_[x]) ins.push_back(names_[c]);
    } else {
      for (int c : *kids_[y]) ins.push_back(names_[c]);
    }
    verts[names_[y]] = std::move(ins);
  }
  TreeMove m{from_parts(names_[root_], verts), {}};
  for (int y = 0; y < n_edges(); ++y) m.old_to_new[names_[y]] = names_[y == x ? v : y];
  return m;
}

// --- parsing / rendering --------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  std::size_t p = 0;

  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
  }
  std::string name() {
    skip();
    std::size_t start = p;
    while (p < s.size() && name_char(s[p])) ++p;
    if (p == start) throw parse_error("expected edge name", p);
    return s.substr(start, p - start);
  }
  void edge(std::map<std::string, std::vector<std::string>>& verts,
            std::vector<std::string>& order, std::string& out) {
    out = name();
    if (std::find(order.begin(), order.end(), out) != order.end())
      throw parse_error("duplicate edge name '" + out + "'", p);
    order.push_back(out);
    skip();
    if (p < s.size() && s[p] == '(') {
      ++p;
      std::vector<std::string> ins;
      skip();
      if (p < s.size() && s[p] != ')') {
        for (;;) {
          std::string c;
          edge(verts, order, c);
          ins.push_back(c);
          skip();
          if (p < s.size() && s[p] == ',') {
            ++p;
            continue;
          }
          break;
        }
      }
      skip();
      if (p >= s.size() || s[p] != ')') throw parse_error("expected ')'", p);
      ++p;
      verts[out] = std::move(ins);
    }
  }
};

}  // namespace

Tree parse_tree(const std::string& text) {
  Parser par{text};
  std::map<std::string, std::vector<std::string>> verts;
  std::vector<std::string> order;
  std::string root;
  par.edge(verts, order, root);
  par.skip();
  if (par.p != text.size()) throw parse_error("trailing input", par.p);
  return Tree::from_parts(root, verts);
}

static void term_rec(const Tree& t, int e, std::string& out) {
  out += t.name(e);
  if (!t.has_vertex(e)) return;
  out += "(";
  bool first = true;
  for (int c : t.inputs(e)) {
    if (!first) out += ",";
    first = false;
    term_rec(t, c, out);
  }
  out += ")";
}

std::string render_term(const Tree& t) {
  std::string out;
  term_rec(t, t.root(), out);
  return out;
}

std::string render_dot(const Tree& t) {
  std::ostringstream os;
  os << "digraph tree {\n";
  os << "  // root at bottom; arrows point rootward\n";
  os << "  rankdir=BT;\n";
  for (int e = 0; e < t.n_edges(); ++e)
    os << "  e" << e << " [label=\"" << t.name(e) << "\", shape=plaintext];\n";
  for (int e = 0; e < t.n_edges(); ++e)
    if (t.has_vertex(e)) os << "  v" << e << " [label=\"\", shape=point];\n";
  for (int e = 0; e < t.n_edges(); ++e) {
    if (!t.has_vertex(e)) continue;
    os << "  v" << e << " -> e" << e << ";\n";
    for (int c : t.inputs(e)) os << "  e" << c << " -> v" << e << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string render_tree(const Tree& t, const std::string& fmt) {
  if (fmt == "term") return render_term(t);
  if (fmt == "dot") return render_dot(t);
  throw tree_error("unknown render format: " + fmt);
}

Tree linear_tree(int n) {
  if (n < 0) throw tree_error("linear_tree needs n >= 0");
  if (n == 0) return Tree::single_edge("0");
  std::map<std::string, std::vector<std::string>> verts;
  for (int i = 1; i <= n; ++i) verts[std::to_string(i)] = {std::to_string(i - 1)};
  return Tree::from_parts(std::to_string(n), verts);
}

Tree corolla(int n) {
  if (n < 0) throw tree_error("corolla needs n >= 0");
  std::map<std::string, std::vector<std::string>> verts;
  std::vector<std::string> ins;
  for (int i = 1; i <= n; ++i) ins.push_back(std::to_string(i));
  verts["0"] = ins;
  return Tree::from_parts("0", verts);
}

// --- codes ----------------------------------------------------------------

namespace {

// splits "(c1c2..ck)" into child codes; "*" has no children
std::vector<std::string> code_children(const std::string& code, std::size_t& pos) {
  std::vector<std::string> out;
  if (code[pos] == '*') {
    ++pos;
    return out;  // caller interprets
  }
  if (code[pos] != '(') throw tree_error("bad code: " + code);
  ++pos;
  while (code[pos] != ')') {
    std::size_t start = pos;
    if (code[pos] == '*') {
      ++pos;
    } else {
      int depth = 0;
      do {
        if (code[pos] == '(') ++depth;
        if (code[pos] == ')') --depth;
        ++pos;
      } while (depth > 0);
    }
    out.push_back(code.substr(start, pos - start));
  }
  ++pos;
  return out;
}

}  // namespace

int code_edge_count(const std::string& code) {
  int edges = 0;
  for (char c : code)
    if (c == '*' || c == '(') ++edges;
  return edges;
}

Tree tree_from_code(const std::string& code) {
  int counter = 0;
  std::map<std::string, std::vector<std::string>> verts;
  std::function<std::string(const std::string&)> build = [&](const std::string& c) {
    std::string nm = "e" + std::to_string(counter++);
    if (c == "*") return nm;
    std::size_t pos = 0;
    auto kids = code_children(c, pos);
    std::vector<std::string> ins;
    for (auto& k : kids) ins.push_back(build(k));
    verts[nm] = ins;
    return nm;
  };
  std::string root = build(code);
  Tree t = Tree::from_parts(root, verts);
  if (t.code() != code) throw tree_error("non-canonical code: " + code);
  return t;
}

namespace {

// codes with exactly k edges, memoized, sorted
const std::vector<std::string>& codes_exact(int k, std::vector<std::vector<std::string>>& memo) {
  if (k < static_cast<int>(memo.size()) && !memo[k].empty()) return memo[k];
  if (k >= static_cast<int>(memo.size())) memo.resize(k + 1);
  std::vector<std::string> out;
  if (k == 1) {
    out = {"()", "*"};
  } else {
    // non-decreasing sequences of child codes with edge counts summing to k-1
    std::vector<std::string> acc;
    std::function<void(int)> rec = [&](int left) {
      if (left == 0) {
        std::string s = "(";
        for (auto& a : acc) s += a;
        s += ")";
        out.push_back(s);
        return;
      }
      for (int j = 1; j <= left; ++j) {
        for (const auto& c : codes_exact(j, memo)) {
          if (!acc.empty() && c < acc.back()) continue;
          acc.push_back(c);
          rec(left - j);
          acc.pop_back();
        }
      }
    };
    rec(k - 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  memo[k] = std::move(out);
  return memo[k];
}

}  // namespace

std::vector<std::string> enumerate_trees(int max_edges) {
  if (max_edges < 1) throw tree_error("enumerate_trees needs max_edges >= 1");
  std::vector<std::vector<std::string>> memo;
  std::vector<std::string> all;
  for (int k = 1; k <= max_edges; ++k) {
    auto& c = codes_exact(k, memo);
    all.insert(all.end(), c.begin(), c.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

// --- isomorphism ----------------------------------------------------------

namespace {

bool match_rec(const Tree& s, const Tree& t, int es, int et, std::vector<int>& out) {
  if (s.code_at(es) != t.code_at(et)) return false;
  out[es] = et;
  if (s.is_leaf(es)) return true;
  // pair children by sorted code; ties resolved by stored order
  auto order = [](const Tree& tr, int e) {
    std::vector<int> ch = tr.inputs(e);
    std::stable_sort(ch.begin(), ch.end(), [&](int a, int b) {
      return tr.code_at(a) < tr.code_at(b);
    });
    return ch;
  };
  auto cs = order(s, es), ct = order(t, et);
  if (cs.size() != ct.size()) return false;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (!match_rec(s, t, cs[i], ct[i], out)) return false;
  return true;
}

}  // namespace

std::optional<std::vector<int>> isomorphism(const Tree& s, const Tree& t) {
  if (s.code() != t.code()) return std::nullopt;
  std::vector<int> out(s.n_edges(), -1);
  if (!match_rec(s, t, s.root(), t.root(), out)) return std::nullopt;
  return out;
}

namespace {

// enumerate all ways to biject the children of e onto the children of f
// respecting codes, continuing with `cont`
void child_perms(const Tree& t, const std::vector<int>& cs, const std::vector<int>& ct,
                 std::size_t i, std::vector<int>& cur,
                 const std::function<void(std::vector<int>&)>& cont,
                 std::vector<char>& used) {
  if (i == cs.size()) {
    cont(cur);
    return;
  }
  for (std::size_t j = 0; j < ct.size(); ++j) {
    if (used[j] || t.code_at(cs[i]) != t.code_at(ct[j])) continue;
    used[j] = 1;
    // recurse into the subtree then continue with remaining siblings
    std::function<void(std::vector<int>&)> next = [&, i](std::vector<int>& c) {
      child_perms(t, cs, ct, i + 1, c, cont, used);
    };
    int a = cs[i], b = ct[j];
    // map subtree a onto subtree b in all possible ways
    std::function<void(int, int, const std::function<void(std::vector<int>&)>&)> sub =
        [&](int x, int y, const std::function<void(std::vector<int>&)>& k) {
          cur[x] = y;
          if (t.is_leaf(x)) {
            k(cur);
            return;
          }
          std::vector<char> u(t.inputs(y).size(), 0);
          child_perms(t, t.inputs(x), t.inputs(y), 0, cur, k, u);
        };
    sub(a, b, next);
    used[j] = 0;
  }
}

}  // namespace

std::vector<std::vector<int>> automorphism_maps(const Tree& t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(t.n_edges(), -1);
  cur[t.root()] = t.root();
  std::function<void(std::vector<int>&)> done = [&](std::vector<int>& c) { out.push_back(c); };
  if (t.is_leaf(t.root())) {
    out.push_back(cur);
  } else {
    std::vector<char> used(t.inputs(t.root()).size(), 0);
    child_perms(t, t.inputs(t.root()), t.inputs(t.root()), 0, cur, done, used);
  }
  std::sort(out.begin(), out.end());
  // identity first
  std::vector<int> id(t.n_edges());
  for (int i = 0; i < t.n_edges(); ++i) id[i] = i;
  auto it = std::find(out.begin(), out.end(), id);
  if (it != out.begin() && it != out.end()) std::iter_swap(out.begin(), it);
  return out;
}

}  // namespace dendro
