#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendro {

struct parse_error : std::runtime_error {
  std::size_t pos;
  parse_error(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

struct tree_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreeMove;

// Finite rooted non-planar tree with named edges. A vertex sits at the top of
// its output edge and is identified by that edge; inputs(e) lists the input
// edges of the vertex on e. Stored input order is not semantically
// meaningful. Immutable after construction.
class Tree {
 public:
  Tree() = default;

  static Tree single_edge(const std::string& name);
  // vertices: output edge name -> input edge names (entry with empty list is
  // a nullary vertex; edges absent from the map are leaves).
  static Tree from_parts(const std::string& root,
                         const std::map<std::string, std::vector<std::string>>& vertices);

  int n_edges() const { return static_cast<int>(names_.size()); }
  int n_vertices() const { return n_vertices_; }
  int root() const { return root_; }
  const std::string& name(int e) const { return names_[e]; }
  int index(const std::string& n) const;  // -1 if absent
  bool has_edge(const std::string& n) const { return index(n) >= 0; }

  bool has_vertex(int e) const { return kids_[e].has_value(); }
  const std::vector<int>& inputs(int e) const;
  int valence(int e) const { return static_cast<int>(inputs(e).size()); }
  int parent(int e) const { return parent_[e]; }
  bool is_leaf(int e) const { return !kids_[e].has_value(); }
  bool is_inner(int e) const { return has_vertex(e) && e != root_; }
  bool is_outer(int e) const { return !is_inner(e); }
  // true iff y lies on the path from x to the root (inclusive)
  bool weakly_above(int x, int y) const;
  bool strictly_above(int x, int y) const { return x != y && weakly_above(x, y); }

  std::vector<int> vertex_edges() const;  // edges carrying a vertex, ascending
  std::vector<int> leaf_edges() const;
  int leaf_count() const;

  bool operator==(const Tree& o) const;

  // canonical code of the isomorphism class; equal codes iff isomorphic
  const std::string& code() const { return code_; }
  const std::string& code_at(int e) const { return sub_code_[e]; }

  TreeMove inner_face(int e) const;
  // v names the vertex by its output edge; keep is required exactly when the
  // tree is a corolla (all incident edges outer) and names the surviving edge
  TreeMove outer_face(int v, std::optional<int> keep = std::nullopt) const;
  TreeMove degeneracy(int v) const;

  TreeMove inner_face(const std::string& e) const;
  TreeMove outer_face(const std::string& v,
                      std::optional<std::string> keep = std::nullopt) const;
  TreeMove degeneracy(const std::string& v) const;

  int must_index(const std::string& n) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> idx_;
  int root_ = -1;
  std::vector<std::optional<std::vector<int>>> kids_;
  std::vector<int> parent_;
  std::vector<std::string> sub_code_;
  std::string code_;
  int n_vertices_ = 0;

  void finish();  // validate, compute parents and codes
};

struct TreeMove {
  Tree tree;
  // old edge name -> new edge name; edges removed by the move are absent
  std::map<std::string, std::string> old_to_new;
};

Tree parse_tree(const std::string& text);
std::string render_term(const Tree& t);
std::string render_dot(const Tree& t);
std::string render_tree(const Tree& t, const std::string& fmt);  // fmt: term | dot

Tree linear_tree(int n);  // edges "0".."n", 0 the top leaf, n the root
Tree corolla(int n);      // root "0", leaves "1".."n"

// canonical representative of an isomorphism class, edges named e0,e1,.. in
// preorder with children in code order
Tree tree_from_code(const std::string& code);
int code_edge_count(const std::string& code);

// all isomorphism classes with <= max_edges edges, in lexicographic code order
std::vector<std::string> enumerate_trees(int max_edges);

// root- and incidence-preserving edge bijection (src index -> dst index), if any
std::optional<std::vector<int>> isomorphism(const Tree& s, const Tree& t);
// all automorphic edge bijections of t, deterministic order (identity first)
std::vector<std::vector<int>> automorphism_maps(const Tree& t);

}  // namespace dendro
