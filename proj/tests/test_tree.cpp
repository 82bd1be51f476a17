#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "dendro/tree.hpp"

using namespace dendro;

namespace {

const char* kRunning = "a(b(e,f),c,d())";

// brute-force isomorphism: try all edge bijections preserving root and incidence
bool iso_brute(const Tree& s, const Tree& t) {
  if (s.n_edges() != t.n_edges()) return false;
  int n = s.n_edges();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[s.root()] != t.root()) continue;
    bool ok = true;
    for (int e = 0; e < n && ok; ++e) {
      if (s.has_vertex(e) != t.has_vertex(perm[e])) {
        ok = false;
        break;
      }
      if (!s.has_vertex(e)) continue;
      std::vector<int> a, b = t.inputs(perm[e]);
      for (int c : s.inputs(e)) a.push_back(perm[c]);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Tree shuffled(const Tree& t, std::mt19937& rng) {
  std::map<std::string, std::vector<std::string>> verts;
  for (int e = 0; e < t.n_edges(); ++e) {
    if (!t.has_vertex(e)) continue;
    std::vector<std::string> ins;
    for (int c : t.inputs(e)) ins.push_back(t.name(c));
    std::shuffle(ins.begin(), ins.end(), rng);
    verts[t.name(e)] = ins;
  }
  return Tree::from_parts(t.name(t.root()), verts);
}

}  // namespace

TEST_CASE("parse basics") {
  Tree eta = parse_tree("e");
  CHECK(eta.n_edges() == 1);
  CHECK(eta.n_vertices() == 0);
  CHECK(eta.name(eta.root()) == "e");

  Tree t = parse_tree(kRunning);
  CHECK(t.n_edges() == 6);
  CHECK(t.n_vertices() == 3);
  std::multiset<int> vals;
  for (int v : t.vertex_edges()) vals.insert(t.valence(v));
  CHECK(vals == std::multiset<int>{0, 2, 3});

  Tree lin = parse_tree("x(y)");
  CHECK(lin.n_edges() == 2);
  CHECK(lin.n_vertices() == 1);

  CHECK_THROWS_AS(parse_tree("a(b"), parse_error);
  CHECK_THROWS_AS(parse_tree("a(b,b)"), parse_error);
  CHECK_THROWS_AS(parse_tree("a(b)c"), parse_error);
  CHECK_THROWS_AS(parse_tree(""), parse_error);
}

TEST_CASE("render") {
  CHECK(render_term(Tree::single_edge("e")) == "e");
  Tree t = parse_tree(kRunning);
  Tree back = parse_tree(render_term(t));
  CHECK(isomorphism(t, back).has_value());

  std::string dot = render_dot(t);
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 6);
  // 6 edge nodes, 3 vertex nodes
  int en = 0, vn = 0;
  for (int e = 0; e < t.n_edges(); ++e) {
    if (dot.find("e" + std::to_string(e) + " [label") != std::string::npos) ++en;
    if (dot.find("v" + std::to_string(e) + " [label") != std::string::npos) ++vn;
  }
  CHECK(en == 6);
  CHECK(vn == 3);
}

TEST_CASE("canonical codes") {
  CHECK(parse_tree("e").code() == "*");
  CHECK(corolla(2).code() == "(**)");
  // two planar representations of the same tree
  Tree p1 = parse_tree("e(c(a,b),d)");
  Tree p2 = parse_tree("e(d,c(b,a))");
  CHECK(p1.code() == p2.code());
  CHECK(linear_tree(2).code() == "((*))");
  CHECK(corolla(0).code() == "()");
}

TEST_CASE("planar invariance") {
  std::mt19937 rng(20240811);
  for (const auto& code : enumerate_trees(6)) {
    Tree t = tree_from_code(code);
    for (int k = 0; k < 5; ++k) {
      Tree s = shuffled(t, rng);
      CHECK(s.code() == code);
    }
  }
}

TEST_CASE("isomorphism") {
  Tree x = Tree::single_edge("x"), y = Tree::single_edge("y");
  auto m = isomorphism(x, y);
  REQUIRE(m.has_value());
  CHECK(y.name((*m)[x.root()]) == "y");

  CHECK(isomorphism(linear_tree(2), corolla(2)) == std::nullopt);
  CHECK(automorphism_maps(corolla(2)).size() == 2);
}

TEST_CASE("isomorphism agrees with brute force up to 5 edges") {
  auto codes = enumerate_trees(5);
  std::vector<Tree> trees;
  for (auto& c : codes) trees.push_back(tree_from_code(c));
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = 0; j < trees.size(); ++j) {
      bool via_code = isomorphism(trees[i], trees[j]).has_value();
      CHECK(via_code == (codes[i] == codes[j]));
      if (trees[i].n_edges() == trees[j].n_edges())
        CHECK(via_code == iso_brute(trees[i], trees[j]));
    }
}

TEST_CASE("generators") {
  Tree l0 = linear_tree(0);
  CHECK(l0.code() == "*");
  Tree l2 = linear_tree(2);
  CHECK(l2.n_edges() == 3);
  CHECK(l2.n_vertices() == 2);
  for (int v : l2.vertex_edges()) CHECK(l2.valence(v) == 1);
  Tree c0 = corolla(0);
  CHECK(c0.n_edges() == 1);
  CHECK(c0.n_vertices() == 1);
  CHECK(c0.valence(c0.root()) == 0);
}

TEST_CASE("inner faces") {
  Tree t = parse_tree(kRunning);
  auto m = t.inner_face(t.must_index("b"));
  CHECK(isomorphism(m.tree, parse_tree("a(e,f,c,d())")).has_value());
  CHECK(m.old_to_new.count("b") == 0);
  CHECK(m.old_to_new.at("e") == "e");

  auto md = t.inner_face(t.must_index("d"));
  CHECK(isomorphism(md.tree, parse_tree("a(b(e,f),c)")).has_value());

  auto ml = linear_tree(2).inner_face(linear_tree(2).must_index("1"));
  CHECK(ml.tree.code() == linear_tree(1).code());

  CHECK_THROWS_AS(t.inner_face(t.must_index("c")), tree_error);   // leaf
  CHECK_THROWS_AS(t.inner_face(t.must_index("a")), tree_error);   // root
  CHECK_THROWS_AS(t.inner_face(std::string("zz")), tree_error);   // unknown
}

TEST_CASE("outer faces") {
  Tree t = parse_tree(kRunning);
  auto mv = t.outer_face(t.must_index("b"));
  CHECK(isomorphism(mv.tree, parse_tree("a(b,c,d())")).has_value());
  auto mw = t.outer_face(t.must_index("d"));
  CHECK(isomorphism(mw.tree, parse_tree("a(b(e,f),c,d)")).has_value());
  CHECK_THROWS_AS(t.outer_face(t.must_index("a")), tree_error);  // two inner incidents

  Tree c2 = corolla(2);
  auto mk = c2.outer_face(c2.root(), c2.index("1"));
  CHECK(mk.tree.code() == "*");
  CHECK(mk.tree.name(mk.tree.root()) == "1");
  CHECK_THROWS_AS(c2.outer_face(c2.root()), tree_error);                 // corolla needs keep
  CHECK_THROWS_AS(t.outer_face(t.must_index("b"), t.index("e")), tree_error);  // keep not allowed
}

TEST_CASE("degeneracies") {
  Tree l1 = linear_tree(1);
  auto m = l1.degeneracy(l1.must_index("1"));
  CHECK(m.tree.code() == "*");
  CHECK(m.old_to_new.at("0") == m.old_to_new.at("1"));

  Tree l2 = linear_tree(2);
  auto m1 = l2.degeneracy(l2.must_index("1"));
  CHECK(m1.tree.code() == linear_tree(1).code());

  Tree t = parse_tree(kRunning);
  for (int v : t.vertex_edges()) CHECK_THROWS_AS(t.degeneracy(v), tree_error);
}

TEST_CASE("move arithmetic") {
  for (const auto& code : enumerate_trees(5)) {
    Tree t = tree_from_code(code);
    for (int e = 0; e < t.n_edges(); ++e) {
      if (t.is_inner(e)) {
        auto m = t.inner_face(e);
        CHECK(m.tree.n_edges() == t.n_edges() - 1);
        CHECK(m.tree.n_vertices() == t.n_vertices() - 1);
      }
      if (t.has_vertex(e) && t.valence(e) == 1) {
        auto m = t.degeneracy(e);
        CHECK(m.tree.n_edges() == t.n_edges() - 1);
        CHECK(m.tree.n_vertices() == t.n_vertices() - 1);
      }
      if (t.has_vertex(e)) {
        std::vector<int> incident{e};
        for (int c : t.inputs(e)) incident.push_back(c);
        int inner = 0;
        for (int x : incident)
          if (t.is_inner(x)) ++inner;
        if (inner == 1) {
          auto m = t.outer_face(e);
          CHECK(m.tree.n_vertices() == t.n_vertices() - 1);
        }
      }
    }
  }
}

TEST_CASE("enumeration") {
  auto e1 = enumerate_trees(1);
  CHECK(e1 == std::vector<std::string>{"()", "*"});
  auto e2 = enumerate_trees(2);
  CHECK(e2 == std::vector<std::string>{"(())", "()", "(*)", "*"});
  std::size_t prev = 0;
  std::vector<std::size_t> counts;
  for (int k = 1; k <= 6; ++k) {
    auto ek = enumerate_trees(k);
    CHECK(ek.size() > prev);
    prev = ek.size();
    counts.push_back(ek.size());
    for (auto& c : ek) {
      CHECK(code_edge_count(c) <= k);
      Tree t = tree_from_code(c);
      CHECK(t.code() == c);
      CHECK(t.n_edges() == code_edge_count(c));
    }
  }
  CHECK(counts == std::vector<std::size_t>{2, 4, 9, 22, 59, 167});
}

TEST_CASE("round trip up to 7 edges") {
  for (const auto& code : enumerate_trees(7)) {
    Tree t = tree_from_code(code);
    Tree back = parse_tree(render_term(t));
    CHECK(isomorphism(t, back).has_value());
  }
}
