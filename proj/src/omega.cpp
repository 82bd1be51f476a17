#include "dendro/omega.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dendro {

bool op_exists(const Tree& t, const std::vector<int>& inputs, int output) {
  if (output < 0 || output >= t.n_edges()) throw omega_error("unknown edge index");
  for (int a : inputs)
    if (a < 0 || a >= t.n_edges()) throw omega_error("unknown edge index");
  // distinct
  std::set<int> in(inputs.begin(), inputs.end());
  if (in.size() != inputs.size()) return false;
  // weakly above output, pairwise incomparable
  for (int a : inputs) {
    if (!t.weakly_above(a, output)) return false;
    for (int b : inputs)
      if (a != b && t.weakly_above(a, b)) return false;
  }
  // every outer leaf edge weakly above output lies weakly above some input
  for (int l : t.leaf_edges()) {
    if (!t.weakly_above(l, output)) continue;
    bool covered = false;
    for (int a : inputs)
      if (t.weakly_above(l, a)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool op_exists_bfs(const Tree& t, const std::vector<int>& inputs, int output) {
  if (output < 0 || output >= t.n_edges()) throw omega_error("unknown edge index");
  for (int a : inputs)
    if (a < 0 || a >= t.n_edges()) throw omega_error("unknown edge index");
  std::vector<int> target(inputs.begin(), inputs.end());
  std::sort(target.begin(), target.end());
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier{{output}};
  seen.insert({output});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& state : frontier) {
      if (state == target) return true;
      for (std::size_t i = 0; i < state.size(); ++i) {
        int e = state[i];
        if (!t.has_vertex(e)) continue;
        std::vector<int> s2;
        for (std::size_t j = 0; j < state.size(); ++j)
          if (j != i) s2.push_back(state[j]);
        for (int c : t.inputs(e)) s2.push_back(c);
        std::sort(s2.begin(), s2.end());
        if (seen.insert(s2).second) next.push_back(std::move(s2));
      }
    }
    frontier = std::move(next);
  }
  return seen.count(target) > 0;
}

bool valid_morphism(const OmegaMor& f) {
  if (static_cast<int>(f.map.size()) != f.src.n_edges()) return false;
  for (int v : f.src.vertex_edges()) {
    std::vector<int> ins;
    for (int c : f.src.inputs(v)) ins.push_back(f.map[c]);
    if (!op_exists(f.dst, ins, f.map[v])) return false;
  }
  return true;
}

OmegaMor identity(const Tree& t) {
  std::vector<int> m(t.n_edges());
  for (int i = 0; i < t.n_edges(); ++i) m[i] = i;
  return {t, t, m};
}

OmegaMor compose(const OmegaMor& g, const OmegaMor& f) {
  if (!(f.dst == g.src)) throw omega_error("composition boundary mismatch");
  std::vector<int> m(f.src.n_edges());
  for (int i = 0; i < f.src.n_edges(); ++i) m[i] = g.map[f.map[i]];
  return {f.src, g.dst, m};
}

namespace {

// edges of s in BFS order from the root, parents before children
std::vector<int> bfs_order(const Tree& s) {
  std::vector<int> order{s.root()};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : s.inputs(order[i])) order.push_back(c);
  return order;
}

void hom_rec(const Tree& s, const Tree& t, const std::vector<int>& order, std::size_t k,
             std::vector<int>& map, std::vector<OmegaMor>& out) {
  if (k == order.size()) {
    OmegaMor f{s, t, map};
    if (valid_morphism(f)) out.push_back(std::move(f));
    return;
  }
  int e = order[k];
  for (int im = 0; im < t.n_edges(); ++im) {
    if (e != s.root()) {
      int p = s.parent(e);
      int pim = map[p];
      // incremental pruning: inside the vertex on p
      if (!t.weakly_above(im, pim)) continue;
      bool bad = false;
      for (int sib : s.inputs(p)) {
        if (sib == e || map[sib] < 0) continue;
        if (map[sib] == im || t.weakly_above(map[sib], im) || t.weakly_above(im, map[sib])) {
          bad = true;
          break;
        }
      }
      if (bad) continue;
    }
    map[e] = im;
    hom_rec(s, t, order, k + 1, map, out);
    map[e] = -1;
  }
}

}  // namespace

std::vector<OmegaMor> hom(const Tree& s, const Tree& t) {
  std::vector<OmegaMor> out;
  std::vector<int> map(s.n_edges(), -1);
  hom_rec(s, t, bfs_order(s), 0, map, out);
  return out;
}

std::vector<OmegaMor> hom_oracle(const Tree& s, const Tree& t) {
  std::vector<OmegaMor> out;
  int n = s.n_edges(), m = t.n_edges();
  std::vector<int> map(n, 0);
  for (;;) {
    OmegaMor f{s, t, map};
    if (valid_morphism(f)) out.push_back(f);
    int i = n - 1;
    while (i >= 0 && map[i] == m - 1) map[i--] = 0;
    if (i < 0) break;
    ++map[i];
  }
  return out;
}

std::vector<OmegaMor> automorphisms(const Tree& t) {
  std::vector<OmegaMor> out;
  for (auto& m : automorphism_maps(t)) out.push_back({t, t, m});
  return out;
}

OmegaMor face_mor(const Tree& t, const TreeMove& m) {
  std::vector<int> map(m.tree.n_edges());
  for (int e = 0; e < m.tree.n_edges(); ++e) map[e] = t.must_index(m.tree.name(e));
  OmegaMor f{m.tree, t, map};
  if (!valid_morphism(f)) throw omega_error("face move does not induce a morphism");
  return f;
}

OmegaMor degen_mor(const Tree& t, const TreeMove& m) {
  std::vector<int> map(t.n_edges());
  for (int e = 0; e < t.n_edges(); ++e) map[e] = m.tree.must_index(m.old_to_new.at(t.name(e)));
  OmegaMor f{t, m.tree, map};
  if (!valid_morphism(f)) throw omega_error("degeneracy move does not induce a morphism");
  return f;
}

OmegaMor iso_mor(const Tree& s, const Tree& t) {
  auto m = isomorphism(s, t);
  if (!m) throw omega_error("trees are not isomorphic");
  return {s, t, *m};
}

OmegaMor iso_from_map(const Tree& s, const Tree& t, const std::vector<int>& m) {
  OmegaMor f{s, t, m};
  return f;
}

OmegaMor inverse_iso(const OmegaMor& f) {
  std::vector<int> inv(f.dst.n_edges(), -1);
  for (int i = 0; i < f.src.n_edges(); ++i) inv[f.map[i]] = i;
  for (int v : inv)
    if (v < 0) throw omega_error("morphism is not an isomorphism");
  return {f.dst, f.src, inv};
}

// --- factorization ---------------------------------------------------------

namespace {

std::string state_key(const Tree& t) {
  std::vector<std::string> parts;
  for (int e = 0; e < t.n_edges(); ++e) {
    std::string p = t.name(e) + "<";
    if (t.has_vertex(e)) {
      std::vector<std::string> ks;
      for (int c : t.inputs(e)) ks.push_back(t.name(c));
      std::sort(ks.begin(), ks.end());
      for (auto& k : ks) p += k + ",";
    } else {
      p += "leaf";
    }
    parts.push_back(p);
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "root=" + t.name(t.root()) + ";";
  for (auto& p : parts) out += p + ";";
  return out;
}

// peel cur down to the exact tree `want` by elementary faces; returns moves
// applied in order (first applied to cur). target = edge names of want.
bool peel(const Tree& cur, const Tree& want, const std::string& want_key,
          const std::set<std::string>& target, std::vector<TreeMove>& acc,
          std::set<std::string>& dead) {
  std::string key = state_key(cur);
  if (key == want_key) return true;
  if (dead.count(key)) return false;

  std::vector<TreeMove> moves;
  for (int e = 0; e < cur.n_edges(); ++e)
    if (cur.is_inner(e) && !target.count(cur.name(e))) moves.push_back(cur.inner_face(e));
  for (int v : cur.vertex_edges()) {
    std::vector<int> incident{v};
    for (int c : cur.inputs(v)) incident.push_back(c);
    int inner = 0;
    for (int x : incident)
      if (cur.is_inner(x)) ++inner;
    if (inner > 1) continue;
    if (inner == 1) {
      TreeMove m = cur.outer_face(v);
      bool ok = true;
      for (int x : incident)
        if (!m.old_to_new.count(cur.name(x)) && target.count(cur.name(x))) ok = false;
      if (ok) moves.push_back(std::move(m));
    } else if (target.size() == 1) {
      // corolla: keep the surviving target edge if it is incident
      for (int x : incident)
        if (target.count(cur.name(x))) moves.push_back(cur.outer_face(v, std::optional<int>(x)));
    }
  }
  for (auto& m : moves) {
    acc.push_back(m);
    if (peel(m.tree, want, want_key, target, acc, dead)) return true;
    acc.pop_back();
  }
  dead.insert(key);
  return false;
}

}  // namespace

Factorization factorize(const OmegaMor& f0) {
  if (!valid_morphism(f0)) throw omega_error("factorize: not a morphism");
  Factorization out;
  // collapse unary vertices mapped to identities
  OmegaMor cur = f0;
  for (;;) {
    int found = -1;
    for (int v : cur.src.vertex_edges())
      if (cur.src.valence(v) == 1 && cur.map[v] == cur.map[cur.src.inputs(v)[0]]) {
        found = v;
        break;
      }
    if (found < 0) break;
    TreeMove m = cur.src.degeneracy(found);
    OmegaMor d = degen_mor(cur.src, m);
    std::vector<int> induced(m.tree.n_edges(), -1);
    for (int e = 0; e < cur.src.n_edges(); ++e) induced[d.map[e]] = cur.map[e];
    out.degeneracies.push_back(d);
    cur = OmegaMor{m.tree, cur.dst, induced};
  }
  // required image tree: edges are the image of cur, structure transported
  std::set<std::string> target;
  for (int e = 0; e < cur.src.n_edges(); ++e) target.insert(cur.dst.name(cur.map[e]));
  std::map<std::string, std::vector<std::string>> want_verts;
  for (int v : cur.src.vertex_edges()) {
    std::vector<std::string> ins;
    for (int c : cur.src.inputs(v)) ins.push_back(cur.dst.name(cur.map[c]));
    want_verts[cur.dst.name(cur.map[v])] = std::move(ins);
  }
  Tree want = Tree::from_parts(cur.dst.name(cur.map[cur.src.root()]), want_verts);
  std::vector<TreeMove> moves;
  std::set<std::string> dead;
  if (!peel(cur.dst, want, state_key(want), target, moves, dead))
    throw omega_error("factorize: could not peel target image");
  // moves[i] applies to the tree after moves[0..i-1]; emitted root-outward:
  // faces[0]: chain[k] -> chain[k-1], ..., faces.back(): chain[1] -> chain[0] = dst
  std::vector<Tree> chain{cur.dst};
  for (auto& m : moves) chain.push_back(m.tree);
  for (std::size_t i = moves.size(); i-- > 0;) out.faces.push_back(face_mor(chain[i], moves[i]));
  const Tree& image_tree = chain.back();
  std::vector<int> iso_map(cur.src.n_edges());
  for (int e = 0; e < cur.src.n_edges(); ++e)
    iso_map[e] = image_tree.must_index(cur.dst.name(cur.map[e]));
  out.iso = OmegaMor{cur.src, image_tree, iso_map};
  if (!valid_morphism(out.iso)) throw omega_error("factorize: middle map is not a morphism");
  inverse_iso(out.iso);  // throws unless bijective
  return out;
}

OmegaMor recompose(const Factorization& fac) {
  OmegaMor acc = fac.degeneracies.empty() ? identity(fac.iso.src) : fac.degeneracies.front();
  for (std::size_t i = 1; i < fac.degeneracies.size(); ++i)
    acc = compose(fac.degeneracies[i], acc);
  acc = compose(fac.iso, acc);
  for (const auto& f : fac.faces) acc = compose(f, acc);
  return acc;
}

// --- cut helpers ------------------------------------------------------------

CutSplit split_cut(const Tree& t, const std::vector<int>& inputs, int output) {
  if (!op_exists(t, inputs, output)) throw omega_error("split_cut: not an operation");
  CutSplit cs;
  if (!t.has_vertex(output)) {
    // unit: inputs == {output}
    cs.parts = {};
    cs.perm = {};
    if (!(inputs.size() == 1 && inputs[0] == output))
      throw omega_error("split_cut: leaf output with non-unit cut");
    return cs;
  }
  if (inputs.size() == 1 && inputs[0] == output) return cs;  // unit at vertex edge
  std::vector<int> concat_pos;
  for (int c : t.inputs(output)) {
    std::vector<int> part;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (t.weakly_above(inputs[i], c)) {
        part.push_back(inputs[i]);
        concat_pos.push_back(static_cast<int>(i));
      }
    cs.parts.push_back(std::move(part));
  }
  cs.perm = concat_pos;
  return cs;
}

std::vector<int> cut_region(const Tree& t, const std::vector<int>& inputs, int output) {
  std::vector<int> out;
  std::set<int> in(inputs.begin(), inputs.end());
  if (in.count(output)) return out;  // unit
  for (int z = 0; z < t.n_edges(); ++z) {
    if (z == output || in.count(z) || !t.is_inner(z)) continue;
    if (!t.weakly_above(z, output)) continue;
    bool above_input = false;
    for (int a : inputs)
      if (t.strictly_above(z, a)) {
        above_input = true;
        break;
      }
    if (!above_input) out.push_back(z);
  }
  return out;
}

}  // namespace dendro
