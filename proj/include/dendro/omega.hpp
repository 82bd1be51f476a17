#pragma once

#include "dendro/tree.hpp"

namespace dendro {

// Arrow of the tree category: an edge map whose per-vertex images are
// operations of the free operad on the target tree.
struct OmegaMor {
  Tree src;
  Tree dst;
  std::vector<int> map;  // src edge index -> dst edge index

  int operator()(int e) const { return map[e]; }
  bool operator==(const OmegaMor& o) const {
    return src == o.src && dst == o.dst && map == o.map;
  }
};

struct omega_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// closed-form operation existence in the free operad on t
bool op_exists(const Tree& t, const std::vector<int>& inputs, int output);
// independent oracle: expansion search from {output} to the input list
bool op_exists_bfs(const Tree& t, const std::vector<int>& inputs, int output);

bool valid_morphism(const OmegaMor& f);

OmegaMor identity(const Tree& t);
OmegaMor compose(const OmegaMor& g, const OmegaMor& f);  // g after f

// complete Hom set, deterministic order (backtracking with per-vertex pruning)
std::vector<OmegaMor> hom(const Tree& s, const Tree& t);
// brute-force oracle enumerating all |E_t|^|E_s| edge maps
std::vector<OmegaMor> hom_oracle(const Tree& s, const Tree& t);

std::vector<OmegaMor> automorphisms(const Tree& t);

// elementary morphisms from tree moves
OmegaMor face_mor(const Tree& t, const TreeMove& m);   // m.tree -> t
OmegaMor degen_mor(const Tree& t, const TreeMove& m);  // t -> m.tree
OmegaMor iso_mor(const Tree& s, const Tree& t);          // via isomorphism(); throws if none
OmegaMor iso_from_map(const Tree& s, const Tree& t, const std::vector<int>& m);
OmegaMor inverse_iso(const OmegaMor& f);

// f = faces ... faces[k-1] o iso o degeneracies[m-1] ... degeneracies[0];
// degeneracies[0] applies first, faces.back() lands in f.dst.
struct Factorization {
  std::vector<OmegaMor> degeneracies;
  OmegaMor iso;
  std::vector<OmegaMor> faces;
};

Factorization factorize(const OmegaMor& f);
OmegaMor recompose(const Factorization& fac);

// helpers shared with nerve evaluation and the W-construction
// partitions a valid cut by the children of output's vertex; perm maps
// positions of concat(parts) to positions in `inputs`
struct CutSplit {
  std::vector<std::vector<int>> parts;  // one per child, entries are input values
  std::vector<int> perm;                // concat(parts)[i] == inputs[perm[i]]
};
CutSplit split_cut(const Tree& t, const std::vector<int>& inputs, int output);

// inner edges strictly between a cut and its output
std::vector<int> cut_region(const Tree& t, const std::vector<int>& inputs, int output);

}  // namespace dendro
