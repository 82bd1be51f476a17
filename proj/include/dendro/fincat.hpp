#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendro {

struct cat_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite category given by tables.
struct FinCat {
  struct Arrow {
    int src;
    int dst;
    std::string name;
  };

  int n_objects = 0;
  std::vector<std::string> object_names;
  std::vector<Arrow> arrows;
  std::vector<int> ident;                 // identity arrow per object
  std::vector<std::vector<int>> comp;     // comp[g][f] = g o f, or -1

  int compose(int g, int f) const {
    int r = comp[g][f];
    if (r < 0) throw cat_error("arrows not composable");
    return r;
  }
  std::vector<int> hom_arrows(int a, int b) const;
  bool is_iso_arrow(int f) const;
};

FinCat discrete_cat(int n);
FinCat codiscrete_cat(int n);            // exactly one arrow between any two objects
FinCat poset_chain(int n);               // 0 <= 1 <= ... <= n-1
std::vector<std::string> validate_cat(const FinCat& c);

struct Functor {
  std::vector<int> ob;
  std::vector<int> ar;
};

bool functor_ok(const FinCat& c, const FinCat& d, const Functor& f);
std::vector<Functor> functors(const FinCat& c, const FinCat& d);
bool cat_iso(const FinCat& c, const FinCat& d);

// category with chosen finite products
struct CartCat {
  FinCat cat;
  int terminal = -1;
  std::vector<std::vector<int>> prod;   // object product
  std::vector<std::vector<int>> proj1;  // arrow prod[a][b] -> a
  std::vector<std::vector<int>> proj2;  // arrow prod[a][b] -> b

  // unique arrow h: x -> prod[a][b] with p1 o h = f, p2 o h = g
  int pairing(int x, int a, int b, int f, int g) const;
  int bang(int x) const;  // unique arrow x -> terminal
  // iterated product of a list of objects (terminal for the empty list),
  // folded left, with projections onto each factor
  struct NProd {
    int object;
    std::vector<int> projections;
  };
  NProd nprod(const std::vector<int>& obs) const;
  // arrow nprod(xs).object -> nprod(ys).object induced by components
  // fs[i]: an arrow xs-product -> ys[i]
  int tuple_into(const NProd& target, int src_obj, const std::vector<int>& fs) const;
};

CartCat with_products(const FinCat& c);  // finds products by search; throws if missing

// Grothendieck construction of a contravariant Cat-valued diagram on s:
// value[i] is the category over object i, action[f] the functor table for
// arrow f (mapping value[dst f] -> value[src f]).
struct CatDiagram {
  std::vector<FinCat> value;
  std::vector<Functor> action;
};
FinCat grothendieck_cat(const FinCat& s, const CatDiagram& d);

}  // namespace dendro
