#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace dendro {

using Perm = std::vector<int>;

inline Perm perm_id(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_comp(const Perm& a, const Perm& b) {  // (a o b)(i) = a[b[i]]
  Perm p(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) p[i] = a[b[i]];
  return p;
}

inline Perm perm_inv(const Perm& a) {
  Perm p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[a[i]] = static_cast<int>(i);
  return p;
}

inline bool is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int>(i)) return false;
  return true;
}

inline Perm adjacent_transposition(int n, int i) {
  Perm p = perm_id(n);
  std::swap(p[i], p[i + 1]);
  return p;
}

// sigma = t1 o t2 o ... o tk as adjacent transposition indices
inline std::vector<int> adjacent_factorization(const Perm& sigma) {
  std::vector<int> rec;
  Perm a = sigma;
  int n = static_cast<int>(a.size());
  for (;;) {
    bool swapped = false;
    for (int j = 0; j + 1 < n; ++j)
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        rec.push_back(j);
        swapped = true;
      }
    if (!swapped) break;
  }
  // a o s_{rec0} o ... = id  =>  sigma = s_{rec_last} o ... o s_{rec0} read right-to-left;
  // we return factors in application-friendly order t1..tk with sigma = t1 o ... o tk
  std::vector<int> out(rec.rbegin(), rec.rend());
  return out;
}

// the interchange permutation: sigma_{n,m}(k*n + j) = j*m + k, 0<=k<m, 0<=j<n
inline Perm sigma_nm(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("sigma_nm needs n,m >= 1");
  Perm p(n * m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < n; ++j) p[k * n + j] = j * m + k;
  return p;
}

// permutation of the composite when composing twisted elements:
// (sigma * a) composed at slot i with (tau * b) equals
// elem_compose_perm(sigma, i, tau) * (a o_{sigma[i]} b)
inline Perm elem_compose_perm(const Perm& sigma, int i, const Perm& tau) {
  int n = static_cast<int>(sigma.size());
  int m = static_cast<int>(tau.size());
  int p = sigma[i];
  auto shift = [&](int q) { return q < p ? q : q + m - 1; };
  Perm out(n + m - 1);
  for (int j = 0; j < i; ++j) out[j] = shift(sigma[j]);
  for (int j = 0; j < m; ++j) out[i + j] = p + tau[j];
  for (int j = i + m; j < n + m - 1; ++j) out[j] = shift(sigma[j - m + 1]);
  return out;
}

// block sum aligned to consecutive blocks of the given sizes
inline Perm block_sum(const std::vector<Perm>& parts) {
  Perm out;
  int off = 0;
  for (const auto& q : parts) {
    for (int v : q) out.push_back(off + v);
    off += static_cast<int>(q.size());
  }
  return out;
}

std::vector<Perm> all_perms(int n);

}  // namespace dendro
