#pragma once

// Independent brute-force oracles. They share no code with the library's
// enumeration: characters are found by trying every assignment of L-th roots
// to every group element, bicharacters by trying every assignment of
// characters to every group element.

#include <functional>
#include <set>
#include <vector>

namespace oracle {

struct Tuple {
  std::vector<int> factors;
  int n = 1;
  int L = 1;

  explicit Tuple(std::vector<int> f) : factors(std::move(f)) {
    for (int d : factors) {
      n *= d;
      int a = L, b = d;
      while (b) {
        int t = a % b;
        a = b;
        b = t;
      }
      L = L / a * d;
    }
  }
  // element index -> coordinates (lexicographic, last coordinate fastest)
  std::vector<int> coords(int idx) const {
    std::vector<int> c(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      c[i] = idx % factors[i];
      idx /= factors[i];
    }
    return c;
  }
  int index(const std::vector<int>& c) const {
    int idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + c[i];
    return idx;
  }
  int mul(int a, int b) const {
    auto ca = coords(a), cb = coords(b);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % factors[i];
    return index(ca);
  }
};

// Every homomorphism G -> mu_L as a vector of exponents over the L-th root.
inline std::vector<std::vector<int>> characters(const Tuple& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(g.n, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == g.n) {
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          if (v[g.mul(a, b)] != (v[a] + v[b]) % g.L) return;
      out.push_back(v);
      return;
    }
    for (int e = 0; e < g.L; ++e) {
      v[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// Bicharacter tables t[a][b] (exponent over the L-th root).
inline std::set<std::vector<std::vector<int>>> bicharacters(const Tuple& g) {
  const auto chars = characters(g);
  std::set<std::vector<std::vector<int>>> out;
  std::vector<int> pick(g.n, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == g.n) {
      std::vector<std::vector<int>> t(g.n);
      for (int a = 0; a < g.n; ++a) t[a] = chars[pick[a]];
      // a -> chi_a must be a homomorphism into the character group
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          for (int c = 0; c < g.n; ++c)
            if (t[g.mul(a, b)][c] != (t[a][c] + t[b][c]) % g.L) return;
      out.insert(t);
      return;
    }
    for (std::size_t i = 0; i < chars.size(); ++i) {
      pick[k] = static_cast<int>(i);
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

inline bool skew(const Tuple& g, const std::vector<std::vector<int>>& t) {
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if ((t[a][b] + t[b][a]) % g.L != 0) return false;
  return true;
}

}  // namespace oracle
