#pragma once

// Isotropic (rotation-invariant) tensor bases for ranks 2 to 5.
//
//   rank 2: d_ij
//   rank 3: e_ijk
//   rank 4: d_ij d_kl, d_ik d_jl, d_il d_jk
//   rank 5: e_ijk d_lm, e_ijl d_km, e_ijm d_kl, e_ikl d_jm, e_ikm d_jl, e_ilm d_jk
//
// The four remaining e.d products at rank 5 (those with i inside the
// Kronecker delta) are linear combinations of these six.

#include "chiraforce/exact_linalg.hpp"
#include "chiraforce/tensor.hpp"

#include <array>
#include <string>
#include <vector>

namespace chiraforce {

inline constexpr int min_average_rank = 2;
inline constexpr int max_average_rank = 5;

template <class T>
struct IsotropicBasis {
  int rank = 0;
  std::vector<CartesianTensor<T>> members;
  std::vector<std::string> labels;

  std::size_t size() const { return members.size(); }
};

namespace detail {

inline void require_average_rank(int rank, const char* what) {
  if (rank < min_average_rank || rank > max_average_rank) {
    throw rank_error(std::string(what) + ": unsupported rank " + std::to_string(rank) +
                     " (supported 2..5)");
  }
}

// Integer value of basis member `member` at index tuple idx.
inline int basis_value(int rank, std::size_t member, const std::array<int, 5>& idx) {
  auto d = [&](int a, int b) { return idx[a] == idx[b] ? 1 : 0; };
  auto e = [&](int a, int b, int c) { return levi_civita_sign(idx[a], idx[b], idx[c]); };
  switch (rank) {
    case 2:
      return d(0, 1);
    case 3:
      return e(0, 1, 2);
    case 4: {
      constexpr int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
      const auto& p = pairs[member];
      return d(p[0], p[1]) * d(p[2], p[3]);
    }
    case 5: {
      constexpr int split[6][5] = {{0, 1, 2, 3, 4}, {0, 1, 3, 2, 4}, {0, 1, 4, 2, 3},
                                   {0, 2, 3, 1, 4}, {0, 2, 4, 1, 3}, {0, 3, 4, 1, 2}};
      const auto& s = split[member];
      return e(s[0], s[1], s[2]) * d(s[3], s[4]);
    }
    default:
      return 0;
  }
}

inline std::size_t basis_size(int rank) {
  constexpr std::size_t sizes[] = {0, 0, 1, 1, 3, 6};
  return sizes[rank];
}

inline std::vector<std::string> basis_labels(int rank) {
  switch (rank) {
    case 2:
      return {"d(ij)"};
    case 3:
      return {"e(ijk)"};
    case 4:
      return {"d(ij)d(kl)", "d(ik)d(jl)", "d(il)d(jk)"};
    default:
      return {"e(ijk)d(lm)", "e(ijl)d(km)", "e(ijm)d(kl)",
              "e(ikl)d(jm)", "e(ikm)d(jl)", "e(ilm)d(jk)"};
  }
}

// Integer component table of the basis: values[member][flat index].
inline std::vector<std::vector<int>> basis_table(int rank) {
  std::vector<std::vector<int>> table(basis_size(rank), std::vector<int>(pow3(rank), 0));
  for (std::size_t flat = 0; flat < pow3(rank); ++flat) {
    std::array<int, 5> idx{};
    std::size_t rem = flat;
    for (int pos = rank - 1; pos >= 0; --pos) {
      idx[pos] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    for (std::size_t m = 0; m < table.size(); ++m) table[m][flat] = basis_value(rank, m, idx);
  }
  return table;
}

}  // namespace detail

template <class T = cplx>
IsotropicBasis<T> isotropic_basis(int rank) {
  detail::require_average_rank(rank, "isotropic_basis");
  IsotropicBasis<T> basis;
  basis.rank = rank;
  basis.labels = detail::basis_labels(rank);
  for (const auto& row : detail::basis_table(rank)) {
    std::vector<T> comps;
    comps.reserve(row.size());
    for (int v : row) comps.push_back(T(v));
    basis.members.emplace_back(rank, std::move(comps), "1");
  }
  return basis;
}

/// Gram matrix <B_a, B_b> of the rank's basis, exact.
inline RationalMatrix isotropic_gram(int rank) {
  detail::require_average_rank(rank, "isotropic_gram");
  const auto table = detail::basis_table(rank);
  const std::size_t n = table.size();
  RationalMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      long long s = 0;
      for (std::size_t f = 0; f < table[a].size(); ++f) s += table[a][f] * table[b][f];
      g(a, b) = s;
    }
  return g;
}

/// Exact inverse of the Gram matrix. Computed once per rank.
inline const RationalMatrix& isotropic_gram_inverse(int rank) {
  detail::require_average_rank(rank, "isotropic_gram_inverse");
  static const std::array<RationalMatrix, 4> cache = [] {
    std::array<RationalMatrix, 4> c;
    for (int r = min_average_rank; r <= max_average_rank; ++r)
      c[static_cast<std::size_t>(r - min_average_rank)] = exact_inverse(isotropic_gram(r));
    return c;
  }();
  return cache[static_cast<std::size_t>(rank - min_average_rank)];
}

}  // namespace chiraforce
