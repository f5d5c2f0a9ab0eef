#include "support.hpp"

#include <gtest/gtest.h>

using namespace chiraforce;

namespace {

RationalMatrix rational_matrix(std::initializer_list<std::initializer_list<int>> rows, int denom) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = rational(v, denom);
    ++i;
  }
  return m;
}

}  // namespace

TEST(Tensor, LeviCivitaAndDeltaValues) {
  const Tensor e = levi_civita();
  const Tensor d = kronecker_delta();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(d(i, j), cplx(i == j ? 1.0 : 0.0));
      for (int k = 0; k < 3; ++k) EXPECT_EQ(e(i, j, k), cplx(oracle::eps(i, j, k)));
    }
  EXPECT_EQ(e(0, 1, 2), cplx(1));
  EXPECT_EQ(e(1, 0, 2), cplx(-1));
}

TEST(Tensor, RankLimitsAreEnforced) {
  EXPECT_THROW(Tensor(7), rank_error);
  EXPECT_THROW(Tensor(2, std::vector<cplx>(8)), rank_error);
  const Tensor r3(3), r4(4);
  EXPECT_NO_THROW(outer_product(r3, r3));
  EXPECT_THROW(outer_product(r3, r4), rank_error);
  EXPECT_THROW(full_contraction(r3, r4), rank_error);
}

TEST(Tensor, FullContractionDoesNotConjugate) {
  Rng rng(1);
  for (int r = 0; r <= 6; ++r) {
    const Tensor a = random_tensor(r, rng), b = random_tensor(r, rng);
    cplx expect = 0;
    for (std::size_t i = 0; i < a.size(); ++i) expect += a[i] * b[i];
    EXPECT_LT(std::abs(full_contraction(a, b) - expect), 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST(Tensor, OuterProductComponents) {
  Rng rng(2);
  const Tensor a = random_tensor(2, rng), b = random_tensor(3, rng);
  const Tensor ab = outer_product(a, b);
  ASSERT_EQ(ab.rank(), 5);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) EXPECT_EQ(ab[i * b.size() + j], a[i] * b[j]);
}

TEST(Tensor, ContractWithVectorsMatchesOuterProducts) {
  Rng rng(3);
  for (int r = 1; r <= 5; ++r) {
    const Tensor t = random_tensor(r, rng);
    std::vector<Vector3> vs;
    Tensor prod = Tensor::scalar(1.0);
    for (int m = 0; m < r; ++m) {
      const Tensor v = random_tensor(1, rng);
      vs.push_back({v[0], v[1], v[2]});
      prod = outer_product(prod, v);
    }
    const cplx expect = full_contraction(t, prod);
    EXPECT_LT(std::abs(contract_with_vectors(t, std::span<const Vector3>(vs)) - expect),
              1e-12 * std::abs(expect));
  }
}

TEST(Tensor, RotationMatchesExplicitSum) {
  Rng rng(4);
  oracle::EulerSampler haar(5);
  for (int r = 0; r <= 5; ++r) {
    for (int k = 0; k < 3; ++k) {
      const Tensor t = random_tensor(r, rng);
      const oracle::Mat3 rot = haar();
      const auto expect = oracle::brute_rotate(support::flat(t), r, rot);
      EXPECT_LT(support::rel_max_diff(support::flat(rotated(t, support::from_eigen(rot))), expect), 1e-13)
          << "rank " << r;
    }
  }
}

TEST(Tensor, RotationComposes) {
  Rng rng(6);
  const Tensor t = random_tensor(4, rng);
  const Matrix3 a = uniform_rotation(rng), b = uniform_rotation(rng);
  EXPECT_LT(support::rel_max_diff(support::flat(rotated(rotated(t, b), a)), support::flat(rotated(t, a * b))),
            1e-13);
}

TEST(Tensor, ExactRoundTripIsLossless) {
  Rng rng(7);
  const Tensor t = random_tensor(3, rng);
  EXPECT_EQ(to_double(to_exact(t)), t);
}

TEST(Tensor, ExactEpsilonDeltaIdentity) {
  const auto e = levi_civita<exact_complex>();
  const auto d = kronecker_delta<exact_complex>();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        for (int m = 0; m < 3; ++m) {
          exact_complex s;
          for (int i = 0; i < 3; ++i) s += e(i, j, k) * e(i, l, m);
          EXPECT_TRUE(s == d(j, l) * d(k, m) - d(j, m) * d(k, l));
        }
}

TEST(IsotropicBasis, MembersMatchIndexFormulas) {
  for (int r = 2; r <= 5; ++r) {
    const auto basis = isotropic_basis(r);
    const auto expect = oracle::isotropic_members(r);
    ASSERT_EQ(basis.members.size(), expect.size()) << "rank " << r;
    ASSERT_EQ(basis.labels.size(), expect.size());
    for (std::size_t a = 0; a < expect.size(); ++a)
      for (std::size_t i = 0; i < expect[a].size(); ++i)
        EXPECT_EQ(basis.members[a][i], cplx(expect[a][i]));
  }
  EXPECT_THROW(isotropic_basis(1), rank_error);
  EXPECT_THROW(isotropic_basis(6), rank_error);
}

TEST(IsotropicBasis, InvariantUnderRotation) {
  oracle::EulerSampler haar(8);
  for (int r = 2; r <= 5; ++r) {
    for (const auto& m : isotropic_basis(r).members) {
      for (int k = 0; k < 20; ++k) {
        const auto rot = oracle::brute_rotate(support::flat(m), r, haar());
        EXPECT_LT(support::rel_max_diff(rot, support::flat(m)), 1e-13);
      }
    }
  }
}

TEST(IsotropicBasis, GramMatricesAreFullRank) {
  const std::size_t sizes[] = {1, 1, 3, 6};
  for (int r = 2; r <= 5; ++r) {
    const auto g = isotropic_gram(r);
    EXPECT_EQ(exact_rank(g), sizes[r - 2]);
    EXPECT_TRUE(g * isotropic_gram_inverse(r) == RationalMatrix::identity(sizes[r - 2]));
  }
}

// Published rotational-averaging matrices for these bases, in this member order.
TEST(IsotropicBasis, InverseGramMatchesPublishedRank4Matrix) {
  EXPECT_TRUE(isotropic_gram_inverse(4) ==
              rational_matrix({{4, -1, -1}, {-1, 4, -1}, {-1, -1, 4}}, 30));
}

TEST(IsotropicBasis, InverseGramMatchesPublishedRank5Matrix) {
  EXPECT_TRUE(isotropic_gram_inverse(5) == rational_matrix({{3, -1, -1, 1, 1, 0},
                                                            {-1, 3, -1, -1, 0, 1},
                                                            {-1, -1, 3, 0, -1, -1},
                                                            {1, -1, 0, 3, -1, 1},
                                                            {1, 0, -1, -1, 3, -1},
                                                            {0, 1, -1, 1, -1, 3}},
                                                           30));
}

TEST(IsotropicBasis, LowRankInverses) {
  EXPECT_TRUE(isotropic_gram_inverse(2) == rational_matrix({{1}}, 3));
  EXPECT_TRUE(isotropic_gram_inverse(3) == rational_matrix({{1}}, 6));
}
