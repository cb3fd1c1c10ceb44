#include <gtest/gtest.h>

#include "cocat/constructions.hpp"
#include "cocat/corpus.hpp"
#include "support.hpp"

using namespace cocat;
using namespace cocat::testing;

namespace {

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalInvariantViolation;
}

/// Number of composable paths x -> y of length 1..n.
std::size_t count_paths(const Quiver& a, std::size_t x, std::size_t y, std::size_t n) {
  std::size_t total = 0;
  std::vector<std::size_t> reach(a.size(), 0);
  reach[x] = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::size_t> next(a.size(), 0);
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t v = 0; v < a.size(); ++v) next[v] += reach[u] * a.dim(u, v);
    }
    reach = next;
    total += reach[y];
  }
  return total;
}

}  // namespace

TEST(Tensor, LoopLengthTwo) {
  auto c = loop_tensor(2);
  EXPECT_EQ(c->quiver().hom(0, 0).labels, (std::vector<std::string>{"x", "x⊗x"}));
  // Δ(x) = 0, Δ(x⊗x) = x⊗x
  Matrix expected(Q(), 4, 2);
  expected(0, 1) = Scalar::one(Q());
  EXPECT_EQ(c->delta(0, 0, 0), expected);
  EXPECT_TRUE(validate_cocategory(*c).ok());
}

TEST(Tensor, LengthOneHasZeroComultiplication) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TensorCocategory t = build_tensor_cocategory(gen_instance(config(seed)).tensor.generators, 1);
    for (const auto& d : t.cocategory.delta_components()) EXPECT_TRUE(d.is_zero());
  }
}

TEST(Tensor, PathQuiver) {
  TensorCocategory t = build_tensor_cocategory(path_quiver(), 2);
  const Cocategory& c = t.cocategory;
  EXPECT_EQ(c.dim(0, 2), 1u);
  EXPECT_EQ(c.quiver().hom(0, 2).labels, std::vector<std::string>{"a⊗b"});
  EXPECT_EQ(c.delta(0, 1, 2), M({{1}}));
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      for (std::size_t z = 0; z < 3; ++z) {
        if (x == 0 && y == 1 && z == 2) continue;
        EXPECT_TRUE(c.delta(x, y, z).is_zero());
      }
    }
  }
}

TEST(Tensor, BasisOrderIsLengthThenLexicographic) {
  Quiver q(Q(), {"O"}, {HomSpace{{"x", "y"}, std::nullopt}});
  auto c = tensor_cocategory(q, 2);
  EXPECT_EQ(c.quiver().hom(0, 0).labels, (std::vector<std::string>{"x", "y", "x⊗x", "x⊗y", "y⊗x", "y⊗y"}));
}

TEST(Tensor, DimensionsCountPaths) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CorpusInstance inst = gen_instance(config(seed, Flavor::Graded));
    const Quiver& a = inst.tensor.generators;
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        EXPECT_EQ(inst.tensor.cocategory.dim(x, y), count_paths(a, x, y, inst.tensor.length));
      }
    }
    EXPECT_TRUE(validate_cocategory(inst.tensor.cocategory).ok());
  }
}

TEST(Tensor, DgDifferentialSquaresToZero) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CorpusInstance inst = gen_instance(config(seed, Flavor::DG));
    const Cocategory& c = inst.tensor.cocategory;
    ASSERT_TRUE(c.has_differential());
    for (const auto& d : c.differentials()) EXPECT_TRUE((d * d).is_zero());
    EXPECT_TRUE(validate_cocategory(c).ok()) << validate_cocategory(c).to_string();
  }
}

TEST(Tensor, Errors) {
  EXPECT_EQ(error_of([] { tensor_cocategory(loop_quiver(), 0); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(error_of([] { tensor_cocategory(loop_quiver(), 2, std::vector<Matrix>{M({{0}})}); }),
            ErrorKind::ShapeMismatch);
  EXPECT_EQ(error_of([] { tensor_cocategory(two_term_quiver(), 2, std::vector<Matrix>{M({{0}})}); }),
            ErrorKind::ShapeMismatch);
}

TEST(Augment, PrimitiveGenerator) {
  Cocategory c(loop_quiver(), Flavor::Plain, {Matrix(Q(), 1, 1)});
  AugmentedCocategory a = augment(c);
  EXPECT_EQ(a.quiver.hom(0, 0).labels, (std::vector<std::string>{"1_O", "x"}));
  // rows: 1⊗1, 1⊗x, x⊗1, x⊗x
  EXPECT_EQ(a.delta_at(0, 0, 0), M({{1, 0}, {0, 1}, {0, 1}, {0, 0}}));
  EXPECT_EQ(a.counit_at(0, 0), M({{1, 0}}));
  EXPECT_EQ(a.augmentation[0], M({{1}, {0}}));
  EXPECT_TRUE(validate_augmented(a).ok());
}

TEST(Augment, CounitAxiomsOnTensor) {
  AugmentedCocategory a = augment(*loop_tensor(2));
  EXPECT_TRUE(validate_augmented(a).ok());
  std::size_t dims[2] = {3, 3};
  EXPECT_EQ(apply_factor(a.delta_at(0, 0, 0), dims, 0, a.counit_at(0, 0)), Matrix::identity(Q(), 3));
  EXPECT_EQ(apply_factor(a.delta_at(0, 0, 0), dims, 1, a.counit_at(0, 0)), Matrix::identity(Q(), 3));
}

TEST(Reduce, RoundTripOnTensor) {
  auto c = loop_tensor(2);
  Cocategory r = reduce(augment(*c));
  EXPECT_EQ(r, *c);
}

TEST(Reduce, RoundTripOnCorpus) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (Flavor fl : {Flavor::Plain, Flavor::Graded, Flavor::DG}) {
      CorpusInstance inst = gen_instance(config(seed, fl, seed % 2 ? Field::prime(5) : Field::rationals()));
      Cocategory r = reduce(augment(*inst.cocat));
      expect_same_structure(r, *inst.cocat);
      EXPECT_EQ(r, *inst.cocat);
    }
  }
}

TEST(Reduce, PureUnits) {
  Quiver k = discrete_quiver({"X", "Y"}, Q());
  Cocategory zero(Quiver::zero(Q(), {"X", "Y"}, false), Flavor::Plain,
                  std::vector<Matrix>(8, Matrix(Q(), 0, 0)));
  AugmentedCocategory a = augment(zero);
  EXPECT_EQ(a.quiver, k);
  Cocategory r = reduce(a);
  EXPECT_EQ(r.quiver().total_dim(), 0u);
  EXPECT_TRUE(validate_cocategory(r).ok());
}

TEST(Reduce, RemovesUnitTermsInAnotherBasis) {
  // replace the unit coordinate of augment(T^[1,2]<x>) by 1 + x: the
  // augmentation is no longer a coordinate vector but reduce still
  // recovers Δ(x⊗x) = x⊗x
  AugmentedCocategory a = augment(*loop_tensor(2));
  Matrix p = M({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});  // new basis (1 + x, x, x⊗x) in old coordinates
  Matrix pinv = inverse(p);
  AugmentedCocategory b = a;
  std::size_t dims[2] = {3, 3};
  Matrix d = apply_factor(a.delta_at(0, 0, 0) * p, dims, 0, pinv);
  b.delta[0] = apply_factor(d, dims, 1, pinv);
  b.counit[0] = a.counit_at(0, 0) * p;
  b.augmentation[0] = pinv * a.augmentation[0];
  ASSERT_TRUE(validate_augmented(b).ok()) << validate_augmented(b).to_string();
  Cocategory r = reduce(b);
  EXPECT_TRUE(validate_cocategory(r).ok());
  EXPECT_EQ(r.dim(0, 0), 2u);
  EXPECT_EQ(nilpotency_index(r), 3u);
}

TEST(Reduce, NotCoaugmented) {
  AugmentedCocategory a = augment(*loop_tensor(2));
  a.counit[0] = M({{0, 1, 0}});
  EXPECT_EQ(error_of([&] { reduce(a); }), ErrorKind::NotCoaugmented);
}

TEST(Reduce, DgRoundTripKeepsDifferential) {
  auto c = share(tensor_cocategory(two_term_quiver(), 2, two_term_differential()));
  AugmentedCocategory a = augment(*c);
  EXPECT_TRUE(validate_augmented(a).ok());
  EXPECT_EQ(reduce(a), *c);
}
