#include <gtest/gtest.h>

#include "cocat/subcocat.hpp"
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

/// A retraction different from the default one whenever ι is not square:
/// π + u wᵀ with wᵀ ι = 0.
Matrix perturbed_retraction(const Matrix& inj) {
  Matrix pi = retraction_for_injection(inj);
  Matrix left = kernel(inj.transpose()).matrix;  // columns w with wᵀ ι = 0
  if (left.cols() == 0 || pi.rows() == 0) return pi;
  Matrix u(inj.field(), pi.rows(), 1);
  for (std::size_t i = 0; i < u.rows(); ++i) u(i, 0) = Scalar(inj.field(), static_cast<long>(i) + 2);
  Matrix w(inj.field(), 1, left.rows());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t k = 0; k < left.cols(); ++k) w(0, i) += Scalar(inj.field(), static_cast<long>(k) + 1) * left(i, k);
  }
  return pi + u * w;
}

std::vector<std::vector<std::size_t>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(NMap, EmptyWhenSIsEverything) {
  auto c = share(tensor_cocategory(path_quiver(), 2));
  IteratedDelta delta(*c);
  std::vector<bool> in_s(3, true);
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(build_n_map(delta, nilpotency_index(*c), in_s, x, y).matrix.rows(), 0u);
  }
}

TEST(NMap, PathThroughExcludedObject) {
  auto c = share(tensor_cocategory(path_quiver(), 2));
  IteratedDelta delta(*c);
  std::vector<bool> in_s{true, false, true};
  StackedMap n = build_n_map(delta, nilpotency_index(*c), in_s, 0, 2);
  EXPECT_EQ(n.matrix, M({{1}}));
  EXPECT_EQ(n.profile, (std::vector<std::vector<std::size_t>>{{1}}));
}

TEST(Subcocategory, AllObjectsGivesIdentity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = gen_instance(config(seed, Flavor::Graded)).cocat;
    std::vector<std::size_t> all(c->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    SubcocatResult r = subcocategory(c, all);
    expect_same_structure(*r.sub, *c);
    for (std::size_t x = 0; x < c->size(); ++x) {
      for (std::size_t y = 0; y < c->size(); ++y) {
        EXPECT_EQ(r.inclusion.component(x, y), Matrix::identity(c->field(), c->dim(x, y)));
      }
    }
  }
}

TEST(Subcocategory, OneObjectIsIdentity) {
  auto c = loop_tensor(3);
  SubcocatResult r = subcocategory(c, std::vector<std::size_t>{0});
  EXPECT_EQ(*r.sub, *c);
}

TEST(Subcocategory, PathWithoutMiddleIsZero) {
  auto c = share(tensor_cocategory(path_quiver(), 2));
  SubcocatResult r = subcocategory(c, std::vector<std::string>{"U", "W"});
  EXPECT_EQ(r.sub->size(), 2u);
  EXPECT_EQ(r.sub->quiver().objects(), (std::vector<std::string>{"U", "W"}));
  EXPECT_EQ(r.sub->quiver().total_dim(), 0u);
  EXPECT_EQ(r.n_map_profile[0 * 2 + 1], (std::vector<std::vector<std::size_t>>{{1}}));
  EXPECT_EQ(r.certificate.failures(), 0u);
}

TEST(Subcocategory, LoopWithExit) {
  auto c = share(tensor_cocategory(loop_and_exit_quiver(), 2));
  SubcocatResult r = subcocategory(c, std::vector<std::string>{"U"});
  ASSERT_EQ(r.sub->size(), 1u);
  EXPECT_EQ(r.sub->quiver().hom(0, 0).labels, (std::vector<std::string>{"a", "a⊗a"}));
  Cocategory expected = tensor_cocategory(loop_quiver("a"), 2);
  expect_same_structure(*r.sub, expected);
}

TEST(Subcocategory, EmptySubset) {
  auto c = loop_tensor(2);
  SubcocatResult r = subcocategory(c, std::vector<std::size_t>{});
  EXPECT_EQ(r.sub->size(), 0u);
  EXPECT_TRUE(validate_cocategory(*r.sub).ok());
}

TEST(Subcocategory, Errors) {
  auto c = loop_tensor(2);
  EXPECT_EQ(error_of([&] { subcocategory(c, std::vector<std::size_t>{3}); }), ErrorKind::SNotSubset);
  EXPECT_EQ(error_of([&] { subcocategory(c, std::vector<std::string>{"Q"}); }), ErrorKind::SNotSubset);
}

TEST(Subcocategory, PropertiesOverCorpus) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (Flavor fl : {Flavor::Plain, Flavor::Graded, Flavor::DG}) {
      auto c = gen_instance(config(seed, fl)).cocat;
      for (const auto& s : nonempty_subsets(c->size())) {
        SubcocatResult r = subcocategory(c, s);
        EXPECT_EQ(r.certificate.failures(), 0u);
        const std::size_t m = s.size();
        std::vector<bool> in_s(c->size(), false);
        for (auto o : s) in_s[o] = true;
        IteratedDelta delta(*c);
        const std::size_t nil = nilpotency_index(*c);
        for (std::size_t x = 0; x < m; ++x) {
          for (std::size_t y = 0; y < m; ++y) {
            const Matrix& i = r.inclusion.component(x, y);
            // kernel law
            Matrix n = build_n_map(delta, nil, in_s, s[x], s[y]).matrix;
            EXPECT_TRUE((n * i).is_zero());
            EXPECT_EQ(r.retraction(x, y) * i, Matrix::identity(c->field(), i.cols()));
            // dg: ι π d ι = d ι
            if (c->has_differential()) {
              Matrix di = c->differential(s[x], s[y]) * i;
              EXPECT_EQ(i * r.retraction(x, y) * di, di);
            }
            // Δ ι vanishes through objects outside S
            for (std::size_t z = 0; z < c->size(); ++z) {
              if (!in_s[z]) EXPECT_TRUE((c->delta(s[x], z, s[y]) * i).is_zero());
            }
          }
        }
        EXPECT_TRUE(validate_cocategory(*r.sub).ok());
        EXPECT_TRUE(check_hom(r.inclusion).ok());
        for (std::size_t n = 2; n <= 3; ++n) EXPECT_TRUE(check_iterated_compatibility(r.inclusion, n).ok());
        EXPECT_LE(nilpotency_index(*r.sub), nilpotency_index(*c));
      }
    }
  }
}

TEST(Subcocategory, SplittingIndependence) {
  std::size_t changed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = gen_instance(config(seed)).cocat;
    for (const auto& s : nonempty_subsets(c->size())) {
      SubcocatResult a = subcocategory(c, s);
      SubcocatResult b = subcocategory(c, s, perturbed_retraction);
      for (std::size_t k = 0; k < a.retractions.size(); ++k) changed += a.retractions[k] == b.retractions[k] ? 0 : 1;
      EXPECT_EQ(a.sub->delta_components(), b.sub->delta_components());
    }
  }
  EXPECT_GT(changed, 0u);
}

TEST(Factor, InclusionFactorsAsIdentity) {
  auto c = share(tensor_cocategory(path_quiver(), 2));
  SubcocatResult r = subcocategory(c, std::vector<std::string>{"U", "V"});
  CocatHom bar = factor_through_subcocat(r.inclusion, r);
  EXPECT_FALSE(morphism_difference(bar, identity_hom(r.sub)).has_value());
}

TEST(Factor, GeneratorIntoLoopWithExit) {
  auto c = share(tensor_cocategory(loop_and_exit_quiver(), 2));
  SubcocatResult r = subcocategory(c, std::vector<std::string>{"U"});
  auto b = share(tensor_cocategory(loop_quiver("a"), 1));
  CocatHom h{b, c, QuiverMorphism{{0}, {M({{1}, {0}})}}};
  ASSERT_TRUE(check_hom(h).ok());
  CocatHom bar = factor_through_subcocat(h, r);
  EXPECT_EQ(bar.component(0, 0), M({{1}, {0}}));
  EXPECT_FALSE(morphism_difference(compose(r.inclusion, bar), h).has_value());
}

TEST(Factor, ImageNotInS) {
  auto c = share(tensor_cocategory(loop_and_exit_quiver(), 2));
  SubcocatResult r = subcocategory(c, std::vector<std::string>{"U"});
  auto b = share(Cocategory(Quiver(Q(), {"B"}, {HomSpace{}}), Flavor::Plain, {Matrix(Q(), 0, 0)}));
  CocatHom h{b, c, QuiverMorphism{{1}, {Matrix(Q(), 0, 0)}}};
  try {
    factor_through_subcocat(h, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ImageNotInS);
    EXPECT_EQ(e.witness(), "B");
  }
}

TEST(Factor, RandomHomsWithImageInS) {
  std::size_t factored = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Flavor fl : {Flavor::Plain, Flavor::DG}) {
      auto c = gen_instance(config(seed, fl)).cocat;
      Rng rng(seed);
      CocatHom h = random_primitive_hom(rng, c, 2);
      std::vector<std::size_t> s;
      for (std::size_t x = 0; x < h.source->size(); ++x) s.push_back(h.object(x));
      SubcocatResult r = subcocategory(c, s);
      CocatHom bar = factor_through_subcocat(h, r);
      EXPECT_FALSE(morphism_difference(compose(r.inclusion, bar), h).has_value());
      EXPECT_TRUE(check_hom(bar).ok());
      // maps already landing in C_S come back unchanged
      CocatHom k = random_primitive_hom(rng, r.sub, 2);
      CocatHom back = factor_through_subcocat(compose(r.inclusion, k), r);
      EXPECT_FALSE(morphism_difference(back, k).has_value());
      ++factored;
    }
  }
  EXPECT_EQ(factored, 60u);
}
