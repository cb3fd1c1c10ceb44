#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cocat/constructions.hpp"
#include "cocat/corpus.hpp"

namespace cocat::testing {

inline Field Q() { return Field::rationals(); }

inline Matrix M(std::initializer_list<std::initializer_list<long>> rows, Field f = Field::rationals()) {
  return Matrix::from_rows(f, rows);
}

/// One object O with a single loop arrow `label`.
inline Quiver loop_quiver(const std::string& label = "x", Field f = Field::rationals()) {
  return Quiver(f, {"O"}, {HomSpace{{label}, std::nullopt}});
}

/// T^[1,n] of a single loop x: basis x, x⊗x, ...
inline CocategoryPtr loop_tensor(std::size_t n, const std::string& label = "x", Field f = Field::rationals()) {
  return share(tensor_cocategory(loop_quiver(label, f), n));
}

/// Path quiver U -a-> V -b-> W.
inline Quiver path_quiver(Field f = Field::rationals()) {
  std::vector<HomSpace> homs(9);
  homs[0 * 3 + 1].labels = {"a"};
  homs[1 * 3 + 2].labels = {"b"};
  return Quiver(f, {"U", "V", "W"}, homs);
}

/// Objects U, V with arrows a: U -> U and c: U -> V.
inline Quiver loop_and_exit_quiver(Field f = Field::rationals()) {
  std::vector<HomSpace> homs(4);
  homs[0].labels = {"a"};
  homs[1].labels = {"c"};
  return Quiver(f, {"U", "V"}, homs);
}

/// Endomorphism of C = T^[1,2]<x> given by its 2x2 matrix on {x, x⊗x}.
inline CocatHom loop_endo(const CocategoryPtr& c, const Matrix& m) {
  return CocatHom{c, c, QuiverMorphism{{0}, {m}}};
}

/// x -> x, x⊗x -> x⊗x + μx.
inline CocatHom mu_hom(const CocategoryPtr& c, long mu) { return loop_endo(c, M({{1, mu}, {0, 1}}, c->field())); }

/// x -> λx, x⊗x -> λ²x⊗x.
inline CocatHom lambda_hom(const CocategoryPtr& c, long lambda) {
  return loop_endo(c, M({{lambda, 0}, {0, lambda * lambda}}, c->field()));
}

/// One object, one basis element x with Δ(x) = x⊗x.
inline Cocategory grouplike() {
  Quiver q = loop_quiver();
  return Cocategory(q, Flavor::Plain, {M({{1}})});
}

/// Two-term complex u -> v (d u = v) on one object, |u| = 0, |v| = 1.
inline Quiver two_term_quiver() { return Quiver(Q(), {"O"}, {HomSpace{{"u", "v"}, std::vector<int>{0, 1}}}); }
inline std::vector<Matrix> two_term_differential() { return {M({{0, 0}, {1, 0}})}; }

inline GenConfig config(std::uint64_t seed, Flavor flavor = Flavor::Plain, Field field = Field::rationals()) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.flavor = flavor;
  cfg.field = field;
  return cfg;
}

inline void expect_same_structure(const Cocategory& a, const Cocategory& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      ASSERT_EQ(a.dim(x, y), b.dim(x, y));
      for (std::size_t z = 0; z < a.size(); ++z) EXPECT_EQ(a.delta(x, y, z), b.delta(x, y, z));
    }
  }
  EXPECT_EQ(a.differentials(), b.differentials());
}

inline std::string fixture(const std::string& name) { return std::string(COCAT_FIXTURES) + "/" + name; }

}  // namespace cocat::testing
