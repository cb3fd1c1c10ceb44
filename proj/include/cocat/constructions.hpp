#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cocat/cocategory.hpp"
#include "cocat/induced.hpp"

namespace cocat {

/// A basis arrow of a quiver: (source, target, index in A(source, target)).
struct Arrow {
  std::size_t source;
  std::size_t target;
  std::size_t index;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

using Word = std::vector<Arrow>;

/// The truncated tensor cocategory T^[1,N]A together with its word basis.
struct TensorCocategory {
  Quiver generators;
  std::size_t length = 0;
  Cocategory cocategory;
  std::vector<std::vector<Word>> words;  // per (X, Y), row-major
  std::map<Word, std::size_t> position;  // index of a word inside its hom space

  const std::vector<Word>& basis(std::size_t x, std::size_t y) const { return words[x * generators.size() + y]; }
};

namespace detail {

inline std::string word_label(const Quiver& a, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "⊗";
    s += a.hom(w[i].source, w[i].target).labels[w[i].index];
  }
  return s;
}

}  // namespace detail

/// Builds ⊕_{n=1..N} T^n A with the cut comultiplication
///   Δ(a1 ⊗ ... ⊗ an) = Σ_{i=1}^{n-1} (a1 ⊗ .. ⊗ ai) ⊗ (a(i+1) ⊗ .. ⊗ an).
/// Basis: composable words of length 1..N ordered by (length, arrows
/// lexicographically). With `differential` (one matrix per pair of A) the
/// result is dg, with d extended to words by the Koszul-signed Leibniz rule.
inline TensorCocategory build_tensor_cocategory(const Quiver& a, std::size_t length,
                                                const std::optional<std::vector<Matrix>>& differential = std::nullopt) {
  if (length < 1) throw Error(ErrorKind::ShapeMismatch, "tensor length must be at least 1");
  const std::size_t n = a.size();
  const Field field = a.field();
  if (differential && !a.graded()) throw Error(ErrorKind::ShapeMismatch, "a dg quiver needs degrees");
  if (differential) {
    if (differential->size() != n * n) throw Error(ErrorKind::ShapeMismatch, "expected one differential per pair");
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Matrix& d = (*differential)[x * n + y];
        if (d.rows() != a.dim(x, y) || d.cols() != a.dim(x, y)) {
          throw Error(ErrorKind::ShapeMismatch, "generator differential has shape " + d.shape());
        }
      }
    }
  }
  const Flavor flavor = differential ? Flavor::DG : (a.graded() ? Flavor::Graded : Flavor::Plain);

  TensorCocategory t;
  t.generators = a;
  t.length = length;
  t.words.assign(n * n, {});

  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Word> frontier{Word{}};
    for (std::size_t len = 1; len <= length; ++len) {
      std::vector<Word> next;
      for (const Word& w : frontier) {
        std::size_t end = w.empty() ? x : w.back().target;
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t i = 0; i < a.dim(end, y); ++i) {
            Word v = w;
            v.push_back({end, y, i});
            next.push_back(std::move(v));
          }
        }
      }
      for (const Word& w : next) {
        auto& bucket = t.words[x * n + w.back().target];
        t.position[w] = bucket.size();
        bucket.push_back(w);
      }
      frontier = std::move(next);
    }
  }

  std::vector<HomSpace> homs(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      HomSpace& h = homs[x * n + y];
      if (a.graded()) h.degrees = std::vector<int>{};
      for (const Word& w : t.words[x * n + y]) {
        h.labels.push_back(detail::word_label(a, w));
        if (a.graded()) {
          int deg = 0;
          for (const Arrow& ar : w) deg += a.degree(ar.source, ar.target, ar.index);
          h.degrees->push_back(deg);
        }
      }
    }
  }
  Quiver tq(field, a.objects(), std::move(homs));

  auto dim = [&](std::size_t x, std::size_t y) { return t.words[x * n + y].size(); };
  std::vector<Matrix> delta;
  delta.reserve(n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Matrix m(field, dim(x, y) * dim(y, z), dim(x, z));
        const auto& basis = t.words[x * n + z];
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const Word& w = basis[col];
          for (std::size_t cut = 1; cut < w.size(); ++cut) {
            if (w[cut - 1].target != y) continue;
            Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
            Word right(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
            m(t.position.at(left) * dim(y, z) + t.position.at(right), col) += Scalar::one(field);
          }
        }
        delta.push_back(std::move(m));
      }
    }
  }

  std::vector<Matrix> dword;
  if (differential) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto& basis = t.words[x * n + y];
        Matrix m(field, basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const Word& w = basis[col];
          int prefix_degree = 0;
          for (std::size_t i = 0; i < w.size(); ++i) {
            const Arrow& ar = w[i];
            const Matrix& da = (*differential)[ar.source * n + ar.target];
            Scalar sign(field, prefix_degree % 2 == 0 ? 1 : -1);
            for (std::size_t k = 0; k < da.rows(); ++k) {
              if (da(k, ar.index).is_zero()) continue;
              Word v = w;
              v[i].index = k;
              m(t.position.at(v), col) += sign * da(k, ar.index);
            }
            prefix_degree += a.degree(ar.source, ar.target, ar.index);
          }
        }
        dword.push_back(std::move(m));
      }
    }
  }

  t.cocategory = Cocategory(std::move(tq), flavor, std::move(delta), std::move(dword));
  return t;
}

inline Cocategory tensor_cocategory(const Quiver& a, std::size_t length,
                                    const std::optional<std::vector<Matrix>>& differential = std::nullopt) {
  return build_tensor_cocategory(a, length, differential).cocategory;
}

/// A counital cocategory with a counit-splitting augmentation. counit(x, y)
/// is 1 x dim (zero off the diagonal); augmentation(x) is dim(x, x) x 1.
struct AugmentedCocategory {
  Quiver quiver;
  Flavor flavor = Flavor::Plain;
  std::vector<Matrix> delta;
  std::vector<Matrix> differential;
  std::vector<Matrix> counit;
  std::vector<Matrix> augmentation;

  std::size_t size() const { return quiver.size(); }
  const Matrix& delta_at(std::size_t x, std::size_t y, std::size_t z) const { return delta[(x * size() + y) * size() + z]; }
  const Matrix& counit_at(std::size_t x, std::size_t y) const { return counit[x * size() + y]; }

  friend bool operator==(const AugmentedCocategory&, const AugmentedCocategory&) = default;
};

/// T^{<=1}C = kOb C ⊕ C: a unit basis vector "1_X" is prepended to C(X, X),
/// Δ(1_X) = 1_X ⊗ 1_X and Δ(c) = c ⊗ 1 + Δc + 1 ⊗ c.
inline AugmentedCocategory augment(const Cocategory& c) {
  const std::size_t n = c.size();
  const Field field = c.field();
  const Quiver& q = c.quiver();
  auto off = [](std::size_t x, std::size_t y) -> std::size_t { return x == y ? 1 : 0; };

  std::vector<HomSpace> homs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      HomSpace h = q.hom(x, y);
      if (x == y) {
        h.labels.insert(h.labels.begin(), "1_" + q.object(x));
        if (h.degrees) h.degrees->insert(h.degrees->begin(), 0);
      }
      homs.push_back(std::move(h));
    }
  }
  AugmentedCocategory a;
  a.quiver = Quiver(field, q.objects(), std::move(homs));
  a.flavor = c.flavor();
  auto dim = [&](std::size_t x, std::size_t y) { return a.quiver.dim(x, y); };

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Matrix m(field, dim(x, y) * dim(y, z), dim(x, z));
        if (x == y && y == z) m(0, 0) = Scalar::one(field);
        const Matrix& d = c.delta(x, y, z);
        for (std::size_t j = 0; j < c.dim(x, z); ++j) {
          std::size_t col = off(x, z) + j;
          for (std::size_t r = 0; r < d.rows(); ++r) {
            if (d(r, j).is_zero()) continue;
            std::size_t left = r / c.dim(y, z);
            std::size_t right = r % c.dim(y, z);
            m((off(x, y) + left) * dim(y, z) + off(y, z) + right, col) += d(r, j);
          }
          if (y == z) m(col * dim(z, z), col) += Scalar::one(field);
          if (y == x) m(col, col) += Scalar::one(field);
        }
        a.delta.push_back(std::move(m));
      }
    }
  }
  if (c.has_differential()) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        Matrix d(field, dim(x, y), dim(x, y));
        const Matrix& inner = c.differential(x, y);
        for (std::size_t i = 0; i < inner.rows(); ++i) {
          for (std::size_t j = 0; j < inner.cols(); ++j) d(off(x, y) + i, off(x, y) + j) = inner(i, j);
        }
        a.differential.push_back(std::move(d));
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix e(field, 1, dim(x, y));
      if (x == y) e(0, 0) = Scalar::one(field);
      a.counit.push_back(std::move(e));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    Matrix u(field, dim(x, x), 1);
    u(0, 0) = Scalar::one(field);
    a.augmentation.push_back(std::move(u));
  }
  return a;
}

/// Coassociativity, both counit equations, ε∘η = id, Δη = η ⊗ η, gradings
/// and (dg) compatibility of ε, η and Δ with the differential.
inline ValidationReport validate_augmented(const AugmentedCocategory& a) {
  ValidationReport report;
  const Quiver& q = a.quiver;
  const std::size_t n = a.size();
  const Field field = q.field();
  auto dim = [&](std::size_t x, std::size_t y) { return q.dim(x, y); };
  if (a.delta.size() != n * n * n || a.counit.size() != n * n || a.augmentation.size() != n ||
      (a.flavor == Flavor::DG && a.differential.size() != n * n)) {
    throw Error(ErrorKind::ShapeMismatch, "augmented cocategory has missing components");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Matrix& e = a.counit_at(x, y);
      if (e.rows() != 1 || e.cols() != dim(x, y)) throw Error(ErrorKind::ShapeMismatch, "counit shape " + e.shape());
      for (std::size_t z = 0; z < n; ++z) {
        const Matrix& d = a.delta_at(x, y, z);
        if (d.rows() != dim(x, y) * dim(y, z) || d.cols() != dim(x, z)) {
          throw Error(ErrorKind::ShapeMismatch, "delta shape " + d.shape());
        }
      }
    }
    if (a.augmentation[x].rows() != dim(x, x) || a.augmentation[x].cols() != 1) {
      throw Error(ErrorKind::ShapeMismatch, "augmentation shape " + a.augmentation[x].shape());
    }
  }

  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          std::size_t lhs_dims[2] = {dim(w, x), dim(x, z)};
          std::size_t rhs_dims[2] = {dim(w, y), dim(y, z)};
          std::size_t path[4] = {w, x, y, z};
          detail::expect_equal(report, "coassociativity", detail::tuple_name(q, path),
                               apply_factor(a.delta_at(w, x, z), lhs_dims, 1, a.delta_at(x, y, z)),
                               apply_factor(a.delta_at(w, y, z), rhs_dims, 0, a.delta_at(w, x, y)));
        }
      }
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t pair[2] = {x, y};
      if (x != y && !a.counit_at(x, y).is_zero()) report.add("counit_off_diagonal", detail::tuple_name(q, pair), "nonzero");
      const Matrix& e = a.counit_at(x, y);
      for (std::size_t j = 0; j < e.cols(); ++j) {
        if (!e(0, j).is_zero() && q.degree(x, y, j) != 0) {
          report.add("counit_degree_zero", detail::tuple_name(q, pair), "entry " + std::to_string(j));
        }
      }
      // (ε ⊗ 1)Δ = id and (1 ⊗ ε)Δ = id on C(x, y)
      std::size_t ldims[2] = {dim(x, x), dim(x, y)};
      detail::expect_equal(report, "left_counit", detail::tuple_name(q, pair),
                           apply_factor(a.delta_at(x, x, y), ldims, 0, a.counit_at(x, x)),
                           Matrix::identity(field, dim(x, y)));
      std::size_t rdims[2] = {dim(x, y), dim(y, y)};
      detail::expect_equal(report, "right_counit", detail::tuple_name(q, pair),
                           apply_factor(a.delta_at(x, y, y), rdims, 1, a.counit_at(y, y)),
                           Matrix::identity(field, dim(x, y)));
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    std::size_t one[1] = {x};
    const Matrix& eta = a.augmentation[x];
    detail::expect_equal(report, "counit_augmentation", detail::tuple_name(q, one), a.counit_at(x, x) * eta,
                         Matrix::identity(field, 1));
    for (std::size_t y = 0; y < n; ++y) {
      Matrix expected = y == x ? kron(eta, eta) : Matrix(field, dim(x, y) * dim(y, x), 1);
      std::size_t triple[3] = {x, y, x};
      detail::expect_equal(report, "augmentation_grouplike", detail::tuple_name(q, triple), a.delta_at(x, y, x) * eta,
                           expected);
    }
    for (std::size_t i = 0; i < eta.rows(); ++i) {
      if (!eta(i, 0).is_zero() && q.degree(x, x, i) != 0) {
        report.add("augmentation_degree_zero", detail::tuple_name(q, one), "entry " + std::to_string(i));
      }
    }
  }

  if (a.flavor == Flavor::DG) {
    Cocategory shell(q, a.flavor, a.delta, a.differential);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t pair[2] = {x, y};
        const Matrix& d = a.differential[x * n + y];
        detail::expect_equal(report, "differential_squares_to_zero", detail::tuple_name(q, pair), d * d,
                             Matrix(field, d.rows(), d.cols()));
        if (!(a.counit_at(x, y) * d).is_zero()) report.add("counit_chain_map", detail::tuple_name(q, pair), "ε∘d != 0");
        for (std::size_t z = 0; z < n; ++z) {
          std::size_t path[3] = {x, y, z};
          const Matrix& dl = a.delta_at(x, y, z);
          detail::expect_equal(report, "delta_chain_map", detail::tuple_name(q, path), dl * a.differential[x * n + z],
                               tensor_differential_after(shell, path, dl));
        }
      }
      std::size_t one[1] = {x};
      if (!(a.differential[x * n + x] * a.augmentation[x]).is_zero()) {
        report.add("augmentation_chain_map", detail::tuple_name(q, one), "d∘η != 0");
      }
    }
  }
  return report;
}

/// The reduced cocategory Ker ε. Each hom space is the standard-form kernel
/// of the counit; the retraction used to corestrict Δ annihilates the
/// augmentation, so (π ⊗ π)Δ strips exactly the unit terms.
inline Cocategory reduce(const AugmentedCocategory& a) {
  ValidationReport report = validate_augmented(a);
  if (!report.ok()) throw Error(ErrorKind::NotCoaugmented, report.to_string(), report.violations.front().where);
  const std::size_t n = a.size();
  const Field field = a.quiver.field();
  std::vector<Matrix> incl;
  std::vector<Matrix> ret;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix k = kernel(a.counit_at(x, y)).matrix;
      Matrix r = retraction_for_injection(k);
      if (x == y) {
        const Matrix& eta = a.augmentation[x];
        r = r * (Matrix::identity(field, eta.rows()) - eta * a.counit_at(x, x));
      }
      incl.push_back(std::move(k));
      ret.push_back(std::move(r));
    }
  }
  std::vector<std::size_t> objs(n);
  for (std::size_t x = 0; x < n; ++x) objs[x] = x;
  Cocategory shell(a.quiver, a.flavor, a.delta, a.differential);
  Cocategory reduced = induced_cocategory(shell, objs, incl, ret);
  ValidationReport rr = validate_cocategory(reduced);
  if (!rr.ok()) throw Error(ErrorKind::NotConilpotent, "reduction is not a cocomplete cocategory:\n" + rr.to_string());
  return reduced;
}

}  // namespace cocat
