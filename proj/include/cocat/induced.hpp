#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cocat/cocategory.hpp"

namespace cocat {

/// Label for a vector given in the basis `parent`: the parent label for a
/// unit vector, otherwise a signed linear combination such as "x - 2*y".
inline std::string combination_label(const HomSpace& parent, const Matrix& basis, std::size_t col) {
  std::string s;
  std::size_t terms = 0;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    const Scalar& c = basis(i, col);
    if (c.is_zero()) continue;
    std::string coeff = c.to_string();
    bool negative = c.field().is_rational() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (terms == 0) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (coeff != "1") s += coeff + "*";
    s += parent.labels[i];
    ++terms;
  }
  return terms == 0 ? "0" : s;
}

/// Hom space spanned by the columns of `basis` inside `parent`. Columns of
/// a graded parent must be homogeneous.
inline HomSpace subspace_hom(const HomSpace& parent, const Matrix& basis) {
  HomSpace h;
  if (parent.degrees) h.degrees = std::vector<int>{};
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    h.labels.push_back(combination_label(parent, basis, j));
    if (parent.degrees) {
      std::optional<int> deg;
      for (std::size_t i = 0; i < basis.rows(); ++i) {
        if (basis(i, j).is_zero()) continue;
        int d = (*parent.degrees)[i];
        if (deg && *deg != d) throw Error(ErrorKind::InternalInvariantViolation, "inhomogeneous basis vector");
        deg = d;
      }
      h.degrees->push_back(deg.value_or(0));
    }
  }
  return h;
}

/// Transports the structure of `parent` to subspaces: objects `objs` of
/// the parent, inclusions incl(x, y) and retractions ret(x, y) indexed
/// row-major by sub-object pairs. Δ_sub = (ret ⊗ ret) Δ incl and
/// d_sub = ret d incl.
inline Cocategory induced_cocategory(const Cocategory& parent, const std::vector<std::size_t>& objs,
                                     const std::vector<Matrix>& incl, const std::vector<Matrix>& ret) {
  const std::size_t n = objs.size();
  std::vector<std::string> names;
  for (auto o : objs) names.push_back(parent.obj(o));
  std::vector<HomSpace> homs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) homs.push_back(subspace_hom(parent.quiver().hom(objs[x], objs[y]), incl[x * n + y]));
  }
  Quiver q(parent.field(), names, std::move(homs));
  std::vector<Matrix> delta;
  delta.reserve(n * n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        Matrix m = parent.delta(objs[x], objs[y], objs[z]) * incl[x * n + z];
        std::size_t dims[2] = {parent.dim(objs[x], objs[y]), parent.dim(objs[y], objs[z])};
        m = apply_factor(m, dims, 0, ret[x * n + y]);
        dims[0] = q.dim(x, y);
        delta.push_back(apply_factor(m, dims, 1, ret[y * n + z]));
      }
    }
  }
  std::vector<Matrix> differential;
  if (parent.has_differential()) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        differential.push_back(ret[x * n + y] * parent.differential(objs[x], objs[y]) * incl[x * n + y]);
      }
    }
  }
  return Cocategory(std::move(q), parent.flavor(), std::move(delta), std::move(differential));
}

}  // namespace cocat
