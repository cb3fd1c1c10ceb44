#pragma once

#include <cstddef>
#include <vector>

#include "cocat/cocategory.hpp"

// Brute-force reference for the equalizer kernel. Deliberately shares no
// code path with build_r_map: iterated comultiplications are right-nested,
// tensor factors are formed as explicit Kronecker products, nothing is
// pruned and kernels are intersected one map at a time.

namespace cocat::oracle {

/// Δ^(n)_{X0..Xn} = (1 ⊗ Δ^(n-1)_{X1..Xn}) Δ_{X0,X1,Xn}.
inline Matrix right_nested_delta(const Cocategory& c, const std::vector<std::size_t>& path) {
  const std::size_t n = path.size() - 1;
  if (n == 1) return Matrix::identity(c.field(), c.dim(path[0], path[1]));
  if (n == 2) return c.delta(path[0], path[1], path[2]);
  std::vector<std::size_t> rest(path.begin() + 1, path.end());
  Matrix inner = right_nested_delta(c, rest);
  return kron(Matrix::identity(c.field(), c.dim(path[0], path[1])), inner) * c.delta(path[0], path[1], path[n]);
}

/// (1_before ⊗ op ⊗ 1_after) m, decoding each row index digit by digit.
inline Matrix insert_factor(const Matrix& m, std::size_t before, const Matrix& op, std::size_t after) {
  Matrix out(m.field(), before * op.rows() * after, m.cols());
  for (std::size_t row = 0; row < m.rows(); ++row) {
    std::size_t t = row % after;
    std::size_t k = (row / after) % op.cols();
    std::size_t o = row / after / op.cols();
    for (std::size_t i = 0; i < op.rows(); ++i) {
      if (op(i, k).is_zero()) continue;
      std::size_t target = (o * op.rows() + i) * after + t;
      for (std::size_t col = 0; col < m.cols(); ++col) out(target, col) += op(i, k) * m(row, col);
    }
  }
  return out;
}

/// Basis (as columns in C(X, Y)) of the common kernel of all maps
/// (1^{⊗p} ⊗ (f - g) ⊗ 1^{⊗q}) Δ^(p+1+q) on C(X, Y). Enumeration stops at the
/// first n where every Δ^(n)_{X,..,Y} vanishes, since all higher ones
/// factor through it.
inline Matrix brute_force_equalizer(const CocatHom& f, const CocatHom& g, std::size_t x, std::size_t y) {
  const Cocategory& c = *f.source;
  const Field field = c.field();
  for (std::size_t o = 0; o < c.size(); ++o) {
    if (f.object(o) != g.object(o)) throw Error(ErrorKind::ObjectMapsDiffer, "f and g differ on " + c.obj(o), c.obj(o));
  }
  Matrix basis = Matrix::identity(field, c.dim(x, y));
  const std::size_t bound = 1 + c.quiver().total_dim();
  for (std::size_t n = 1;; ++n) {
    if (n > bound) throw Error(ErrorKind::NotConilpotent, "iterated comultiplication does not vanish");
    bool any_nonzero = false;
    std::vector<std::size_t> interior(n - 1, 0);
    bool more = true;
    while (more) {
      std::vector<std::size_t> path{x};
      path.insert(path.end(), interior.begin(), interior.end());
      path.push_back(y);
      Matrix dn = right_nested_delta(c, path);
      any_nonzero = any_nonzero || !dn.is_zero();
      for (std::size_t pos = 0; pos < n; ++pos) {
        std::size_t before = 1;
        std::size_t after = 1;
        for (std::size_t i = 0; i < pos; ++i) before *= c.dim(path[i], path[i + 1]);
        for (std::size_t i = pos + 1; i < n; ++i) after *= c.dim(path[i], path[i + 1]);
        Matrix diff = f.component(path[pos], path[pos + 1]) - g.component(path[pos], path[pos + 1]);
        Matrix restricted = insert_factor(dn * basis, before, diff, after);
        basis = basis * kernel(restricted).matrix;
      }
      more = false;
      for (std::size_t i = interior.size(); i-- > 0;) {
        if (++interior[i] < c.size()) {
          more = true;
          break;
        }
        interior[i] = 0;
      }
    }
    if (!any_nonzero) return basis;
  }
}

}  // namespace cocat::oracle
