#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cocat/error.hpp"
#include "cocat/matrix.hpp"
#include "cocat/quiver.hpp"

namespace cocat {

enum class Flavor { Plain, Graded, DG };

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Plain: return "plain";
    case Flavor::Graded: return "graded";
    case Flavor::DG: return "dg";
  }
  return "plain";
}

inline Flavor parse_flavor(const std::string& s) {
  if (s == "plain") return Flavor::Plain;
  if (s == "graded") return Flavor::Graded;
  if (s == "dg") return Flavor::DG;
  throw Error(ErrorKind::ParseError, "unknown flavor '" + s + "'");
}

/// A cocategory stored componentwise. delta(x, y, z) maps C(x, z) into
/// C(x, y) ⊗ C(y, z) (major-first rows); differential(x, y) is the degree +1
/// differential on C(x, y), present only for the DG flavor. Differentials
/// are cochain differentials.
class Cocategory {
 public:
  Cocategory() = default;

  Cocategory(Quiver quiver, Flavor flavor, std::vector<Matrix> delta, std::vector<Matrix> differential = {})
      : quiver_(std::move(quiver)), flavor_(flavor), delta_(std::move(delta)), differential_(std::move(differential)) {
    const std::size_t n = quiver_.size();
    if ((flavor_ != Flavor::Plain) != quiver_.graded() && n > 0) {
      throw Error(ErrorKind::ShapeMismatch, "degrees must be present exactly for graded and dg flavors");
    }
    if (delta_.size() != n * n * n) throw Error(ErrorKind::ShapeMismatch, "expected one delta component per triple");
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          const Matrix& m = this->delta(x, y, z);
          if (m.rows() != dim(x, y) * dim(y, z) || m.cols() != dim(x, z) || !(m.field() == field())) {
            throw Error(ErrorKind::ShapeMismatch, "delta component (" + obj(x) + "," + obj(y) + "," + obj(z) +
                                                      ") has shape " + m.shape());
          }
        }
      }
    }
    if (flavor_ == Flavor::DG) {
      if (differential_.size() != n * n) throw Error(ErrorKind::ShapeMismatch, "expected one differential per pair");
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          const Matrix& d = this->differential(x, y);
          if (d.rows() != dim(x, y) || d.cols() != dim(x, y) || !(d.field() == field())) {
            throw Error(ErrorKind::ShapeMismatch, "differential (" + obj(x) + "," + obj(y) + ") has shape " + d.shape());
          }
        }
      }
    } else if (!differential_.empty()) {
      throw Error(ErrorKind::ShapeMismatch, "differential given for a non-dg cocategory");
    }
  }

  const Quiver& quiver() const { return quiver_; }
  Field field() const { return quiver_.field(); }
  Flavor flavor() const { return flavor_; }
  std::size_t size() const { return quiver_.size(); }
  std::size_t dim(std::size_t x, std::size_t y) const { return quiver_.dim(x, y); }
  const std::string& obj(std::size_t x) const { return quiver_.object(x); }

  const Matrix& delta(std::size_t x, std::size_t y, std::size_t z) const { return delta_[(x * size() + y) * size() + z]; }
  const Matrix& differential(std::size_t x, std::size_t y) const { return differential_[x * size() + y]; }
  bool has_differential() const { return flavor_ == Flavor::DG; }

  const std::vector<Matrix>& delta_components() const { return delta_; }
  const std::vector<Matrix>& differentials() const { return differential_; }

  friend bool operator==(const Cocategory&, const Cocategory&) = default;

 private:
  Quiver quiver_;
  Flavor flavor_ = Flavor::Plain;
  std::vector<Matrix> delta_;
  std::vector<Matrix> differential_;
};

using CocategoryPtr = std::shared_ptr<const Cocategory>;

inline CocategoryPtr share(Cocategory c) { return std::make_shared<const Cocategory>(std::move(c)); }

/// A quiver morphism between two cocategories. Whether it is a cocategory
/// homomorphism is decided by check_hom.
struct CocatHom {
  CocategoryPtr source;
  CocategoryPtr target;
  QuiverMorphism morphism;

  std::size_t object(std::size_t x) const { return morphism.object_map[x]; }
  const Matrix& component(std::size_t x, std::size_t y) const { return morphism.component(x, y); }
};

inline CocatHom identity_hom(const CocategoryPtr& c) { return {c, c, identity_morphism(c->quiver())}; }

inline CocatHom compose(const CocatHom& g, const CocatHom& f) {
  if (f.target != g.source && !(*f.target == *g.source)) {
    throw Error(ErrorKind::SourceTargetMismatch, "composing morphisms whose target and source differ");
  }
  return {f.source, g.target, compose(g.morphism, f.morphism)};
}

struct Violation {
  std::string check;
  std::string where;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string check, std::string where, std::string detail) {
    violations.push_back({std::move(check), std::move(where), std::move(detail)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations) s += v.check + (v.where.empty() ? "" : ", " + v.where) + ": " + v.detail + "\n";
    return s;
  }
};

namespace detail {

inline std::string tuple_name(const Quiver& q, std::span<const std::size_t> objs) {
  std::string s = "(";
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (i) s += ",";
    s += q.object(objs[i]);
  }
  return s + ")";
}

inline std::string diff_detail(const Matrix& lhs, const Matrix& rhs) {
  auto d = first_difference(lhs, rhs);
  if (!d) return "";
  return "entry (" + std::to_string(d->first) + "," + std::to_string(d->second) + "): " +
         lhs(d->first, d->second).to_string() + " != " + rhs(d->first, d->second).to_string();
}

/// Compares and records a violation when the matrices differ.
inline bool expect_equal(ValidationReport& r, const std::string& check, const std::string& where, const Matrix& lhs,
                         const Matrix& rhs) {
  if (lhs == rhs) return true;
  r.add(check, where, diff_detail(lhs, rhs));
  return false;
}

inline Matrix sign_matrix(const Quiver& q, std::size_t x, std::size_t y) {
  Matrix s(q.field(), q.dim(x, y), q.dim(x, y));
  for (std::size_t i = 0; i < q.dim(x, y); ++i) {
    s(i, i) = Scalar(q.field(), q.degree(x, y, i) % 2 == 0 ? 1 : -1);
  }
  return s;
}

}  // namespace detail

/// Dimensions of the tensor factors along an object path.
inline std::vector<std::size_t> path_dims(const Quiver& q, std::span<const std::size_t> path) {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) dims.push_back(q.dim(path[i], path[i + 1]));
  return dims;
}

/// Total degree of a major-first multi-index along `path`.
inline int tensor_degree(const Quiver& q, std::span<const std::size_t> path, std::size_t row) {
  auto dims = path_dims(q, path);
  int deg = 0;
  for (std::size_t i = dims.size(); i-- > 0;) {
    deg += q.degree(path[i], path[i + 1], row % dims[i]);
    row /= dims[i];
  }
  return deg;
}

/// The differential of a tensor product of hom spaces applied after `m`,
/// with Koszul signs: d(a1 ⊗ ... ⊗ an) = Σ_i (-1)^{|a1|+...+|a_{i-1}|} a1 ⊗ .. ⊗ d ai ⊗ .. ⊗ an.
inline Matrix tensor_differential_after(const Cocategory& c, std::span<const std::size_t> path, const Matrix& m) {
  auto dims = path_dims(c.quiver(), path);
  Matrix out(c.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    Matrix t = apply_factor(m, dims, i, c.differential(path[i], path[i + 1]));
    for (std::size_t j = 0; j < i; ++j) t = apply_factor(t, dims, j, detail::sign_matrix(c.quiver(), path[j], path[j + 1]));
    out = out + t;
  }
  return out;
}

/// Cached components Δ^(n)_{X0..Xn} of the iterated comultiplication,
/// computed left-nested: Δ^(n)_{X0..Xn} = (Δ^(n-1)_{X0..X(n-1)} ⊗ 1) Δ_{X0,X(n-1),Xn}.
class IteratedDelta {
 public:
  explicit IteratedDelta(const Cocategory& c) : c_(&c) {}

  /// `path` holds n+1 objects for Δ^(n).
  const Matrix& operator()(std::span<const std::size_t> path) {
    if (path.size() < 2) throw Error(ErrorKind::ShapeMismatch, "iterated delta needs at least two objects");
    for (auto o : path) {
      if (o >= c_->size()) throw Error(ErrorKind::UnknownObject, "path object out of range");
    }
    std::vector<std::size_t> key(path.begin(), path.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const std::size_t n = path.size() - 1;
    Matrix result;
    if (n == 1) {
      result = Matrix::identity(c_->field(), c_->dim(path[0], path[1]));
    } else if (n == 2) {
      result = c_->delta(path[0], path[1], path[2]);
    } else {
      const Matrix& prefix = (*this)(path.first(n));
      const Matrix& split = c_->delta(path[0], path[n - 1], path[n]);
      std::size_t rows = 1;
      for (auto d : path_dims(c_->quiver(), path)) rows *= d;
      if (prefix.is_zero() || split.is_zero()) {
        result = Matrix(c_->field(), rows, c_->dim(path[0], path[n]));
      } else {
        std::size_t dims[2] = {c_->dim(path[0], path[n - 1]), c_->dim(path[n - 1], path[n])};
        result = apply_factor(split, dims, 0, prefix);
      }
    }
    return cache_.emplace(std::move(key), std::move(result)).first->second;
  }

  const Cocategory& cocategory() const { return *c_; }

 private:
  const Cocategory* c_;
  std::map<std::vector<std::size_t>, Matrix> cache_;
};

inline Matrix iterated_delta(const Cocategory& c, std::span<const std::size_t> path) {
  IteratedDelta it(c);
  return it(path);
}

/// Smallest n >= 1 with Δ^(n) = 0. Fails with NotConilpotent when Δ^(B) is
/// still nonzero for B = 1 + total dimension.
inline std::size_t nilpotency_index(const Cocategory& c) {
  const Quiver& q = c.quiver();
  const std::size_t bound = 1 + q.total_dim();
  IteratedDelta delta(c);
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      if (c.dim(x, y) > 0) level.push_back({x, y});
    }
  }
  for (std::size_t n = 1; n <= bound; ++n) {
    if (level.empty()) return n;
    if (n == bound) break;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : level) {
      for (std::size_t z = 0; z < c.size(); ++z) {
        auto path = p;
        path.push_back(z);
        if (!delta(path).is_zero()) next.push_back(std::move(path));
      }
    }
    if (next.empty()) return n + 1;
    level = std::move(next);
  }
  const auto& path = level.front();
  const Matrix& m = delta(path);
  std::size_t col = 0;
  for (std::size_t j = 0; j < m.cols() && col == 0; ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) {
        col = j + 1;
        break;
      }
    }
  }
  const std::string& label = q.hom(path.front(), path.back()).labels[col - 1];
  throw Error(ErrorKind::NotConilpotent,
              "iterated comultiplication still nonzero at n = " + std::to_string(bound) + " on path " +
                  detail::tuple_name(q, path) + ", witness " + label,
              label);
}

/// Checks coassociativity, gradings, the dg axioms and conilpotency.
inline ValidationReport validate_cocategory(const Cocategory& c) {
  ValidationReport report;
  const Quiver& q = c.quiver();
  const std::size_t n = c.size();
  const Field f = c.field();

  if (c.flavor() != Flavor::Plain) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          const Matrix& m = c.delta(x, y, z);
          std::size_t path[3] = {x, y, z};
          for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
              if (!m(i, j).is_zero() && tensor_degree(q, path, i) != q.degree(x, z, j)) {
                report.add("delta_degree_zero", detail::tuple_name(q, path),
                           "entry (" + std::to_string(i) + "," + std::to_string(j) + ") changes degree");
              }
            }
          }
        }
      }
    }
  }

  bool coassociative = true;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          std::size_t lhs_dims[2] = {c.dim(w, x), c.dim(x, z)};
          std::size_t rhs_dims[2] = {c.dim(w, y), c.dim(y, z)};
          Matrix lhs = apply_factor(c.delta(w, x, z), lhs_dims, 1, c.delta(x, y, z));
          Matrix rhs = apply_factor(c.delta(w, y, z), rhs_dims, 0, c.delta(w, x, y));
          std::size_t path[4] = {w, x, y, z};
          coassociative &= detail::expect_equal(report, "coassociativity", detail::tuple_name(q, path), lhs, rhs);
        }
      }
    }
  }

  if (c.has_differential()) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Matrix& d = c.differential(x, y);
        std::size_t pair[2] = {x, y};
        for (std::size_t i = 0; i < d.rows(); ++i) {
          for (std::size_t j = 0; j < d.cols(); ++j) {
            if (!d(i, j).is_zero() && q.degree(x, y, i) != q.degree(x, y, j) + 1) {
              report.add("differential_degree_one", detail::tuple_name(q, pair),
                         "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not of degree +1");
            }
          }
        }
        detail::expect_equal(report, "differential_squares_to_zero", detail::tuple_name(q, pair), d * d,
                             Matrix(f, d.rows(), d.cols()));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          std::size_t path[3] = {x, y, z};
          const Matrix& dl = c.delta(x, y, z);
          detail::expect_equal(report, "delta_chain_map", detail::tuple_name(q, path), dl * c.differential(x, z),
                               tensor_differential_after(c, path, dl));
        }
      }
    }
  }

  if (coassociative) {
    try {
      nilpotency_index(c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotConilpotent) throw;
      report.add("NotConilpotent", "witness " + e.witness(), e.what());
    }
  }
  return report;
}

/// Verifies that `f` is a cocategory homomorphism: degree 0 on graded
/// quivers, commutation with differentials, and for X, Z in Ob C, U in Ob D
///   Δ_{fX,U,fZ} f_{X,Z} = Σ_{Y : fY = U} (f_{X,Y} ⊗ f_{Y,Z}) Δ_{X,Y,Z}.
inline ValidationReport check_hom(const CocatHom& f) {
  const Cocategory& src = *f.source;
  const Cocategory& dst = *f.target;
  check_morphism_shape(f.morphism, src.quiver(), dst.quiver());
  if (!(src.field() == dst.field())) throw Error(ErrorKind::FieldMismatch, "homomorphism between different fields");
  ValidationReport report;
  const std::size_t n = src.size();
  const Field field = src.field();

  if (src.flavor() != Flavor::Plain || dst.flavor() != Flavor::Plain) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const Matrix& m = f.component(x, y);
        for (std::size_t i = 0; i < m.rows(); ++i) {
          for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero() &&
                dst.quiver().degree(f.object(x), f.object(y), i) != src.quiver().degree(x, y, j)) {
              std::size_t pair[2] = {x, y};
              report.add("hom_degree_zero", detail::tuple_name(src.quiver(), pair),
                         "entry (" + std::to_string(i) + "," + std::to_string(j) + ") changes degree");
            }
          }
        }
      }
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t fx = f.object(x);
      const std::size_t fz = f.object(z);
      for (std::size_t u = 0; u < dst.size(); ++u) {
        Matrix lhs = dst.delta(fx, u, fz) * f.component(x, z);
        Matrix rhs(field, lhs.rows(), lhs.cols());
        for (std::size_t y = 0; y < n; ++y) {
          if (f.object(y) != u) continue;
          std::size_t dims[2] = {src.dim(x, y), src.dim(y, z)};
          Matrix t = apply_factor(src.delta(x, y, z), dims, 0, f.component(x, y));
          std::size_t dims2[2] = {dst.dim(fx, u), src.dim(y, z)};
          rhs = rhs + apply_factor(t, dims2, 1, f.component(y, z));
        }
        std::string where = "(" + src.obj(x) + "," + src.obj(z) + ";" + dst.obj(u) + ")";
        detail::expect_equal(report, "hom_comultiplication", where, lhs, rhs);
      }
    }
  }

  if (src.has_differential() && dst.has_differential()) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t pair[2] = {x, y};
        detail::expect_equal(report, "hom_chain_map", detail::tuple_name(src.quiver(), pair),
                             dst.differential(f.object(x), f.object(y)) * f.component(x, y),
                             f.component(x, y) * src.differential(x, y));
      }
    }
  }
  return report;
}

namespace detail {

inline bool next_tuple(std::vector<std::size_t>& t, std::size_t base) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace detail

/// The n-fold compatibility implied by the homomorphism equation:
///   Δ^(n)_{fX,U1..U(n-1),fY} f = Σ_{f Zi = Ui} (f ⊗ ... ⊗ f) Δ^(n)_{X,Z1..Z(n-1),Y}.
inline ValidationReport check_iterated_compatibility(const CocatHom& f, std::size_t n) {
  const Cocategory& src = *f.source;
  const Cocategory& dst = *f.target;
  ValidationReport report;
  IteratedDelta dsrc(src);
  IteratedDelta ddst(dst);
  if (n < 1 || src.size() == 0 || dst.size() == 0) return report;
  for (std::size_t x = 0; x < src.size(); ++x) {
    for (std::size_t y = 0; y < src.size(); ++y) {
      std::vector<std::size_t> us(n - 1, 0);
      do {
        std::vector<std::size_t> dpath{f.object(x)};
        dpath.insert(dpath.end(), us.begin(), us.end());
        dpath.push_back(f.object(y));
        Matrix lhs = ddst(dpath) * f.component(x, y);
        Matrix rhs(src.field(), lhs.rows(), lhs.cols());
        std::vector<std::size_t> zs(n - 1, 0);
        do {
          bool match = true;
          for (std::size_t i = 0; i + 1 < n; ++i) match &= f.object(zs[i]) == us[i];
          if (!match) continue;
          std::vector<std::size_t> spath{x};
          spath.insert(spath.end(), zs.begin(), zs.end());
          spath.push_back(y);
          Matrix t = dsrc(spath);
          if (t.is_zero()) continue;
          auto dims = path_dims(src.quiver(), spath);
          for (std::size_t i = 0; i < n; ++i) {
            t = apply_factor(t, dims, i, f.component(spath[i], spath[i + 1]));
            dims[i] = dst.dim(f.object(spath[i]), f.object(spath[i + 1]));
          }
          rhs = rhs + t;
        } while (detail::next_tuple(zs, src.size()));
        detail::expect_equal(report, "hom_iterated_comultiplication", detail::tuple_name(dst.quiver(), dpath), lhs, rhs);
      } while (detail::next_tuple(us, dst.size()));
    }
  }
  return report;
}

/// Exact equality of object maps and all components.
inline std::optional<std::string> morphism_difference(const CocatHom& a, const CocatHom& b) {
  const Quiver& q = a.source->quiver();
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (a.object(x) != b.object(x)) return "object " + q.object(x);
  }
  for (std::size_t x = 0; x < q.size(); ++x) {
    for (std::size_t y = 0; y < q.size(); ++y) {
      if (!(a.component(x, y) == b.component(x, y))) {
        return "(" + q.object(x) + "," + q.object(y) + ") " + detail::diff_detail(a.component(x, y), b.component(x, y));
      }
    }
  }
  return std::nullopt;
}

}  // namespace cocat
