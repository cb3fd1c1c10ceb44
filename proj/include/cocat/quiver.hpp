#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cocat/error.hpp"
#include "cocat/matrix.hpp"

namespace cocat {

/// A based hom space. `degrees` is present exactly for graded quivers.
struct HomSpace {
  std::vector<std::string> labels;
  std::optional<std::vector<int>> degrees;

  std::size_t dim() const { return labels.size(); }
  friend bool operator==(const HomSpace&, const HomSpace&) = default;
};

/// Finite k-quiver with explicit bases. Objects are ordered by their
/// position in `objects()`; hom spaces are stored row-major by (source,
/// target) index.
class Quiver {
 public:
  Quiver() = default;

  Quiver(Field field, std::vector<std::string> objects, std::vector<HomSpace> homs)
      : field_(field), objects_(std::move(objects)), homs_(std::move(homs)) {
    std::set<std::string> seen(objects_.begin(), objects_.end());
    if (seen.size() != objects_.size()) throw Error(ErrorKind::DuplicateObjects, "object list has duplicates");
    if (homs_.size() != objects_.size() * objects_.size()) {
      throw Error(ErrorKind::ShapeMismatch, "expected one hom space per ordered object pair");
    }
    std::optional<bool> graded;
    for (const auto& h : homs_) {
      std::set<std::string> labels(h.labels.begin(), h.labels.end());
      if (labels.size() != h.labels.size()) throw Error(ErrorKind::ShapeMismatch, "duplicate basis labels");
      if (h.degrees && h.degrees->size() != h.dim()) {
        throw Error(ErrorKind::ShapeMismatch, "degree list length differs from dimension");
      }
      if (graded && *graded != h.degrees.has_value()) {
        throw Error(ErrorKind::ShapeMismatch, "degrees must be given for all hom spaces or none");
      }
      graded = h.degrees.has_value();
    }
    graded_ = graded.value_or(false);
  }

  /// Empty quiver on `objects` with every hom space zero.
  static Quiver zero(Field field, std::vector<std::string> objects, bool graded) {
    std::vector<HomSpace> homs(objects.size() * objects.size());
    if (graded) {
      for (auto& h : homs) h.degrees = std::vector<int>{};
    }
    return Quiver(field, std::move(objects), std::move(homs));
  }

  Field field() const { return field_; }
  bool graded() const { return graded_; }
  std::size_t size() const { return objects_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& object(std::size_t i) const { return objects_[i]; }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) throw Error(ErrorKind::UnknownObject, "no object named '" + name + "'", name);
    return static_cast<std::size_t>(it - objects_.begin());
  }

  const HomSpace& hom(std::size_t x, std::size_t y) const { return homs_[x * size() + y]; }
  HomSpace& hom(std::size_t x, std::size_t y) { return homs_[x * size() + y]; }
  std::size_t dim(std::size_t x, std::size_t y) const { return hom(x, y).dim(); }
  int degree(std::size_t x, std::size_t y, std::size_t i) const {
    const auto& h = hom(x, y);
    return h.degrees ? (*h.degrees)[i] : 0;
  }

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (const auto& h : homs_) t += h.dim();
    return t;
  }

  const std::vector<HomSpace>& homs() const { return homs_; }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  Field field_;
  std::vector<std::string> objects_;
  std::vector<HomSpace> homs_;
  bool graded_ = false;
};

/// Quiver morphism: an object map and one matrix per source pair, of shape
/// dim B(f X, f Y) x dim A(X, Y).
struct QuiverMorphism {
  std::vector<std::size_t> object_map;
  std::vector<Matrix> components;

  const Matrix& component(std::size_t x, std::size_t y) const { return components[x * object_map.size() + y]; }
  friend bool operator==(const QuiverMorphism&, const QuiverMorphism&) = default;
};

/// Checks shapes of `f: a -> b` and, for graded quivers, that every
/// component has degree 0.
inline void check_morphism_shape(const QuiverMorphism& f, const Quiver& a, const Quiver& b) {
  const std::size_t n = a.size();
  if (f.object_map.size() != n || f.components.size() != n * n) {
    throw Error(ErrorKind::ShapeMismatch, "morphism does not cover the source objects");
  }
  for (auto t : f.object_map) {
    if (t >= b.size()) throw Error(ErrorKind::UnknownObject, "object map leaves the target");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Matrix& m = f.component(x, y);
      std::size_t fx = f.object_map[x];
      std::size_t fy = f.object_map[y];
      if (m.rows() != b.dim(fx, fy) || m.cols() != a.dim(x, y) || !(m.field() == a.field())) {
        throw Error(ErrorKind::ShapeMismatch,
                    "component (" + a.object(x) + "," + a.object(y) + ") has shape " + m.shape());
      }
    }
  }
}

/// g ∘ f, composing object maps as functions and components as matrices.
inline QuiverMorphism compose(const QuiverMorphism& g, const QuiverMorphism& f) {
  const std::size_t n = f.object_map.size();
  QuiverMorphism h;
  h.object_map.resize(n);
  for (std::size_t x = 0; x < n; ++x) h.object_map[x] = g.object_map[f.object_map[x]];
  h.components.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      h.components.push_back(g.component(f.object_map[x], f.object_map[y]) * f.component(x, y));
    }
  }
  return h;
}

inline QuiverMorphism identity_morphism(const Quiver& q) {
  QuiverMorphism id;
  for (std::size_t x = 0; x < q.size(); ++x) id.object_map.push_back(x);
  for (std::size_t x = 0; x < q.size(); ++x) {
    for (std::size_t y = 0; y < q.size(); ++y) id.components.push_back(Matrix::identity(q.field(), q.dim(x, y)));
  }
  return id;
}

namespace detail {

/// Compound labels are parenthesised so that tensor labels stay unambiguous.
inline std::string factor_label(const std::string& s) {
  return s.find("⊗") == std::string::npos && s.find(' ') == std::string::npos ? s : "(" + s + ")";
}

}  // namespace detail

/// Tensor product over a common object set:
/// (A ⊗ B)(X, Z) = ⊕_Y A(X, Y) ⊗ B(Y, Z), Y in object order, each block
/// major-first in the A index.
inline Quiver tensor_quiver(const Quiver& a, const Quiver& b) {
  if (a.objects() != b.objects()) throw Error(ErrorKind::ObjectSetMismatch, "tensor of quivers on different objects");
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "tensor of quivers over different fields");
  const bool graded = a.graded() && b.graded();
  const std::size_t n = a.size();
  std::vector<HomSpace> homs(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      HomSpace& h = homs[x * n + z];
      if (graded) h.degrees = std::vector<int>{};
      for (std::size_t y = 0; y < n; ++y) {
        const HomSpace& l = a.hom(x, y);
        const HomSpace& r = b.hom(y, z);
        for (std::size_t i = 0; i < l.dim(); ++i) {
          for (std::size_t j = 0; j < r.dim(); ++j) {
            h.labels.push_back(detail::factor_label(l.labels[i]) + "⊗" + detail::factor_label(r.labels[j]));
            if (graded) h.degrees->push_back((*l.degrees)[i] + (*r.degrees)[j]);
          }
        }
      }
    }
  }
  return Quiver(a.field(), a.objects(), std::move(homs));
}

/// The discrete quiver kS: k on the diagonal (basis "1_X"), 0 elsewhere.
inline Quiver discrete_quiver(const std::vector<std::string>& objects, Field field, bool graded = false) {
  const std::size_t n = objects.size();
  std::vector<HomSpace> homs(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      HomSpace& h = homs[x * n + y];
      if (graded) h.degrees = std::vector<int>{};
      if (x == y) {
        h.labels.push_back("1_" + objects[x]);
        if (graded) h.degrees->push_back(0);
      }
    }
  }
  return Quiver(field, objects, std::move(homs));
}

}  // namespace cocat
