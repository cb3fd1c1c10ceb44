#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cocat/cocategory.hpp"
#include "cocat/constructions.hpp"
#include "cocat/induced.hpp"

namespace cocat {

/// Generator bounds. max_hom_dim bounds the generating quiver; the
/// cocategory built from it is additionally capped at max_cocat_hom_dim
/// per hom space so that exact computations stay desk-sized.
struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_objects = 3;
  std::size_t max_hom_dim = 3;
  std::size_t max_word_len = 4;
  Field field = Field::rationals();
  Flavor flavor = Flavor::Plain;
  bool transport = true;
  std::size_t max_cocat_hom_dim = 12;

  void check() const {
    if (max_objects < 1 || max_objects > 3 || max_hom_dim > 3 || max_word_len < 1 || max_word_len > 4 ||
        max_cocat_hom_dim < 3) {
      throw Error(ErrorKind::ShapeMismatch, "generator bounds out of range");
    }
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  Scalar nonzero(Field f) {
    for (;;) {
      Scalar s(f, range(-3, 3));
      if (!s.is_zero()) return s;
    }
  }
  std::uint64_t fork() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// A generated cocategory: a truncated tensor cocategory moved to a random
/// basis. basis_change(x, y) has the new basis vectors as columns, written
/// in word coordinates.
struct CorpusInstance {
  TensorCocategory tensor;
  std::optional<std::vector<Matrix>> generator_differential;
  std::vector<Matrix> basis_change;
  std::vector<Matrix> basis_change_inverse;
  CocategoryPtr cocat;

  std::size_t size() const { return tensor.generators.size(); }
  const Matrix& change(std::size_t x, std::size_t y) const { return basis_change[x * size() + y]; }
  const Matrix& change_inverse(std::size_t x, std::size_t y) const { return basis_change_inverse[x * size() + y]; }
};

namespace detail {

inline std::string arrow_name(std::size_t k) {
  std::string s(1, static_cast<char>('a' + k % 26));
  if (k >= 26) s += std::to_string(k / 26);
  return s;
}

struct GeneratorQuiver {
  Quiver quiver;
  std::optional<std::vector<Matrix>> differential;
};

inline GeneratorQuiver random_generators(Rng& rng, const GenConfig& cfg, std::size_t objects, const std::string& prefix) {
  static const char* names[] = {"U", "V", "W"};
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < objects; ++i) objs.push_back(prefix + names[i]);
  const bool graded = cfg.flavor != Flavor::Plain;
  const bool dg = cfg.flavor == Flavor::DG;
  std::vector<HomSpace> homs;
  std::vector<Matrix> diffs;
  std::size_t arrow = 0;
  for (std::size_t x = 0; x < objects; ++x) {
    for (std::size_t y = 0; y < objects; ++y) {
      HomSpace h;
      std::size_t dim = rng.chance(1, 3) ? 0 : static_cast<std::size_t>(rng.range(1, static_cast<long>(cfg.max_hom_dim)));
      for (std::size_t i = 0; i < dim; ++i) h.labels.push_back(arrow_name(arrow++));
      Matrix d(cfg.field, dim, dim);
      if (graded) {
        h.degrees = std::vector<int>{};
        std::vector<bool> paired(dim, false);
        for (std::size_t i = 0; i < dim; ++i) {
          if (dg && i > 0 && !paired[i - 1] && rng.chance(1, 2)) {
            // d(previous) = c * this
            h.degrees->push_back((*h.degrees)[i - 1] + 1);
            d(i, i - 1) = rng.nonzero(cfg.field);
            paired[i - 1] = paired[i] = true;
            continue;
          }
          h.degrees->push_back(static_cast<int>(rng.range(-1, 1)));
        }
      }
      homs.push_back(std::move(h));
      diffs.push_back(std::move(d));
    }
  }
  GeneratorQuiver g{Quiver(cfg.field, objs, std::move(homs)), std::nullopt};
  if (dg) g.differential = std::move(diffs);
  return g;
}

/// Largest hom dimension of T^[1,len]A, from powers of the arrow-count matrix.
inline std::size_t largest_tensor_hom(const Quiver& a, std::size_t len) {
  const std::size_t n = a.size();
  std::vector<std::size_t> power(n * n), total(n * n, 0);
  for (std::size_t k = 0; k < n * n; ++k) power[k] = a.homs()[k].dim();
  for (std::size_t l = 1; l <= len; ++l) {
    for (std::size_t k = 0; k < n * n; ++k) total[k] += power[k];
    std::vector<std::size_t> next(n * n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) next[x * n + z] += power[x * n + y] * a.dim(y, z);
      }
    }
    power = std::move(next);
  }
  std::size_t best = 0;
  for (auto t : total) best = std::max(best, t);
  return best;
}

/// Unit lower times unit upper triangular, both supported on equal degrees.
inline Matrix random_invertible(Rng& rng, const HomSpace& h, Field f) {
  const std::size_t n = h.dim();
  Matrix lower = Matrix::identity(f, n);
  Matrix upper = Matrix::identity(f, n);
  auto same_degree = [&](std::size_t i, std::size_t j) { return !h.degrees || (*h.degrees)[i] == (*h.degrees)[j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (same_degree(i, j) && rng.chance(1, 3)) lower(i, j) = Scalar(f, rng.range(-2, 2));
      if (same_degree(i, j) && rng.chance(1, 3)) upper(j, i) = Scalar(f, rng.range(-2, 2));
    }
  }
  return lower * upper;
}

}  // namespace detail

/// Moves a cocategory to new bases: Δ' = (P⁻¹ ⊗ P⁻¹) Δ P and d' = P⁻¹ d P,
/// with P(x, y) listing the new basis vectors as columns.
inline Cocategory transport(const Cocategory& c, const std::vector<Matrix>& change, const std::vector<Matrix>& inverse) {
  const std::size_t n = c.size();
  std::vector<HomSpace> homs;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) homs.push_back(subspace_hom(c.quiver().hom(x, y), change[x * n + y]));
  }
  Quiver q(c.field(), c.quiver().objects(), std::move(homs));
  std::vector<Matrix> delta;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        std::size_t dims[2] = {c.dim(x, y), c.dim(y, z)};
        Matrix m = apply_factor(c.delta(x, y, z) * change[x * n + z], dims, 0, inverse[x * n + y]);
        delta.push_back(apply_factor(m, dims, 1, inverse[y * n + z]));
      }
    }
  }
  std::vector<Matrix> diff;
  if (c.has_differential()) {
    for (std::size_t k = 0; k < n * n; ++k) diff.push_back(inverse[k] * c.differentials()[k] * change[k]);
  }
  return Cocategory(std::move(q), c.flavor(), std::move(delta), std::move(diff));
}

/// Random truncated tensor cocategory, optionally transported to a random
/// basis. With `length` the truncation is fixed instead of drawn.
inline CorpusInstance gen_instance(const GenConfig& cfg, std::optional<std::size_t> length = std::nullopt,
                                   const std::string& prefix = "") {
  cfg.check();
  Rng rng(cfg.seed);
  CorpusInstance inst;
  for (std::size_t attempt = 0;; ++attempt) {
    std::size_t objects = static_cast<std::size_t>(rng.range(1, static_cast<long>(cfg.max_objects)));
    GenConfig local = cfg;
    if (attempt > 8) local.max_hom_dim = 1;
    detail::GeneratorQuiver gq = detail::random_generators(rng, local, objects, prefix);
    std::size_t len = length.value_or(static_cast<std::size_t>(rng.range(1, static_cast<long>(cfg.max_word_len))));
    while (detail::largest_tensor_hom(gq.quiver, len) > cfg.max_cocat_hom_dim && !length && len > 1) --len;
    if (detail::largest_tensor_hom(gq.quiver, len) > cfg.max_cocat_hom_dim) {
      if (attempt < 64) continue;
      throw Error(ErrorKind::InternalInvariantViolation, "no generator quiver fits the size cap");
    }
    inst.tensor = build_tensor_cocategory(gq.quiver, len, gq.differential);
    inst.generator_differential = std::move(gq.differential);
    break;
  }
  const Cocategory& base = inst.tensor.cocategory;
  const std::size_t n = base.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix p = cfg.transport ? detail::random_invertible(rng, base.quiver().hom(x, y), cfg.field)
                               : Matrix::identity(cfg.field, base.dim(x, y));
      inst.basis_change_inverse.push_back(inverse(p));
      inst.basis_change.push_back(std::move(p));
    }
  }
  inst.cocat = share(cfg.transport ? transport(base, inst.basis_change, inst.basis_change_inverse) : base);
  return inst;
}

inline Cocategory gen_cocategory(const GenConfig& cfg) { return *gen_instance(cfg).cocat; }

/// Data for a homomorphism T^[1,N]A -> T^[1,M]B (N <= M): an object map and
/// a linear map from words of A to arrows of B per pair. The homomorphism
/// sends a word to the sum over its splittings w = w1 ... wk of
/// gen(w1) ⊗ ... ⊗ gen(wk).
struct GeneratorMap {
  std::vector<std::size_t> object_map;
  std::vector<Matrix> components;  // dim B(Fx, Fy) x dim T(x, y), word coordinates
};

inline CocatHom cofree_hom(const CorpusInstance& src, const CorpusInstance& dst, const GeneratorMap& gen) {
  const TensorCocategory& ts = src.tensor;
  const TensorCocategory& td = dst.tensor;
  if (ts.length > td.length) throw Error(ErrorKind::ShapeMismatch, "target tensor cocategory is too short");
  const std::size_t n = src.size();
  const std::size_t nd = dst.size();
  const Field field = ts.cocategory.field();
  QuiverMorphism mor;
  mor.object_map = gen.object_map;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t fx = gen.object_map[x];
      const std::size_t fy = gen.object_map[y];
      const auto& words = ts.basis(x, y);
      Matrix m(field, td.basis(fx, fy).size(), words.size());
      for (std::size_t col = 0; col < words.size(); ++col) {
        const Word& w = words[col];
        const std::size_t len = w.size();
        for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (len - 1)); ++cuts) {
          // pieces of w separated at the set bits of `cuts`
          std::vector<std::pair<Word, std::pair<std::size_t, std::size_t>>> pieces;
          std::size_t start = 0;
          for (std::size_t i = 1; i <= len; ++i) {
            if (i == len || ((cuts >> (i - 1)) & 1)) {
              Word piece(w.begin() + static_cast<std::ptrdiff_t>(start), w.begin() + static_cast<std::ptrdiff_t>(i));
              pieces.push_back({piece, {w[start].source, w[i - 1].target}});
              start = i;
            }
          }
          // expand the tensor product of the images of the pieces
          std::vector<std::pair<Word, Scalar>> terms{{Word{}, Scalar::one(field)}};
          for (const auto& [piece, ends] : pieces) {
            const Matrix& g = gen.components[ends.first * n + ends.second];
            const std::size_t pos = ts.position.at(piece);
            const std::size_t gx = gen.object_map[ends.first];
            const std::size_t gy = gen.object_map[ends.second];
            std::vector<std::pair<Word, Scalar>> next;
            for (const auto& [prefix, coeff] : terms) {
              for (std::size_t r = 0; r < g.rows(); ++r) {
                if (g(r, pos).is_zero()) continue;
                Word v = prefix;
                v.push_back({gx, gy, r});
                next.emplace_back(std::move(v), coeff * g(r, pos));
              }
            }
            terms = std::move(next);
          }
          for (const auto& [word, coeff] : terms) m(td.position.at(word), col) += coeff;
        }
      }
      mor.components.push_back(dst.change_inverse(fx, fy) * m * src.change(x, y));
    }
  }
  (void)nd;
  return CocatHom{src.cocat, dst.cocat, std::move(mor)};
}

namespace detail {

/// Random degree-0 map from words of `src` over (x, y) to arrows of `dst`
/// over (fx, fy); for dg flavors a chain map.
inline Matrix random_generator_component(Rng& rng, const CorpusInstance& src, const CorpusInstance& dst, std::size_t x,
                                         std::size_t y, std::size_t fx, std::size_t fy, std::uint64_t density) {
  const Quiver& tq = src.tensor.cocategory.quiver();
  const Quiver& bq = dst.tensor.generators;
  const Field field = tq.field();
  const std::size_t rows = bq.dim(fx, fy);
  const std::size_t cols = tq.dim(x, y);
  auto random_degree0 = [&](int shift) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (bq.degree(fx, fy, i) + shift != tq.degree(x, y, j)) continue;
        if (rng.chance(density, 4)) m(i, j) = Scalar(field, rng.range(-2, 2));
      }
    }
    return m;
  };
  if (!src.generator_differential) return random_degree0(0);
  // chain maps: a null-homotopic part dH + Hd (H lowering degree by one) plus a chain
  // map supported on words of length one
  const Matrix& db = (*dst.generator_differential)[fx * bq.size() + fy];
  const Matrix& dt = src.tensor.cocategory.differential(x, y);
  Matrix h = random_degree0(1);
  Matrix out = db * h + h * dt;
  const Quiver& aq = src.tensor.generators;
  const Matrix& da = (*src.generator_differential)[x * aq.size() + y];
  Matrix phi(field, rows, aq.dim(x, y));
  Matrix cycles = kernel(db).matrix;
  for (std::size_t j = 0; j < aq.dim(x, y); ++j) {
    bool is_target = false;
    for (std::size_t k = 0; k < da.cols(); ++k) is_target = is_target || !da(j, k).is_zero();
    if (is_target) continue;  // set from its partner below
    std::optional<std::size_t> partner;
    for (std::size_t i = 0; i < da.rows(); ++i) {
      if (!da(i, j).is_zero()) partner = i;
    }
    const int deg = aq.degree(x, y, j);
    if (partner) {
      for (std::size_t i = 0; i < rows; ++i) {
        if (bq.degree(fx, fy, i) == deg && rng.chance(density, 4)) phi(i, j) = Scalar(field, rng.range(-2, 2));
      }
      Matrix image = db * phi.column(j);
      Scalar inv = da(*partner, j).inverse();
      for (std::size_t i = 0; i < rows; ++i) phi(i, *partner) = image(i, 0) * inv;
    } else {
      for (std::size_t k = 0; k < cycles.cols(); ++k) {
        std::optional<int> cdeg;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!cycles(i, k).is_zero()) cdeg = bq.degree(fx, fy, i);
        }
        if (cdeg != deg || !rng.chance(density, 4)) continue;
        Scalar s(field, rng.range(-2, 2));
        for (std::size_t i = 0; i < rows; ++i) phi(i, j) += s * cycles(i, k);
      }
    }
  }
  const auto& words = src.tensor.basis(x, y);
  for (std::size_t col = 0; col < words.size(); ++col) {
    if (words[col].size() != 1) continue;
    for (std::size_t i = 0; i < rows; ++i) out(i, col) += phi(i, words[col][0].index);
  }
  return out;
}

}  // namespace detail

inline GeneratorMap random_generator_map(Rng& rng, const CorpusInstance& src, const CorpusInstance& dst,
                                         std::vector<std::size_t> object_map, std::uint64_t density = 2) {
  GeneratorMap g;
  g.object_map = std::move(object_map);
  const std::size_t n = src.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      g.components.push_back(
          detail::random_generator_component(rng, src, dst, x, y, g.object_map[x], g.object_map[y], density));
    }
  }
  return g;
}

struct HomPair {
  CorpusInstance target;
  CocatHom f;
  CocatHom g;
};

/// Two homomorphisms C -> D into a freshly generated D. g agrees with f
/// except for an optional change of one object image and perturbations of
/// size `perturbation_scale`; scale 0 gives g = f.
inline HomPair gen_hom_pair(const CorpusInstance& c, const GenConfig& cfg, long perturbation_scale = 1) {
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  GenConfig dcfg = cfg;
  dcfg.seed = rng.fork();
  HomPair pair{gen_instance(dcfg, c.tensor.length, "D"), {}, {}};
  const CorpusInstance& d = pair.target;
  const std::size_t n = c.size();
  std::vector<std::size_t> fobj(n);
  for (auto& o : fobj) o = static_cast<std::size_t>(rng.below(d.size()));
  GeneratorMap fmap = random_generator_map(rng, c, d, fobj);
  GeneratorMap gmap = fmap;
  if (perturbation_scale != 0) {
    if (d.size() > 1 && rng.chance(1, 3)) {
      std::size_t moved = static_cast<std::size_t>(rng.below(n));
      gmap.object_map[moved] = (gmap.object_map[moved] + 1 + rng.below(d.size() - 1)) % d.size();
    }
    GeneratorMap fresh = random_generator_map(rng, c, d, gmap.object_map);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t k = x * n + y;
        bool same_ends = gmap.object_map[x] == fobj[x] && gmap.object_map[y] == fobj[y];
        if (!same_ends) {
          gmap.components[k] = fresh.components[k];
        } else if (rng.chance(1, 2)) {
          // perturb only part of the words, so that the equalizer is proper
          Matrix delta = fresh.components[k];
          const auto& words = c.tensor.basis(x, y);
          std::size_t keep_len = static_cast<std::size_t>(rng.range(1, static_cast<long>(c.tensor.length)));
          for (std::size_t col = 0; col < words.size(); ++col) {
            if (words[col].size() != keep_len && !c.generator_differential) {
              for (std::size_t r = 0; r < delta.rows(); ++r) delta(r, col) = Scalar::zero(cfg.field);
            }
          }
          gmap.components[k] = gmap.components[k] + delta.scaled(Scalar(cfg.field, perturbation_scale));
        }
      }
    }
  }
  pair.f = cofree_hom(c, d, fmap);
  pair.g = cofree_hom(c, d, gmap);
  for (const CocatHom* h : {&pair.f, &pair.g}) {
    ValidationReport r = check_hom(*h);
    if (!r.ok()) throw Error(ErrorKind::InternalInvariantViolation, "generated homomorphism is invalid:\n" + r.to_string());
  }
  return pair;
}

/// Homomorphisms into an arbitrary cocategory `target`, out of a cocategory
/// with zero comultiplication: each generator goes to a primitive element
/// (killed by every Δ component and, for dg, by d) of matching degree.
inline CocatHom random_primitive_hom(Rng& rng, const CocategoryPtr& target, std::size_t objects) {
  const Field field = target->field();
  const std::size_t nt = target->size();
  if (nt == 0) {
    return CocatHom{share(Cocategory(Quiver::zero(field, {}, false), Flavor::Plain, {}, {})), target, {}};
  }
  std::vector<std::size_t> object_map(objects);
  for (auto& o : object_map) o = static_cast<std::size_t>(rng.below(nt));
  const bool graded = target->flavor() != Flavor::Plain;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < objects; ++i) names.push_back("B" + std::to_string(i));
  std::vector<HomSpace> homs;
  std::vector<Matrix> comps;
  std::size_t arrow = 0;
  for (std::size_t x = 0; x < objects; ++x) {
    for (std::size_t y = 0; y < objects; ++y) {
      const std::size_t tx = object_map[x];
      const std::size_t ty = object_map[y];
      std::vector<Matrix> conditions;
      for (std::size_t z = 0; z < nt; ++z) conditions.push_back(target->delta(tx, z, ty));
      if (target->has_differential()) conditions.push_back(target->differential(tx, ty));
      Matrix prim = kernel(vstack(field, target->dim(tx, ty), conditions)).matrix;
      HomSpace h;
      if (graded) h.degrees = std::vector<int>{};
      std::size_t dim = prim.cols() == 0 ? 0 : static_cast<std::size_t>(rng.range(0, 2));
      Matrix comp(field, target->dim(tx, ty), dim);
      for (std::size_t k = 0; k < dim; ++k) {
        // pick a degree present among the primitive basis vectors
        std::size_t anchor = static_cast<std::size_t>(rng.below(prim.cols()));
        auto degree_of = [&](std::size_t col) {
          for (std::size_t i = 0; i < prim.rows(); ++i) {
            if (!prim(i, col).is_zero()) return target->quiver().degree(tx, ty, i);
          }
          return 0;
        };
        int deg = degree_of(anchor);
        for (std::size_t col = 0; col < prim.cols(); ++col) {
          if (degree_of(col) != deg) continue;
          Scalar s = col == anchor ? rng.nonzero(field) : Scalar(field, rng.range(-1, 1));
          for (std::size_t i = 0; i < prim.rows(); ++i) comp(i, k) += s * prim(i, col);
        }
        h.labels.push_back("p" + std::to_string(arrow++));
        if (graded) h.degrees->push_back(deg);
      }
      homs.push_back(std::move(h));
      comps.push_back(std::move(comp));
    }
  }
  Quiver q(field, names, std::move(homs));
  std::vector<Matrix> delta;
  for (std::size_t x = 0; x < objects; ++x) {
    for (std::size_t y = 0; y < objects; ++y) {
      for (std::size_t z = 0; z < objects; ++z) delta.emplace_back(field, q.dim(x, y) * q.dim(y, z), q.dim(x, z));
    }
  }
  std::vector<Matrix> diff;
  if (target->has_differential()) {
    for (std::size_t x = 0; x < objects; ++x) {
      for (std::size_t y = 0; y < objects; ++y) diff.emplace_back(field, q.dim(x, y), q.dim(x, y));
    }
  }
  auto source = share(Cocategory(std::move(q), target->flavor(), std::move(delta), std::move(diff)));
  return CocatHom{source, target, QuiverMorphism{std::move(object_map), std::move(comps)}};
}

}  // namespace cocat
