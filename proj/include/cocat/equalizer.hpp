#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cocat/certificate.hpp"
#include "cocat/cocategory.hpp"
#include "cocat/induced.hpp"
#include "cocat/subcocat.hpp"

namespace cocat {

inline void require_parallel(const CocatHom& f, const CocatHom& g) {
  bool same_source = f.source == g.source || *f.source == *g.source;
  bool same_target = f.target == g.target || *f.target == *g.target;
  if (!same_source || !same_target) {
    throw Error(ErrorKind::SourceTargetMismatch, "the two homomorphisms do not share source and target");
  }
}

/// S = {X in Ob C | f(X) = g(X)}.
inline std::vector<std::size_t> object_equalizer(const CocatHom& f, const CocatHom& g) {
  require_parallel(f, g);
  std::vector<std::size_t> s;
  for (std::size_t x = 0; x < f.source->size(); ++x) {
    if (f.object(x) == g.object(x)) s.push_back(x);
  }
  return s;
}

/// One block of R: the (f - g) factor sits at position p of a path with
/// p + 1 + q segments through `interior`.
struct RBlock {
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<std::size_t> interior;
};

struct RMap {
  Matrix matrix;
  std::vector<RBlock> profile;
};

/// R_{X,Y} = stack of (1^{⊗p} ⊗ (f - g) ⊗ 1^{⊗q}) Δ^(p+1+q) over paths
/// X = X0, .., Xp, Y0, .., Yq = Y with p + 1 + q below the nilpotency index,
/// ordered by (p + q, p, tuple). Requires Ob f = Ob g.
inline RMap build_r_map(const CocatHom& f, const CocatHom& g, IteratedDelta& delta, std::size_t nilpotency,
                        std::size_t x, std::size_t y) {
  const Cocategory& c = *f.source;
  for (std::size_t o = 0; o < c.size(); ++o) {
    if (f.object(o) != g.object(o)) throw Error(ErrorKind::ObjectMapsDiffer, "f and g differ on " + c.obj(o), c.obj(o));
  }
  RMap out;
  std::vector<Matrix> blocks;
  for (std::size_t n = 1; n < nilpotency; ++n) {
    auto tuples = detail::live_tuples(delta, x, y, n);
    for (std::size_t pos = 0; pos < n; ++pos) {
      for (const auto& tuple : tuples) {
        std::vector<std::size_t> path{x};
        path.insert(path.end(), tuple.begin(), tuple.end());
        path.push_back(y);
        const std::size_t a = path[pos];
        const std::size_t b = path[pos + 1];
        Matrix diff = f.component(a, b) - g.component(a, b);
        if (diff.is_zero()) continue;
        auto dims = path_dims(c.quiver(), path);
        Matrix block = apply_factor(delta(path), dims, pos, diff);
        if (block.is_zero()) continue;
        blocks.push_back(std::move(block));
        out.profile.push_back({pos, n - 1 - pos, tuple});
      }
    }
  }
  out.matrix = vstack(c.field(), c.dim(x, y), blocks);
  return out;
}

inline RMap build_r_map(const CocatHom& f, const CocatHom& g, std::size_t x, std::size_t y) {
  require_parallel(f, g);
  IteratedDelta delta(*f.source);
  return build_r_map(f, g, delta, nilpotency_index(*f.source), x, y);
}

struct EqualizerResult {
  CocatHom f;
  CocatHom g;
  SubcocatResult sub;               // C_S for S = {X | f X = g X}
  CocategoryPtr eq;                 // E, on the objects of C_S
  CocatHom e_local;                 // E -> C_S
  CocatHom e_hom;                   // E -> C
  std::vector<Matrix> retractions;  // p per pair, row-major
  std::vector<std::vector<RBlock>> r_profile;
  Certificate certificate;

  const Matrix& retraction(std::size_t x, std::size_t y) const { return retractions[x * eq->size() + y]; }
};

/// Equalizer of f, g: C -> D. Restricts to C_S, takes E(X, Y) = Ker R for
/// f∘ι, g∘ι, and induces Δ̃ = (p ⊗ p) Δ' e (and d̃ = p d' e). Every identity
/// is verified and recorded in the certificate.
inline EqualizerResult equalize(const CocatHom& f, const CocatHom& g,
                                const RetractionFn& retract = default_retraction) {
  EqualizerResult res;
  res.f = f;
  res.g = g;
  std::vector<std::size_t> s = object_equalizer(f, g);
  res.sub = subcocategory(f.source, s, retract);
  const CocategoryPtr& cs = res.sub.sub;
  CocatHom fs = compose(f, res.sub.inclusion);
  CocatHom gs = compose(g, res.sub.inclusion);
  const std::size_t m = cs->size();
  const std::size_t nil_s = nilpotency_index(*cs);
  IteratedDelta delta(*cs);

  std::vector<Matrix> incl;
  std::vector<Matrix> r_maps;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      RMap r = build_r_map(fs, gs, delta, nil_s, x, y);
      incl.push_back(kernel(r.matrix).matrix);
      res.retractions.push_back(retract(incl.back()));
      res.r_profile.push_back(std::move(r.profile));
      r_maps.push_back(std::move(r.matrix));
    }
  }
  std::vector<std::size_t> all(m);
  for (std::size_t x = 0; x < m; ++x) all[x] = x;
  res.eq = share(induced_cocategory(*cs, all, incl, res.retractions));
  res.e_local = CocatHom{res.eq, cs, QuiverMorphism{all, incl}};
  res.e_hom = compose(res.sub.inclusion, res.e_local);

  const Cocategory& e = *res.eq;
  const Quiver& q = cs->quiver();
  Certificate& cert = res.certificate;
  cert.operation = "equalize";
  cert.append(res.sub.certificate, "subcocategory.");
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t pair[2] = {x, y};
      std::string scope = detail::tuple_name(q, pair);
      const Matrix& i = incl[x * m + y];
      cert.record_equal("retraction_splits_embedding", scope, res.retraction(x, y) * i,
                        Matrix::identity(e.field(), i.cols()));
      const Matrix& r = r_maps[x * m + y];
      cert.record_equal("kernel_law", scope, r * i, Matrix(e.field(), r.rows(), i.cols()));
    }
  }
  cert.record("equalizer_valid", "", validate_cocategory(e));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        std::size_t triple[3] = {x, y, z};
        std::size_t dims[2] = {e.dim(x, y), e.dim(y, z)};
        Matrix lhs = apply_factor(e.delta(x, y, z), dims, 0, incl[x * m + y]);
        dims[0] = cs->dim(x, y);
        lhs = apply_factor(lhs, dims, 1, incl[y * m + z]);
        cert.record_equal("embedding_intertwines_comultiplication", detail::tuple_name(q, triple), lhs,
                          cs->delta(x, y, z) * incl[x * m + z]);
      }
    }
  }
  cert.record("embedding_is_homomorphism", "", check_hom(res.e_local));
  cert.record("composite_embedding_is_homomorphism", "", check_hom(res.e_hom));
  {
    auto diff = morphism_difference(compose(f, res.e_hom), compose(g, res.e_hom));
    cert.record("equalizes", "", !diff.has_value(), diff.value_or(""));
  }
  {
    std::size_t e_nil = nilpotency_index(e);
    std::size_t c_nil = nilpotency_index(*f.source);
    cert.record("nilpotency_bound", "", e_nil <= c_nil, std::to_string(e_nil) + " <= " + std::to_string(c_nil));
  }
  if (cs->has_differential()) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        std::size_t pair[2] = {x, y};
        std::string scope = detail::tuple_name(q, pair);
        const Matrix& i = incl[x * m + y];
        Matrix di = cs->differential(x, y) * i;
        const Matrix& r = r_maps[x * m + y];
        cert.record_equal("differential_preserves_kernel", scope, r * di, Matrix(e.field(), r.rows(), i.cols()));
        cert.record_equal("differential_preserves_subspace", scope, i * res.retraction(x, y) * di, di);
      }
    }
  }
  if (cert.failures() != 0) {
    throw Error(ErrorKind::InternalInvariantViolation, "equalizer verification failed:\n" + cert.failure_text());
  }
  return res;
}

/// The unique j: B -> E with e ∘ j = h, for h equalizing f and g.
inline CocatHom factor_through_equalizer(const CocatHom& h, const EqualizerResult& res) {
  if (h.target != res.f.source && !(*h.target == *res.f.source)) {
    throw Error(ErrorKind::SourceTargetMismatch, "homomorphism does not land in the source of f and g");
  }
  if (auto diff = morphism_difference(compose(res.f, h), compose(res.g, h))) {
    throw Error(ErrorKind::NotEqualizing, "f∘h and g∘h differ at " + *diff, *diff);
  }
  CocatHom bar = factor_through_subcocat(h, res.sub);
  const std::size_t nb = h.source->size();
  std::vector<Matrix> comps;
  for (std::size_t x = 0; x < nb; ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      comps.push_back(res.retraction(bar.object(x), bar.object(y)) * bar.component(x, y));
    }
  }
  CocatHom j{h.source, res.eq, QuiverMorphism{bar.morphism.object_map, std::move(comps)}};
  if (auto diff = morphism_difference(compose(res.e_hom, j), h)) {
    throw Error(ErrorKind::InternalInvariantViolation, "e∘j differs from h at " + *diff);
  }
  ValidationReport r = check_hom(j);
  if (!r.ok()) throw Error(ErrorKind::InternalInvariantViolation, "factor is not a homomorphism:\n" + r.to_string());
  return j;
}

}  // namespace cocat
