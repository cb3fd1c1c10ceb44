#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cocat/certificate.hpp"
#include "cocat/cocategory.hpp"
#include "cocat/induced.hpp"

namespace cocat {

/// Chooses a left inverse for an injective matrix.
using RetractionFn = std::function<Matrix(const Matrix&)>;

inline Matrix default_retraction(const Matrix& inj) { return retraction_for_injection(inj); }

/// Stacked map together with the object tuples of its nonzero blocks.
struct StackedMap {
  Matrix matrix;
  std::vector<std::vector<std::size_t>> profile;
};

namespace detail {

/// Interior tuples (Z1..Z(n-1)) of paths X -> Y whose iterated comultiplication
/// is nonzero, in lexicographic order. Prefixes with vanishing Δ^(k) are
/// pruned, since Δ^(n)_{X,..,Zk,..,Y} factors through Δ^(k)_{X,..,Zk}.
inline std::vector<std::vector<std::size_t>> live_tuples(IteratedDelta& delta, std::size_t x, std::size_t y,
                                                         std::size_t n) {
  const Cocategory& c = delta.cocategory();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path{x};
  std::function<void()> walk = [&] {
    if (path.size() == n) {
      path.push_back(y);
      if (c.dim(path[n - 1], y) > 0 && !delta(path).is_zero()) out.emplace_back(path.begin() + 1, path.end() - 1);
      path.pop_back();
      return;
    }
    for (std::size_t z = 0; z < c.size(); ++z) {
      path.push_back(z);
      if (c.dim(path[path.size() - 2], z) > 0 && (path.size() < 3 || !delta(path).is_zero())) walk();
      path.pop_back();
    }
  };
  if (c.dim(x, y) > 0) walk();
  return out;
}

}  // namespace detail

/// N_{X,Y}: the vertical stack of Δ^(n)_{X,Z1..Z(n-1),Y} over tuples with
/// some Zi outside S and 2 <= n < nilpotency index, ordered by (n, tuple).
/// `in_s` is indexed by the objects of `delta.cocategory()`.
inline StackedMap build_n_map(IteratedDelta& delta, std::size_t nilpotency, const std::vector<bool>& in_s,
                              std::size_t x, std::size_t y) {
  const Cocategory& c = delta.cocategory();
  StackedMap out;
  std::vector<Matrix> blocks;
  for (std::size_t n = 2; n < nilpotency; ++n) {
    for (auto& tuple : detail::live_tuples(delta, x, y, n)) {
      if (std::all_of(tuple.begin(), tuple.end(), [&](std::size_t z) { return in_s[z]; })) continue;
      std::vector<std::size_t> path{x};
      path.insert(path.end(), tuple.begin(), tuple.end());
      path.push_back(y);
      blocks.push_back(delta(path));
      out.profile.push_back(std::move(tuple));
    }
  }
  out.matrix = vstack(c.field(), c.dim(x, y), blocks);
  return out;
}

inline std::vector<std::size_t> resolve_objects(const Quiver& q, const std::vector<std::string>& names) {
  std::set<std::size_t> idx;
  for (const auto& s : names) {
    auto it = std::find(q.objects().begin(), q.objects().end(), s);
    if (it == q.objects().end()) throw Error(ErrorKind::SNotSubset, "'" + s + "' is not an object", s);
    idx.insert(static_cast<std::size_t>(it - q.objects().begin()));
  }
  return {idx.begin(), idx.end()};
}

struct SubcocatResult {
  CocategoryPtr parent;
  std::vector<std::size_t> objects;  // S, as parent indices in parent order
  CocategoryPtr sub;
  CocatHom inclusion;
  std::vector<Matrix> retractions;  // per pair of S, row-major
  std::vector<std::vector<std::vector<std::size_t>>> n_map_profile;
  Certificate certificate;

  const Matrix& retraction(std::size_t x, std::size_t y) const { return retractions[x * objects.size() + y]; }
};

/// The maximal cocomplete subcocategory C_S: C_S(X, Y) = Ker N_{X,Y},
/// Δ' = (π ⊗ π) Δ ι and, for dg cocategories, d' = π d ι. Every identity
/// that makes C_S a cocategory and ι a homomorphism is verified and listed
/// in the certificate.
inline SubcocatResult subcocategory(const CocategoryPtr& c, std::vector<std::size_t> s,
                                    const RetractionFn& retract = default_retraction) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (auto o : s) {
    if (o >= c->size()) throw Error(ErrorKind::SNotSubset, "object index out of range");
  }
  const std::size_t m = s.size();
  std::vector<bool> in_s(c->size(), false);
  for (auto o : s) in_s[o] = true;

  SubcocatResult res;
  res.parent = c;
  res.objects = s;
  res.certificate.operation = "subcocategory";
  const std::size_t nil = nilpotency_index(*c);
  IteratedDelta delta(*c);
  std::vector<Matrix> incl;
  std::vector<Matrix> n_maps;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      StackedMap nm = build_n_map(delta, nil, in_s, s[x], s[y]);
      incl.push_back(kernel(nm.matrix).matrix);
      res.retractions.push_back(retract(incl.back()));
      res.n_map_profile.push_back(std::move(nm.profile));
      n_maps.push_back(std::move(nm.matrix));
    }
  }
  res.sub = share(induced_cocategory(*c, s, incl, res.retractions));
  res.inclusion = CocatHom{res.sub, c, QuiverMorphism{s, incl}};

  const Cocategory& sub = *res.sub;
  const Quiver& q = c->quiver();
  Certificate& cert = res.certificate;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t pair[2] = {s[x], s[y]};
      std::string scope = detail::tuple_name(q, pair);
      const Matrix& i = incl[x * m + y];
      cert.record_equal("retraction_splits_inclusion", scope, res.retraction(x, y) * i,
                        Matrix::identity(c->field(), i.cols()));
      const Matrix& nm = n_maps[x * m + y];
      cert.record_equal("kernel_law", scope, nm * i, Matrix(c->field(), nm.rows(), i.cols()));
    }
  }
  cert.record("subcocategory_valid", "", validate_cocategory(sub));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t z = 0; z < m; ++z) {
      const Matrix& iz = incl[x * m + z];
      for (std::size_t y = 0; y < c->size(); ++y) {
        Matrix rhs = c->delta(s[x], y, s[z]) * iz;
        std::size_t triple[3] = {s[x], y, s[z]};
        std::string scope = detail::tuple_name(q, triple);
        if (in_s[y]) {
          std::size_t ys = static_cast<std::size_t>(std::find(s.begin(), s.end(), y) - s.begin());
          std::size_t dims[2] = {sub.dim(x, ys), sub.dim(ys, z)};
          Matrix lhs = apply_factor(sub.delta(x, ys, z), dims, 0, incl[x * m + ys]);
          dims[0] = c->dim(s[x], y);
          lhs = apply_factor(lhs, dims, 1, incl[ys * m + z]);
          cert.record_equal("inclusion_intertwines_comultiplication", scope, lhs, rhs);
        } else {
          cert.record_equal("comultiplication_vanishes_outside_s", scope, rhs, Matrix(c->field(), rhs.rows(), rhs.cols()));
        }
      }
    }
  }
  cert.record("inclusion_is_homomorphism", "", check_hom(res.inclusion));
  {
    std::size_t sub_nil = nilpotency_index(sub);
    cert.record("nilpotency_bound", "", sub_nil <= nil,
                std::to_string(sub_nil) + " <= " + std::to_string(nil));
  }
  if (c->has_differential()) {
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        std::size_t pair[2] = {s[x], s[y]};
        const Matrix& i = incl[x * m + y];
        Matrix di = c->differential(s[x], s[y]) * i;
        cert.record_equal("differential_preserves_subspace", detail::tuple_name(q, pair),
                          i * res.retraction(x, y) * di, di);
      }
    }
  }
  if (cert.failures() != 0) {
    throw Error(ErrorKind::InternalInvariantViolation, "subcocategory verification failed:\n" + cert.failure_text());
  }
  return res;
}

inline SubcocatResult subcocategory(const CocategoryPtr& c, const std::vector<std::string>& names,
                                    const RetractionFn& retract = default_retraction) {
  return subcocategory(c, resolve_objects(c->quiver(), names), retract);
}

/// The unique h̄ with ι ∘ h̄ = h for a homomorphism h whose object image
/// lies in S; h̄ = π h componentwise.
inline CocatHom factor_through_subcocat(const CocatHom& h, const SubcocatResult& sub) {
  if (h.target != sub.parent && !(*h.target == *sub.parent)) {
    throw Error(ErrorKind::SourceTargetMismatch, "homomorphism does not land in the parent cocategory");
  }
  const std::size_t nb = h.source->size();
  std::vector<std::size_t> object_map(nb);
  for (std::size_t x = 0; x < nb; ++x) {
    auto it = std::find(sub.objects.begin(), sub.objects.end(), h.object(x));
    if (it == sub.objects.end()) {
      const std::string& name = h.source->obj(x);
      throw Error(ErrorKind::ImageNotInS, "object " + name + " is sent outside S", name);
    }
    object_map[x] = static_cast<std::size_t>(it - sub.objects.begin());
  }
  std::vector<Matrix> comps;
  for (std::size_t x = 0; x < nb; ++x) {
    for (std::size_t y = 0; y < nb; ++y) comps.push_back(sub.retraction(object_map[x], object_map[y]) * h.component(x, y));
  }
  CocatHom bar{h.source, sub.sub, QuiverMorphism{std::move(object_map), std::move(comps)}};
  if (auto diff = morphism_difference(compose(sub.inclusion, bar), h)) {
    throw Error(ErrorKind::InternalInvariantViolation, "ι∘h̄ differs from h at " + *diff);
  }
  ValidationReport r = check_hom(bar);
  if (!r.ok()) throw Error(ErrorKind::InternalInvariantViolation, "factor is not a homomorphism:\n" + r.to_string());
  return bar;
}

}  // namespace cocat
