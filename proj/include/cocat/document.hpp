#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "cocat/certificate.hpp"
#include "cocat/cocategory.hpp"
#include "cocat/constructions.hpp"
#include "cocat/equalizer.hpp"
#include "cocat/subcocat.hpp"

// Textual interchange format. Every document is a JSON object carrying
// "format_version": "1" and a "kind". Structure constants are stored as
// sorted records, scalars in canonical form, so serialize(parse(text)) is
// byte-identical for canonical text.
//
//   delta record         [X, Y, Z, target, left, right, "s"]  Δ(e_target) ∋ s·e_left⊗e_right
//   differential record  [X, Y, from, to, "s"]               d(e_from) ∋ s·e_to
//   component record     [X, Y, from, to, "s"]               f(e_from) ∋ s·e_to

namespace cocat::doc {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

inline std::string serialize(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

[[noreturn]] inline void fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

inline const json& member(const json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string text(const json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t index(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline const json& array(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

inline void expect_header(const json& j, const std::string& kind) {
  if (!j.is_object()) fail("document must be a JSON object");
  if (text(member(j, "format_version"), "format_version") != kFormatVersion) fail("unsupported format_version");
  std::string k = text(member(j, "kind"), "kind");
  if (k != kind) fail("expected a '" + kind + "' document, got '" + k + "'");
}

inline json header(const std::string& kind) {
  json j = json::object();
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

inline std::size_t check_range(std::size_t i, std::size_t bound, const char* what) {
  if (i >= bound) throw Error(ErrorKind::ShapeMismatch, std::string(what) + " index out of range");
  return i;
}

/// Records of a matrix family: [names..., from, to, "s"] for every nonzero
/// entry m(to, from), sorted by (object indices, from, to).
inline json matrix_records(const std::vector<std::vector<std::string>>& keys, const std::vector<Matrix>& mats) {
  json out = json::array();
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const Matrix& m = mats[k];
    for (std::size_t from = 0; from < m.cols(); ++from) {
      for (std::size_t to = 0; to < m.rows(); ++to) {
        if (m(to, from).is_zero()) continue;
        json r = json::array();
        for (const auto& name : keys[k]) r.push_back(name);
        r.push_back(from);
        r.push_back(to);
        r.push_back(m(to, from).to_string());
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

/// Reads [X, Y, from, to, "s"] records into zero-initialised matrices
/// indexed by `slot(x, y)`; duplicates are rejected.
template <class Slot>
void read_pair_records(const json& records, const Quiver& src, Field field, std::vector<Matrix>& mats, Slot slot,
                       const char* what) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& r : array(records, what)) {
    if (!r.is_array() || r.size() != 5) fail(std::string(what) + " record must have 5 entries");
    std::size_t x = src.index_of(text(r[0], "object"));
    std::size_t y = src.index_of(text(r[1], "object"));
    std::size_t from = index(r[2], "index");
    std::size_t to = index(r[3], "index");
    Matrix& m = mats[slot(x, y)];
    check_range(from, m.cols(), what);
    check_range(to, m.rows(), what);
    if (!seen.insert({x, y, from, to}).second) fail(std::string("duplicate ") + what + " record");
    m(to, from) = Scalar::parse(field, text(r[4], "scalar"));
  }
}

}  // namespace detail

// ---------------------------------------------------------------- quiver

inline json quiver_fields(const Quiver& q, json j) {
  j["field"] = q.field().name();
  j["objects"] = q.objects();
  json homs = json::array();
  for (std::size_t x = 0; x < q.size(); ++x) {
    for (std::size_t y = 0; y < q.size(); ++y) {
      const HomSpace& h = q.hom(x, y);
      if (h.dim() == 0) continue;
      json e = json::object();
      e["source"] = q.object(x);
      e["target"] = q.object(y);
      e["labels"] = h.labels;
      if (h.degrees) e["degrees"] = *h.degrees;
      homs.push_back(std::move(e));
    }
  }
  j["homs"] = std::move(homs);
  return j;
}

inline Quiver read_quiver(const json& j, bool graded) {
  Field field = Field::parse(detail::text(detail::member(j, "field"), "field"));
  std::vector<std::string> objects;
  for (const auto& o : detail::array(detail::member(j, "objects"), "objects")) objects.push_back(detail::text(o, "object"));
  Quiver q = Quiver::zero(field, objects, graded);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : detail::array(detail::member(j, "homs"), "homs")) {
    std::size_t x = q.index_of(detail::text(detail::member(e, "source"), "source"));
    std::size_t y = q.index_of(detail::text(detail::member(e, "target"), "target"));
    if (!seen.insert({x, y}).second) detail::fail("duplicate hom entry " + objects[x] + " -> " + objects[y]);
    HomSpace h;
    for (const auto& l : detail::array(detail::member(e, "labels"), "labels")) h.labels.push_back(detail::text(l, "label"));
    auto it = e.find("degrees");
    if (it != e.end()) {
      if (!graded) throw Error(ErrorKind::ShapeMismatch, "degrees given for an ungraded flavor");
      h.degrees = std::vector<int>{};
      for (const auto& d : detail::array(*it, "degrees")) {
        if (!d.is_number_integer()) detail::fail("degrees must be integers");
        h.degrees->push_back(d.get<int>());
      }
    } else if (graded) {
      throw Error(ErrorKind::ShapeMismatch, "graded flavors need degrees for every hom space");
    }
    q.hom(x, y) = std::move(h);
  }
  // re-run the constructor checks on the assembled hom table
  return Quiver(field, q.objects(), q.homs());
}

/// Quiver document. An optional generator differential makes it usable as
/// input for a dg tensor construction.
inline json quiver_to_json(const Quiver& q, const std::optional<std::vector<Matrix>>& differential = std::nullopt) {
  json j = detail::header("quiver");
  j["graded"] = q.graded();
  j = quiver_fields(q, std::move(j));
  if (differential) {
    std::vector<std::vector<std::string>> keys;
    for (std::size_t x = 0; x < q.size(); ++x) {
      for (std::size_t y = 0; y < q.size(); ++y) keys.push_back({q.object(x), q.object(y)});
    }
    j["differential"] = detail::matrix_records(keys, *differential);
  }
  return j;
}

struct QuiverDocument {
  Quiver quiver;
  std::optional<std::vector<Matrix>> differential;
};

inline QuiverDocument quiver_from_json(const json& j) {
  detail::expect_header(j, "quiver");
  const json& g = detail::member(j, "graded");
  if (!g.is_boolean()) detail::fail("graded must be a boolean");
  QuiverDocument out{read_quiver(j, g.get<bool>()), std::nullopt};
  auto it = j.find("differential");
  if (it != j.end()) {
    const Quiver& q = out.quiver;
    if (!q.graded()) throw Error(ErrorKind::ShapeMismatch, "a differential needs a graded quiver");
    std::vector<Matrix> d;
    for (const auto& h : q.homs()) d.emplace_back(q.field(), h.dim(), h.dim());
    const std::size_t n = q.size();
    detail::read_pair_records(*it, q, q.field(), d, [n](std::size_t x, std::size_t y) { return x * n + y; },
                              "differential");
    out.differential = std::move(d);
  }
  return out;
}

// ---------------------------------------------------------------- cocategory

namespace detail {

inline json delta_records(const Quiver& q, const std::vector<Matrix>& delta) {
  const std::size_t n = q.size();
  json out = json::array();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const Matrix& m = delta[(x * n + y) * n + z];
        const std::size_t right_dim = q.dim(y, z);
        for (std::size_t t = 0; t < m.cols(); ++t) {
          for (std::size_t row = 0; row < m.rows(); ++row) {
            if (m(row, t).is_zero()) continue;
            out.push_back(json::array({q.object(x), q.object(y), q.object(z), t, row / right_dim, row % right_dim,
                                       m(row, t).to_string()}));
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<Matrix> read_delta(const json& records, const Quiver& q) {
  const std::size_t n = q.size();
  std::vector<Matrix> delta;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) delta.emplace_back(q.field(), q.dim(x, y) * q.dim(y, z), q.dim(x, z));
    }
  }
  std::set<std::vector<std::size_t>> seen;
  for (const auto& r : array(records, "delta")) {
    if (!r.is_array() || r.size() != 7) fail("delta record must have 7 entries");
    std::size_t x = q.index_of(text(r[0], "object"));
    std::size_t y = q.index_of(text(r[1], "object"));
    std::size_t z = q.index_of(text(r[2], "object"));
    std::size_t t = check_range(index(r[3], "index"), q.dim(x, z), "delta target");
    std::size_t l = check_range(index(r[4], "index"), q.dim(x, y), "delta left");
    std::size_t rr = check_range(index(r[5], "index"), q.dim(y, z), "delta right");
    if (!seen.insert({x, y, z, t, l, rr}).second) fail("duplicate delta record");
    delta[(x * n + y) * n + z](l * q.dim(y, z) + rr, t) = Scalar::parse(q.field(), text(r[6], "scalar"));
  }
  return delta;
}

inline std::vector<std::vector<std::string>> pair_keys(const Quiver& q) {
  std::vector<std::vector<std::string>> keys;
  for (std::size_t x = 0; x < q.size(); ++x) {
    for (std::size_t y = 0; y < q.size(); ++y) keys.push_back({q.object(x), q.object(y)});
  }
  return keys;
}

inline json cocategory_fields(const Quiver& q, Flavor flavor, const std::vector<Matrix>& delta,
                              const std::vector<Matrix>& differential, json j) {
  j["flavor"] = flavor_name(flavor);
  j = quiver_fields(q, std::move(j));
  j["delta"] = delta_records(q, delta);
  if (flavor == Flavor::DG) j["differential"] = matrix_records(pair_keys(q), differential);
  return j;
}

struct CocategoryParts {
  Quiver quiver;
  Flavor flavor;
  std::vector<Matrix> delta;
  std::vector<Matrix> differential;
};

inline CocategoryParts read_cocategory_parts(const json& j) {
  Flavor flavor = parse_flavor(text(member(j, "flavor"), "flavor"));
  CocategoryParts p{read_quiver(j, flavor != Flavor::Plain), flavor, {}, {}};
  p.delta = read_delta(member(j, "delta"), p.quiver);
  const std::size_t n = p.quiver.size();
  auto it = j.find("differential");
  if (flavor == Flavor::DG) {
    if (it == j.end()) fail("dg documents need a differential field");
    for (const auto& h : p.quiver.homs()) p.differential.emplace_back(p.quiver.field(), h.dim(), h.dim());
    read_pair_records(*it, p.quiver, p.quiver.field(), p.differential,
                      [n](std::size_t x, std::size_t y) { return x * n + y; }, "differential");
  } else if (it != j.end()) {
    throw Error(ErrorKind::ShapeMismatch, "differential given for a non-dg flavor");
  }
  return p;
}

}  // namespace detail

inline json to_json(const Cocategory& c) {
  return detail::cocategory_fields(c.quiver(), c.flavor(), c.delta_components(), c.differentials(),
                                   detail::header("cocategory"));
}

inline Cocategory cocategory_from_json(const json& j) {
  detail::expect_header(j, "cocategory");
  auto p = detail::read_cocategory_parts(j);
  return Cocategory(std::move(p.quiver), p.flavor, std::move(p.delta), std::move(p.differential));
}

// ---------------------------------------------------------------- augmented

inline json to_json(const AugmentedCocategory& a) {
  json j = detail::cocategory_fields(a.quiver, a.flavor, a.delta, a.differential, detail::header("augmented_cocategory"));
  json counit = json::array();
  json aug = json::array();
  for (std::size_t x = 0; x < a.size(); ++x) {
    const Matrix& e = a.counit_at(x, x);
    for (std::size_t i = 0; i < e.cols(); ++i) {
      if (!e(0, i).is_zero()) counit.push_back(json::array({a.quiver.object(x), i, e(0, i).to_string()}));
    }
    const Matrix& u = a.augmentation[x];
    for (std::size_t i = 0; i < u.rows(); ++i) {
      if (!u(i, 0).is_zero()) aug.push_back(json::array({a.quiver.object(x), i, u(i, 0).to_string()}));
    }
  }
  j["counit"] = std::move(counit);
  j["augmentation"] = std::move(aug);
  return j;
}

inline AugmentedCocategory augmented_from_json(const json& j) {
  detail::expect_header(j, "augmented_cocategory");
  auto p = detail::read_cocategory_parts(j);
  AugmentedCocategory a;
  const std::size_t n = p.quiver.size();
  // reuse the shape checks of an ordinary cocategory
  Cocategory check(p.quiver, p.flavor, p.delta, p.differential);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) a.counit.emplace_back(p.quiver.field(), 1, p.quiver.dim(x, y));
    a.augmentation.emplace_back(p.quiver.field(), p.quiver.dim(x, x), 1);
  }
  auto read_diag = [&](const char* key, bool is_counit) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& r : detail::array(detail::member(j, key), key)) {
      if (!r.is_array() || r.size() != 3) detail::fail(std::string(key) + " record must have 3 entries");
      std::size_t x = p.quiver.index_of(detail::text(r[0], "object"));
      std::size_t i = detail::check_range(detail::index(r[1], "index"), p.quiver.dim(x, x), key);
      if (!seen.insert({x, i}).second) detail::fail(std::string("duplicate ") + key + " record");
      Scalar s = Scalar::parse(p.quiver.field(), detail::text(r[2], "scalar"));
      if (is_counit) {
        a.counit[x * n + x](0, i) = s;
      } else {
        a.augmentation[x](i, 0) = s;
      }
    }
  };
  read_diag("counit", true);
  read_diag("augmentation", false);
  a.quiver = std::move(p.quiver);
  a.flavor = p.flavor;
  a.delta = std::move(p.delta);
  a.differential = std::move(p.differential);
  return a;
}

// ---------------------------------------------------------------- homomorphisms

namespace detail {

inline json morphism_fields(const Quiver& src, const Quiver& dst, const QuiverMorphism& m, json j) {
  json om = json::array();
  for (std::size_t x = 0; x < src.size(); ++x) om.push_back(json::array({src.object(x), dst.object(m.object_map[x])}));
  j["object_map"] = std::move(om);
  j["components"] = matrix_records(pair_keys(src), m.components);
  return j;
}

inline QuiverMorphism read_morphism(const json& j, const Quiver& src, const Quiver& dst) {
  QuiverMorphism m;
  const std::size_t n = src.size();
  std::vector<std::optional<std::size_t>> om(n);
  for (const auto& r : array(member(j, "object_map"), "object_map")) {
    if (!r.is_array() || r.size() != 2) fail("object_map record must have 2 entries");
    std::size_t x = src.index_of(text(r[0], "object"));
    if (om[x]) fail("object " + src.object(x) + " is mapped twice");
    om[x] = dst.index_of(text(r[1], "object"));
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!om[x]) fail("object " + src.object(x) + " has no image");
    m.object_map.push_back(*om[x]);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      m.components.emplace_back(src.field(), dst.dim(m.object_map[x], m.object_map[y]), src.dim(x, y));
    }
  }
  read_pair_records(member(j, "components"), src, src.field(), m.components,
                    [n](std::size_t x, std::size_t y) { return x * n + y; }, "components");
  return m;
}

}  // namespace detail

inline json to_json(const CocatHom& f, const std::string& name = "f") {
  json j = detail::header("homomorphism");
  j["name"] = name;
  j["source"] = to_json(*f.source);
  j["target"] = to_json(*f.target);
  return detail::morphism_fields(f.source->quiver(), f.target->quiver(), f.morphism, std::move(j));
}

inline CocatHom hom_from_json(const json& j) {
  detail::expect_header(j, "homomorphism");
  detail::text(detail::member(j, "name"), "name");
  auto src = share(cocategory_from_json(detail::member(j, "source")));
  auto dst = share(cocategory_from_json(detail::member(j, "target")));
  if (!(src->field() == dst->field())) throw Error(ErrorKind::FieldMismatch, "source and target use different fields");
  QuiverMorphism m = detail::read_morphism(j, src->quiver(), dst->quiver());
  return CocatHom{src, dst, std::move(m)};
}

// ---------------------------------------------------------------- results

inline json to_json(const Certificate& c) {
  json j = detail::header("certificate");
  j["operation"] = c.operation;
  j["failures"] = c.failures();
  json checks = json::array();
  for (const auto& r : c.checks) {
    json e = json::object();
    e["name"] = r.name;
    e["scope"] = r.scope;
    e["passed"] = r.passed;
    if (!r.detail.empty()) e["detail"] = r.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

/// Certificate for a plain validation run: one record per check family
/// (record name, violation name), failed ones carrying the violations.
inline Certificate validation_certificate(const std::string& operation,
                                          const std::vector<std::pair<std::string, std::string>>& families,
                                          const ValidationReport& report) {
  Certificate c;
  c.operation = operation;
  for (const auto& [name, check] : families) {
    std::string detail;
    for (const auto& v : report.violations) {
      if (v.check == check) detail += (v.where.empty() ? "" : v.where + ": ") + v.detail + "\n";
    }
    c.record(name, "", detail.empty(), detail);
  }
  for (const auto& v : report.violations) {
    bool known = std::any_of(families.begin(), families.end(), [&](const auto& f) { return f.second == v.check; });
    if (!known) c.record(v.check, v.where, false, v.detail);
  }
  return c;
}

inline json to_json(const SubcocatResult& r) {
  json j = detail::header("subcocategory");
  const Quiver& pq = r.parent->quiver();
  json s = json::array();
  for (auto o : r.objects) s.push_back(pq.object(o));
  j["objects"] = std::move(s);
  j["parent"] = to_json(*r.parent);
  j["subcocategory"] = to_json(*r.sub);
  j["inclusion"] = detail::matrix_records(detail::pair_keys(r.sub->quiver()), r.inclusion.morphism.components);
  j["retraction"] = detail::matrix_records(detail::pair_keys(r.sub->quiver()), r.retractions);
  json prof = json::array();
  const std::size_t m = r.objects.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (const auto& t : r.n_map_profile[x * m + y]) {
        json names = json::array();
        for (auto z : t) names.push_back(pq.object(z));
        prof.push_back(json::array({pq.object(r.objects[x]), pq.object(r.objects[y]), std::move(names)}));
      }
    }
  }
  j["n_map_profile"] = std::move(prof);
  return j;
}

inline json to_json(const EqualizerResult& r) {
  json j = detail::header("equalizer");
  j["f"] = to_json(r.f, "f");
  j["g"] = to_json(r.g, "g");
  const Quiver& cq = r.f.source->quiver();
  const Quiver& sq = r.sub.sub->quiver();
  json s = json::array();
  for (auto o : r.sub.objects) s.push_back(cq.object(o));
  j["objects"] = std::move(s);
  j["equalizer"] = to_json(*r.eq);
  json e = json::object();
  e = detail::morphism_fields(r.eq->quiver(), cq, r.e_hom.morphism, std::move(e));
  j["e"] = std::move(e);
  j["retraction"] = detail::matrix_records(detail::pair_keys(sq), r.retractions);
  json prof = json::array();
  const std::size_t m = sq.size();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (const auto& b : r.r_profile[x * m + y]) {
        json names = json::array();
        for (auto z : b.interior) names.push_back(sq.object(z));
        prof.push_back(json::array({sq.object(x), sq.object(y), b.p, b.q, std::move(names)}));
      }
    }
  }
  j["r_profile"] = std::move(prof);
  return j;
}

// ---------------------------------------------------------------- io

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << serialize(j);
}

inline std::string kind_of(const json& j) {
  if (!j.is_object()) detail::fail("document must be a JSON object");
  return detail::text(detail::member(j, "kind"), "kind");
}

}  // namespace cocat::doc
