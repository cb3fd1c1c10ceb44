#include <gtest/gtest.h>

#include <algorithm>

#include "cocat/document.hpp"
#include "cocat/equalizer.hpp"
#include "support.hpp"

using namespace cocat;
using namespace cocat::testing;
using doc::json;

namespace {

ErrorKind error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalInvariantViolation;
}

std::string roundtrip(const Cocategory& c) {
  std::string text = doc::serialize(doc::to_json(c));
  Cocategory back = doc::cocategory_from_json(doc::parse(text));
  EXPECT_EQ(back, c);
  return doc::serialize(doc::to_json(back)) == text ? "" : text;
}

}  // namespace

TEST(Document, CocategoryRoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Flavor fl : {Flavor::Plain, Flavor::Graded, Flavor::DG}) {
      Field field = seed % 2 ? Field::prime(5) : Field::rationals();
      EXPECT_EQ(roundtrip(gen_cocategory(config(seed, fl, field))), "") << "seed " << seed;
    }
  }
  EXPECT_EQ(roundtrip(grouplike()), "");
}

TEST(Document, HandWrittenShape) {
  json j = doc::to_json(*loop_tensor(2));
  EXPECT_EQ(j["kind"], "cocategory");
  EXPECT_EQ(j["format_version"], "1");
  EXPECT_EQ(j["field"], "Q");
  EXPECT_EQ(j["flavor"], "plain");
  EXPECT_EQ(j["delta"], json::parse(R"([["O","O","O",1,0,0,"1"]])"));
  EXPECT_EQ(j["homs"], json::parse(R"([{"labels":["x","x⊗x"],"source":"O","target":"O"}])"));
}

TEST(Document, Canonicalization) {
  std::uint64_t seed = 0;
  while (gen_cocategory(config(seed)).quiver().total_dim() < 4 ||
         doc::to_json(gen_cocategory(config(seed)))["delta"].size() < 2) {
    ++seed;
  }
  json j = doc::to_json(gen_cocategory(config(seed)));
  json shuffled = j;
  std::reverse(shuffled["delta"].begin(), shuffled["delta"].end());
  // non-canonical scalar spelling of the same value
  std::string s = shuffled["delta"][0][6];
  shuffled["delta"][0][6] = s.find('/') == std::string::npos ? s + "/1" : s;
  Cocategory c = doc::cocategory_from_json(shuffled);
  EXPECT_EQ(doc::serialize(doc::to_json(c)), doc::serialize(j));

  json scaled = doc::to_json(*loop_tensor(2));
  scaled["delta"][0][6] = "2/2";
  EXPECT_EQ(doc::serialize(doc::to_json(doc::cocategory_from_json(scaled))), doc::serialize(doc::to_json(*loop_tensor(2))));
}

TEST(Document, MalformedInput) {
  json good = doc::to_json(*loop_tensor(2));
  EXPECT_EQ(error_of([] { doc::parse("{not json"); }), ErrorKind::ParseError);
  {
    json j = good;
    j.erase("delta");
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ParseError);
  }
  {
    json j = good;
    j["format_version"] = "2";
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ParseError);
  }
  {
    json j = good;
    j["kind"] = "quiver";
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ParseError);
  }
  {
    json j = good;
    j["delta"].push_back(j["delta"][0]);
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ParseError);
  }
  {
    json j = good;
    j["delta"][0][0] = "P";
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::UnknownObject);
  }
  {
    json j = good;
    j["delta"][0][3] = 7;
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ShapeMismatch);
  }
  {
    json j = good;
    j["delta"][0][6] = "one";
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ParseError);
  }
  {
    json j = good;
    j["objects"] = json::array({"O", "O"});
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::DuplicateObjects);
  }
  {
    json j = good;
    j["field"] = "F4";
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::NotPrime);
  }
  {
    json j = good;
    j["homs"][0]["degrees"] = json::array({0, 0});
    EXPECT_EQ(error_of([&] { doc::cocategory_from_json(j); }), ErrorKind::ShapeMismatch);
  }
}

TEST(Document, QuiverWithDifferential) {
  doc::QuiverDocument q = doc::quiver_from_json(doc::read_file(fixture("two_term.json")));
  EXPECT_EQ(q.quiver, two_term_quiver());
  ASSERT_TRUE(q.differential.has_value());
  EXPECT_EQ(*q.differential, two_term_differential());
  EXPECT_EQ(doc::serialize(doc::quiver_to_json(q.quiver, q.differential)),
            doc::serialize(doc::read_file(fixture("two_term.json"))));
}

TEST(Document, HomomorphismRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CorpusInstance inst = gen_instance(config(seed, Flavor::DG));
    HomPair p = gen_hom_pair(inst, config(seed, Flavor::DG));
    std::string text = doc::serialize(doc::to_json(p.g, "g"));
    CocatHom back = doc::hom_from_json(doc::parse(text));
    EXPECT_EQ(*back.source, *p.g.source);
    EXPECT_EQ(*back.target, *p.g.target);
    EXPECT_FALSE(morphism_difference(back, p.g).has_value());
    EXPECT_EQ(doc::serialize(doc::to_json(back, "g")), text);
  }
}

TEST(Document, HomomorphismErrors) {
  json j = doc::read_file(fixture("mu_g.json"));
  {
    json k = j;
    k["object_map"] = json::array();
    EXPECT_EQ(error_of([&] { doc::hom_from_json(k); }), ErrorKind::ParseError);
  }
  {
    json k = j;
    k["target"]["field"] = "F5";
    EXPECT_EQ(error_of([&] { doc::hom_from_json(k); }), ErrorKind::FieldMismatch);
  }
  {
    json k = j;
    k["components"].push_back(json::array({"O", "O", 2, 0, "1"}));
    EXPECT_EQ(error_of([&] { doc::hom_from_json(k); }), ErrorKind::ShapeMismatch);
  }
}

TEST(Document, AugmentedRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    AugmentedCocategory a = augment(gen_cocategory(config(seed, Flavor::DG)));
    std::string text = doc::serialize(doc::to_json(a));
    AugmentedCocategory back = doc::augmented_from_json(doc::parse(text));
    EXPECT_EQ(doc::serialize(doc::to_json(back)), text);
    EXPECT_TRUE(validate_augmented(back).ok());
  }
}

TEST(Document, EqualizerAndCertificate) {
  CocatHom f = doc::hom_from_json(doc::read_file(fixture("mu_f.json")));
  CocatHom g = doc::hom_from_json(doc::read_file(fixture("mu_g.json")));
  EqualizerResult r = equalize(f, g);
  json j = doc::to_json(r);
  EXPECT_EQ(j["kind"], "equalizer");
  EXPECT_EQ(j["objects"], json::array({"O"}));
  EXPECT_EQ(j["e"]["components"], json::parse(R"([["O","O",0,0,"1"]])"));
  EXPECT_EQ(j["equalizer"]["delta"], json::array());
  json cert = doc::to_json(r.certificate);
  EXPECT_EQ(cert["failures"], 0);
  EXPECT_EQ(cert["operation"], "equalize");
  std::vector<std::string> names;
  for (const auto& c : cert["checks"]) names.push_back(c["name"]);
  for (const char* want : {"equalizes", "kernel_law", "equalizer_valid", "embedding_is_homomorphism",
                           "subcocategory.inclusion_is_homomorphism"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}
