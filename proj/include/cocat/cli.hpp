#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cocat/constructions.hpp"
#include "cocat/corpus.hpp"
#include "cocat/document.hpp"
#include "cocat/equalizer.hpp"
#include "cocat/oracle.hpp"
#include "cocat/subcocat.hpp"

namespace cocat::cli {

using doc::json;

enum ExitCode : int { kOk = 0, kMalformed = 1, kFailed = 2 };

/// Errors that mean "the file is garbage" rather than "the input violates
/// an axiom".
inline bool is_malformed(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::DuplicateObjects:
    case ErrorKind::UnknownObject:
    case ErrorKind::FieldMismatch:
    case ErrorKind::ObjectSetMismatch:
    case ErrorKind::NotPrime:
    case ErrorKind::DivisionByZero:
      return true;
    default:
      return false;
  }
}

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::string certificate;
  std::string objects;
  std::string field = "Q";
  std::string flavor = "plain";
  std::uint64_t seed = 0;
  std::size_t length = 2;
  std::string pair_dir;
  bool no_transport = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int validate(const Options& o) {
    json j = doc::read_file(o.inputs.at(0));
    const std::string kind = doc::kind_of(j);
    ValidationReport report;
    std::vector<std::pair<std::string, std::string>> families;
    if (kind == "cocategory") {
      report = validate_cocategory(doc::cocategory_from_json(j));
      families = cocategory_families();
    } else if (kind == "homomorphism") {
      CocatHom f = doc::hom_from_json(j);
      report.merge(validate_cocategory(*f.source));
      report.merge(validate_cocategory(*f.target));
      report.merge(check_hom(f));
      families = cocategory_families();
      for (const char* c : {"hom_degree_zero", "hom_comultiplication", "hom_chain_map"}) families.push_back({c, c});
    } else if (kind == "augmented_cocategory") {
      report = validate_augmented(doc::augmented_from_json(j));
      for (const char* c : {"coassociativity", "counit_off_diagonal", "counit_degree_zero", "left_counit", "right_counit",
                            "counit_augmentation", "augmentation_grouplike", "augmentation_degree_zero",
                            "differential_squares_to_zero", "counit_chain_map", "delta_chain_map",
                            "augmentation_chain_map"}) {
        families.push_back({c, c});
      }
    } else if (kind == "quiver") {
      auto q = doc::quiver_from_json(j);
      if (q.differential) {
        // generator differentials must square to zero and raise degree by one
        Cocategory c = tensor_cocategory(q.quiver, 1, q.differential);
        report = validate_cocategory(c);
      }
      families = cocategory_families();
    } else {
      throw Error(ErrorKind::ParseError, "cannot validate documents of kind '" + kind + "'");
    }
    Certificate cert = doc::validation_certificate("validate", families, report);
    write_certificate(o, cert);
    if (!report.ok()) {
      err_ << report.to_string();
      return kFailed;
    }
    out_ << "valid " << kind << "\n";
    return kOk;
  }

  int tensor_build(const Options& o) {
    auto q = doc::quiver_from_json(doc::read_file(o.inputs.at(0)));
    Cocategory c = tensor_cocategory(q.quiver, o.length, q.differential);
    return finish(o, doc::to_json(c), certify("tensor-build", c));
  }

  int augment_verb(const Options& o) {
    Cocategory c = doc::cocategory_from_json(doc::read_file(o.inputs.at(0)));
    require_valid(c);
    AugmentedCocategory a = augment(c);
    ValidationReport r = validate_augmented(a);
    Certificate cert = doc::validation_certificate("augment", {{"augmented_valid", "coassociativity"}}, r);
    return finish(o, doc::to_json(a), cert);
  }

  int reduce_verb(const Options& o) {
    AugmentedCocategory a = doc::augmented_from_json(doc::read_file(o.inputs.at(0)));
    Cocategory c = reduce(a);
    return finish(o, doc::to_json(c), certify("reduce", c));
  }

  int subcocat(const Options& o) {
    auto c = share(doc::cocategory_from_json(doc::read_file(o.inputs.at(0))));
    require_valid(*c);
    SubcocatResult r = subcocategory(c, split_objects(o.objects));
    return finish(o, doc::to_json(r), r.certificate);
  }

  int equalize_verb(const Options& o) {
    CocatHom f = doc::hom_from_json(doc::read_file(o.inputs.at(0)));
    CocatHom g = doc::hom_from_json(doc::read_file(o.inputs.at(1)));
    require_valid(f);
    require_valid(g);
    EqualizerResult r = equalize(f, g);
    return finish(o, doc::to_json(r), r.certificate);
  }

  int factor(const Options& o) {
    CocatHom h = doc::hom_from_json(doc::read_file(o.inputs.at(0)));
    json stored = doc::read_file(o.inputs.at(1));
    if (doc::kind_of(stored) != "equalizer") throw Error(ErrorKind::ParseError, "second input must be an equalizer document");
    CocatHom f = doc::hom_from_json(doc::detail::member(stored, "f"));
    CocatHom g = doc::hom_from_json(doc::detail::member(stored, "g"));
    require_valid(h);
    EqualizerResult r = equalize(f, g);
    if (doc::to_json(r) != stored) {
      throw Error(ErrorKind::ParseError, "equalizer document does not match the recomputed equalizer of its f and g");
    }
    CocatHom j = factor_through_equalizer(h, r);
    Certificate cert;
    cert.operation = "factor";
    cert.record("factor_is_homomorphism", "", check_hom(j));
    auto diff = morphism_difference(compose(r.e_hom, j), h);
    cert.record("factorization", "", !diff, diff.value_or(""));
    return finish(o, doc::to_json(j, "j"), cert);
  }

  int gen(const Options& o) {
    GenConfig cfg;
    cfg.seed = o.seed;
    cfg.field = Field::parse(o.field);
    cfg.flavor = parse_flavor(o.flavor);
    cfg.transport = !o.no_transport;
    CorpusInstance inst = gen_instance(cfg);
    if (!o.pair_dir.empty()) {
      HomPair p = gen_hom_pair(inst, cfg, 1);
      std::filesystem::create_directories(o.pair_dir);
      doc::write_file(o.pair_dir + "/f.json", doc::to_json(p.f, "f"));
      doc::write_file(o.pair_dir + "/g.json", doc::to_json(p.g, "g"));
    }
    return finish(o, doc::to_json(*inst.cocat), certify("gen", *inst.cocat));
  }

  int oracle_verb(const Options& o) {
    CocatHom f = doc::hom_from_json(doc::read_file(o.inputs.at(0)));
    CocatHom g = doc::hom_from_json(doc::read_file(o.inputs.at(1)));
    require_valid(f);
    require_valid(g);
    EqualizerResult r = equalize(f, g);
    CocatHom fs = compose(f, r.sub.inclusion);
    CocatHom gs = compose(g, r.sub.inclusion);
    const Cocategory& cs = *r.sub.sub;
    Certificate cert;
    cert.operation = "oracle";
    json report = doc::detail::header("oracle_report");
    json pairs = json::array();
    for (std::size_t x = 0; x < cs.size(); ++x) {
      for (std::size_t y = 0; y < cs.size(); ++y) {
        Matrix basis = oracle::brute_force_equalizer(fs, gs, x, y);
        bool same = same_column_span(basis, r.e_local.component(x, y));
        std::string scope = "(" + cs.obj(x) + "," + cs.obj(y) + ")";
        cert.record("oracle_agreement", scope, same);
        json e = json::object();
        e["source"] = cs.obj(x);
        e["target"] = cs.obj(y);
        e["dimension"] = basis.cols();
        e["agrees"] = same;
        pairs.push_back(std::move(e));
      }
    }
    report["pairs"] = std::move(pairs);
    return finish(o, report, cert);
  }

 private:
  static std::vector<std::pair<std::string, std::string>> cocategory_families() {
    return {{"delta_degree_zero", "delta_degree_zero"},
            {"coassociativity", "coassociativity"},
            {"differential_degree_one", "differential_degree_one"},
            {"differential_squares_to_zero", "differential_squares_to_zero"},
            {"delta_chain_map", "delta_chain_map"},
            {"conilpotency", "NotConilpotent"}};
  }

  Certificate certify(const std::string& op, const Cocategory& c) {
    return doc::validation_certificate(op, cocategory_families(), validate_cocategory(c));
  }

  void require_valid(const Cocategory& c) {
    ValidationReport r = validate_cocategory(c);
    if (!r.ok()) throw Error(ErrorKind::InternalInvariantViolation, "input cocategory is invalid:\n" + r.to_string());
  }

  void require_valid(const CocatHom& f) {
    ValidationReport r = validate_cocategory(*f.source);
    r.merge(validate_cocategory(*f.target));
    r.merge(check_hom(f));
    if (!r.ok()) throw Error(ErrorKind::InternalInvariantViolation, "input homomorphism is invalid:\n" + r.to_string());
  }

  static std::vector<std::string> split_objects(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  void write_certificate(const Options& o, const Certificate& cert) {
    if (!o.certificate.empty()) doc::write_file(o.certificate, doc::to_json(cert));
  }

  int finish(const Options& o, const json& result, const Certificate& cert) {
    write_certificate(o, cert);
    if (o.out.empty()) {
      out_ << doc::serialize(result);
    } else {
      doc::write_file(o.out, result);
    }
    if (cert.failures() != 0) {
      err_ << cert.failure_text();
      return kFailed;
    }
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
};

/// Parses argv and runs one verb. Exit codes: 0 success, 1 malformed input,
/// 2 validation or axiom failure.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact computations with cocomplete cocategories"};
  app.require_subcommand(1);
  Options o;

  auto out_flags = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Write the result document here instead of standard output");
    s->add_option("--certificate", o.certificate, "Write the verification certificate here");
  };
  auto* validate = app.add_subcommand("validate", "Check the axioms of a document");
  validate->add_option("file", o.inputs)->required()->expected(1);
  validate->add_option("--certificate", o.certificate, "Write a machine-readable report here");

  auto* tensor = app.add_subcommand("tensor-build", "Truncated tensor cocategory of a quiver");
  tensor->add_option("quiver", o.inputs)->required()->expected(1);
  tensor->add_option("--length", o.length, "Maximal word length")->check(CLI::PositiveNumber);
  out_flags(tensor);

  auto* aug = app.add_subcommand("augment", "Adjoin counit and augmentation");
  aug->add_option("file", o.inputs)->required()->expected(1);
  out_flags(aug);

  auto* red = app.add_subcommand("reduce", "Kernel of the counit of an augmented cocategory");
  red->add_option("file", o.inputs)->required()->expected(1);
  out_flags(red);

  auto* sub = app.add_subcommand("subcocat", "Maximal subcocategory on a set of objects");
  sub->add_option("file", o.inputs)->required()->expected(1);
  sub->add_option("--objects", o.objects, "Comma-separated object names")->required();
  out_flags(sub);

  auto* eq = app.add_subcommand("equalize", "Equalizer of two homomorphisms");
  eq->add_option("homs", o.inputs)->required()->expected(2);
  out_flags(eq);

  auto* fac = app.add_subcommand("factor", "Factor an equalizing homomorphism through an equalizer");
  fac->add_option("inputs", o.inputs, "h.json eq.json")->required()->expected(2);
  out_flags(fac);

  auto* gen = app.add_subcommand("gen", "Generate a random cocategory");
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--field", o.field, "Q or F<p>");
  gen->add_option("--flavor", o.flavor, "plain, graded or dg");
  gen->add_option("--pair", o.pair_dir, "Also write a homomorphism pair f.json, g.json into this directory");
  gen->add_flag("--no-transport", o.no_transport, "Keep the word basis");
  out_flags(gen);

  auto* orc = app.add_subcommand("oracle", "Compare the equalizer with a brute-force computation");
  orc->add_option("homs", o.inputs)->required()->expected(2);
  out_flags(orc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kMalformed;
  }

  Runner r(out, err);
  try {
    if (*validate) return r.validate(o);
    if (*tensor) return r.tensor_build(o);
    if (*aug) return r.augment_verb(o);
    if (*red) return r.reduce_verb(o);
    if (*sub) return r.subcocat(o);
    if (*eq) return r.equalize_verb(o);
    if (*fac) return r.factor(o);
    if (*gen) return r.gen(o);
    if (*orc) return r.oracle_verb(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (!e.witness().empty()) err << "witness: " << e.witness() << "\n";
    if (!o.certificate.empty()) {
      Certificate cert;
      cert.operation = "error";
      cert.record(kind_name(e.kind()), e.witness(), false, e.what());
      doc::write_file(o.certificate, doc::to_json(cert));
    }
    return is_malformed(e.kind()) ? kMalformed : kFailed;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace cocat::cli
