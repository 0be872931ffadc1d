// zplie: command-line front end for the Z_p Lie lattice library.
#include "zpl/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace zpl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInconclusive = 3;

struct Options {
  std::string input;
  std::string endo;
  long level = 2;
  long index = 1;
  int jobs = 1;
  bool text = false;
};

const char* nf_kind(NormalForm::Kind k) {
  switch (k) {
    case NormalForm::Kind::Zero: return "zero";
    case NormalForm::Kind::Scalar: return "scalar";
    case NormalForm::Kind::Unipotent: return "unipotent";
    case NormalForm::Kind::Companion: return "companion";
  }
  return "?";
}

// Flat key: value lines for the scalar fields of a JSON object.
void print_text(const Json& j, const std::string& prefix = "") {
  for (const auto& [k, v] : j.items()) {
    std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object())
      print_text(v, key);
    else if (v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object()))
      std::cout << key << ": [" << v.size() << " entries]\n";
    else
      std::cout << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

VirtualEndo certify_any(const LieLattice& L, long k) {
  if (L.rank() == 3) {
    Recognition rec = recognize(L);
    return transport(certify(L.ctx(), rec.tag, k), L, rec.nf.basis);
  }
  auto gb = find_good_basis(L);
  if (!gb) throw Error(Err::Unsupported, "lattice has no abelian ideal of corank one");
  return transport(certify_matrix(L.ctx(), gb->A, k), L, gb->basis);
}

int run(const std::string& verb, const Options& o) {
  LieLattice L = parse_lattice_file(o.input);
  Json out;
  int code = kExitOk;
  if (verb == "classify") {
    Recognition rec = recognize(L);
    out["tag"] = to_json(rec.tag);
    out["label"] = describe(rec.tag);
    out["normal_form"] = nf_kind(rec.nf.kind);
    out["iso"] = to_json(rec.iso);
    out["iso_exact"] = rec.iso_exact;
    if (!rec.iso_exact) out["iso_precision"] = rec.precision;
    out["residually_nilpotent"] = residually_nilpotent(L.ctx(), rec.tag);
  } else if (verb == "decide") {
    Decision d = decide_ss_index_3dim(L);
    SimplicityVerdict v = simplicity(d.certificate);
    out["sigma"] = d.index_p ? "p" : "p^2";
    out["tag"] = to_json(d.tag);
    out["label"] = describe(d.tag);
    if (!d.index_p) out["obstruction"] = d.obstruction;
    out["certificate"] = to_json(d.certificate);
    out["certificate_verdict"] = to_json(v);
    if (v.status != Verdict::Simple) code = kExitInconclusive;
  } else if (verb == "certify") {
    VirtualEndo e = certify_any(L, o.index);
    SimplicityVerdict v = simplicity(e);
    out["certificate"] = to_json(e);
    out["verdict"] = to_json(v);
    if (v.status == Verdict::Inconclusive) code = kExitInconclusive;
  } else if (verb == "verify") {
    if (o.endo.empty()) throw Error(Err::Parse, "verify needs --endo FILE");
    VirtualEndo e = endo_from_json(L, read_json_file(o.endo));
    SimplicityVerdict v = simplicity(e);
    out["index_log"] = e.index_log;
    out["verdict"] = to_json(v);
    if (v.status == Verdict::Inconclusive) code = kExitInconclusive;
  } else if (verb == "hereditary") {
    Hereditary h = hereditary_3dim(L);
    out["hereditary"] = h.hereditary;
    out["tag"] = to_json(h.tag);
    if (h.witness) {
      out["witness"] = to_json(*h.witness);
      out["witness_verified"] = h.witness_verified;
    }
  } else if (verb == "shss") {
    ShssResult r = shss_classify(L);
    out["shss"] = r.shss;
    if (r.shss) out["s"] = r.s == kInf ? Json("inf") : Json(r.s);
    if (r.witness) {
      out["witness"] = to_json(*r.witness);
      out["witness_kind"] = r.witness_kind;
    }
  } else if (verb == "witness") {
    NonssWitness w = witness_nonss(L);
    out["k"] = w.k;
    out["subalgebra"] = to_json(w.M);
    Json a = Json::array(), b = Json::array();
    for (const Q& x : w.a) a.push_back(to_json(x));
    for (const Q& x : w.b) b.push_back(to_json(x));
    out["a"] = a;
    out["b"] = b;
    out["hypotheses"] = w.hypotheses;
    out["inequalities"] = w.inequalities;
  } else if (verb == "exhaust") {
    ExhaustConfig cfg;
    cfg.N = o.level;
    cfg.jobs = o.jobs;
    ExhaustReport rep = exhaust(L, cfg);
    if (L.rank() == 3 && is_solvable(L)) rep.tag = describe(recognize(L).tag);
    out = to_json(rep);
  } else if (verb == "enum") {
    std::vector<SubmoduleShape> all = enum_index_p(L);
    std::vector<SubmoduleShape> sub = subalgebra_filter(L, all);
    OracleFrame fr = oracle_frame(L);
    out["count"] = all.size();
    out["subalgebras"] = sub.size();
    Json shapes = Json::array();
    for (const SubmoduleShape& s : all) {
      Json j = to_json(s);
      j["subalgebra"] = std::find(sub.begin(), sub.end(), s) != sub.end();
      j["module"] = to_json(shape_module(L, fr, s));
      shapes.push_back(j);
    }
    out["shapes"] = shapes;
  }
  if (o.text)
    print_text(out);
  else
    std::cout << out.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similarity tools for Z_p Lie lattices"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("JOBS")) o.jobs = std::max(1, std::atoi(env));

  struct VerbSpec {
    const char* name;
    const char* help;
  };
  const VerbSpec verbs[] = {
      {"classify", "recognize the family tag of a rank-3 lattice"},
      {"decide", "decide self-similarity of index p for a rank-3 lattice"},
      {"certify", "emit an explicit simple virtual endomorphism of index p^k"},
      {"verify", "check a virtual endomorphism file and test simplicity"},
      {"hereditary", "hereditary self-similarity of index p for a rank-3 lattice"},
      {"shss", "strong hereditary self-similarity"},
      {"witness", "subalgebra that is not self-similar of index p"},
      {"exhaust", "brute-force homomorphism congruences mod p^N"},
      {"enum", "list index-p submodules"},
  };
  for (const VerbSpec& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("input", o.input, "lattice JSON file")->required();
    sub->add_flag("--text", o.text, "human-readable summary instead of JSON");
    sub->add_flag("--json", [&o](int64_t) { o.text = false; }, "JSON output (default)");
    if (std::string(v.name) == "exhaust") {
      sub->add_option("--level", o.level, "level N")->check(CLI::Range(1, 6));
      sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    }
    if (std::string(v.name) == "certify") sub->add_option("--index", o.index, "exponent k")->check(CLI::Range(1, 16));
    if (std::string(v.name) == "verify") sub->add_option("--endo", o.endo, "endomorphism JSON file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }
  std::string verb = app.get_subcommands().front()->get_name();
  try {
    return run(verb, o);
  } catch (const Error& e) {
    Json err;
    err["error"] = err_name(e.code);
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return kExitInvalid;
  }
}
