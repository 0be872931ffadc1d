#include "zpl/json_io.hpp"

#include <fstream>
#include <sstream>

namespace zpl {

Json to_json(const Q& x) { return to_string(x); }

Q scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Q(Z(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  throw Error(Err::MalformedScalar, "scalar must be a string or an integer, got " + j.dump());
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (int c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < m.rows(); ++r) col.push_back(to_json(m(r, c)));
    out.push_back(col);
  }
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Err::MalformedMatrix, "matrix must be an array of columns");
  std::vector<Vec> cols;
  for (const Json& c : j) {
    if (!c.is_array()) throw Error(Err::MalformedMatrix, "matrix column must be an array");
    Vec v;
    for (const Json& x : c) v.push_back(scalar_from_json(x));
    if (!cols.empty() && v.size() != cols[0].size()) throw Error(Err::MalformedMatrix, "ragged matrix columns");
    cols.push_back(v);
  }
  if (cols.empty()) return Mat();
  return Mat::from_cols(cols);
}

Json to_json(const Submodule& M) {
  Json out;
  out["ambient"] = M.ambient();
  out["rank"] = M.rank();
  out["gens"] = to_json(M.gens());
  return out;
}

Json to_json(const LieLattice& L) {
  Json out;
  out["p"] = L.ctx().p();
  out["rank"] = L.rank();
  Json br = Json::object();
  const int n = L.rank();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Json terms = Json::array();
      for (int k = 0; k < n; ++k)
        if (L.c(i, j, k) != 0) terms.push_back(Json::array({k, to_json(L.c(i, j, k))}));
      if (!terms.empty()) br[std::to_string(i) + "," + std::to_string(j)] = terms;
    }
  out["brackets"] = br;
  return out;
}

namespace {

long get_long(const Json& j, const char* key, long def) {
  if (!j.contains(key)) return def;
  if (!j[key].is_number_integer()) throw Error(Err::Parse, std::string("field '") + key + "' must be an integer");
  return j[key].get<long>();
}

std::pair<int, int> parse_key(const std::string& key) {
  size_t comma = key.find(',');
  if (comma == std::string::npos) throw Error(Err::Parse, "bracket key '" + key + "' is not 'i,j'");
  try {
    size_t a = 0, b = 0;
    int i = std::stoi(key.substr(0, comma), &a);
    int j = std::stoi(key.substr(comma + 1), &b);
    if (a != comma || b != key.size() - comma - 1) throw std::invalid_argument(key);
    return {i, j};
  } catch (const std::logic_error&) {
    throw Error(Err::Parse, "bracket key '" + key + "' is not 'i,j'");
  }
}

}  // namespace

LieLattice lattice_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Err::Parse, "lattice must be a JSON object");
  long p = get_long(j, "p", -1);
  long n = get_long(j, "rank", -1);
  if (p < 0) throw Error(Err::Parse, "lattice needs integer field 'p'");
  if (n < 0) throw Error(Err::Parse, "lattice needs integer field 'rank'");
  PContext ctx(p);
  ScBuilder sb(static_cast<int>(n));
  if (j.contains("brackets")) {
    if (!j["brackets"].is_object()) throw Error(Err::Parse, "'brackets' must be an object");
    for (const auto& [key, terms] : j["brackets"].items()) {
      auto [a, b] = parse_key(key);
      if (a < 0 || b < 0 || a >= n || b >= n) throw Error(Err::RankMismatch, "bracket key '" + key + "' out of range");
      if (a >= b)
        throw Error(Err::Antisymmetry, "bracket key '" + key + "' must list i < j; [x_j,x_i] follows by antisymmetry");
      Vec v(n);
      if (!terms.is_array()) throw Error(Err::Parse, "bracket '" + key + "' must be an array of [k, scalar]");
      for (const Json& t : terms) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
          throw Error(Err::Parse, "bracket '" + key + "' term must be [k, scalar]");
        long k = t[0].get<long>();
        if (k < 0 || k >= n) throw Error(Err::RankMismatch, "bracket '" + key + "' names basis index out of range");
        v[k] += scalar_from_json(t[1]);
      }
      sb.set(a, b, v);
    }
  }
  return LieLattice(ctx, static_cast<int>(n), sb.take());
}

Json to_json(const FamilyTag& t) {
  Json out;
  out["family"] = family_name(t.family);
  switch (t.family) {
    case Family::L0: break;
    case Family::L1:
    case Family::L3: out["s"] = t.s; break;
    case Family::L2:
    case Family::L5:
      out["s"] = t.s;
      out["r"] = t.r;
      out["c"] = to_json(t.c);
      break;
    case Family::L4:
      out["s"] = t.s;
      out["t"] = t.t;
      out["eps"] = t.eps;
      break;
    case Family::L6: out["a"] = to_json(t.a); break;
    case Family::L7:
      out["s"] = t.s;
      out["a"] = to_json(t.a);
      out["c"] = to_json(t.c);
      break;
    case Family::Ld:
      out["d"] = t.d;
      out["a"] = to_json(t.a);
      break;
    case Family::Lab: {
      Json a = Json::array(), b = Json::array();
      for (const Q& x : t.avec) a.push_back(to_json(x));
      for (const Q& x : t.bvec) b.push_back(to_json(x));
      out["a"] = a;
      out["b"] = b;
      break;
    }
  }
  return out;
}

FamilyTag tag_from_json(const PContext& ctx, const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw Error(Err::Parse, "tag needs string field 'family'");
  FamilyTag t;
  t.family = parse_family(j["family"].get<std::string>());
  t.s = get_long(j, "s", 0);
  t.r = get_long(j, "r", 0);
  t.t = get_long(j, "t", 0);
  t.eps = static_cast<int>(get_long(j, "eps", 0));
  t.d = static_cast<int>(get_long(j, "d", 0));
  if (j.contains("c")) t.c = scalar_from_json(j["c"]);
  if (t.family == Family::Lab) {
    if (!j.contains("a") || !j["a"].is_array() || !j.contains("b") || !j["b"].is_array())
      throw Error(Err::Parse, "family L(a,b) needs arrays 'a' and 'b'");
    for (const Json& x : j["a"]) t.avec.push_back(scalar_from_json(x));
    for (const Json& x : j["b"]) t.bvec.push_back(scalar_from_json(x));
  } else if (j.contains("a")) {
    t.a = scalar_from_json(j["a"]);
  }
  family_matrix(ctx, t);  // validates parameters
  return t;
}

Json to_json(const GoodBasis& gb) {
  Json out;
  out["basis"] = to_json(gb.basis);
  out["A"] = to_json(gb.A);
  return out;
}

Json to_json(const VirtualEndo& e) {
  Json out;
  out["U"] = to_json(e.U);
  out["F"] = to_json(e.F);
  out["index_log"] = e.index_log;
  return out;
}

VirtualEndo endo_from_json(const LieLattice& L, const Json& j) {
  if (!j.is_object() || !j.contains("U") || !j.contains("F")) throw Error(Err::Parse, "endo needs fields 'U' and 'F'");
  return make_endo(L, matrix_from_json(j["U"]), matrix_from_json(j["F"]));
}

Json to_json(const SimplicityVerdict& v) {
  Json out;
  out["status"] = verdict_name(v.status);
  out["strategy"] = v.strategy;
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (!v.reason.empty()) out["reason"] = v.reason;
  out["fixpoint_steps"] = v.fixpoint_steps;
  return out;
}

Json to_json(const SubmoduleShape& s) {
  Json out;
  out["label"] = s.label();
  const char* kind = s.kind == SubmoduleShape::Kind::TopScaled   ? "TopScaled"
                     : s.kind == SubmoduleShape::Kind::MidScaled ? "MidScaled"
                                                                 : "Mixed";
  out["kind"] = kind;
  if (s.kind != SubmoduleShape::Kind::TopScaled) out["i0"] = s.i0;
  if (s.kind == SubmoduleShape::Kind::Mixed) out["k0"] = s.k0;
  if (!s.f.empty()) out["f"] = s.f;
  return out;
}

namespace {

Json sample_json(const UncoveredSample& s) {
  Json out;
  out["top_row"] = s.top_row;
  out["F"] = to_json(s.F);
  out["score"] = s.score;
  out["exact"] = s.exact;
  return out;
}

}  // namespace

Json to_json(const ExhaustReport& r) {
  Json out;
  out["p"] = r.p;
  out["level"] = r.N;
  out["tag"] = r.tag;
  out["shapes"] = r.shapes;
  out["subalgebras"] = r.subalgebras;
  out["candidates"] = r.candidates;
  out["covered"] = r.covered;
  out["complete"] = r.complete;
  std::ostringstream summary;
  if (r.covered)
    summary << "every solution mod p^" << r.N << " stabilizes a candidate ideal; corroborates index-p non-self-similarity at level "
            << r.N;
  else if (r.lift.simple_lift_found)
    summary << "an uncovered solution mod p^" << r.N << " lifts to a simple virtual endomorphism of index p";
  else
    summary << "uncovered solutions mod p^" << r.N << " remain and none was lifted to a simple endomorphism";
  out["summary"] = summary.str();
  Json recs = Json::array();
  for (const ExhaustRecord& rec : r.records) {
    Json j;
    j["shape"] = to_json(rec.shape);
    j["f00"] = rec.f00;
    j["rows"] = rec.rows;
    j["orders"] = rec.orders;
    j["elements"] = rec.elements;
    j["covered"] = rec.covered;
    j["complete"] = rec.complete;
    if (!rec.uncovered.empty()) {
      Json us = Json::array();
      for (const UncoveredSample& s : rec.uncovered) us.push_back(sample_json(s));
      j["uncovered"] = us;
    }
    recs.push_back(j);
  }
  out["records"] = recs;
  Json lift;
  lift["attempted"] = r.lift.attempted;
  lift["simple_lift_found"] = r.lift.simple_lift_found;
  lift["tried"] = r.lift.tried;
  if (r.lift.endo) {
    lift["shape"] = to_json(r.lift.shape);
    lift["f00"] = r.lift.f00;
    lift["sample"] = sample_json(r.lift.sample);
    lift["endo"] = to_json(*r.lift.endo);
    lift["verdict"] = to_json(r.lift.verdict);
  }
  out["lift"] = lift;
  return out;
}

LieLattice lattice_from_any(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    long p = get_long(j, "p", -1);
    if (p < 0) throw Error(Err::Parse, "family shorthand needs integer field 'p'");
    PContext ctx(p);
    return construct(ctx, tag_from_json(ctx, j));
  }
  return lattice_from_json(j);
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t pos = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    long line = 1, col = 1;
    for (size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Err::Parse, "JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

LieLattice parse_lattice_file(const std::string& path) { return lattice_from_any(read_json_file(path)); }

}  // namespace zpl
