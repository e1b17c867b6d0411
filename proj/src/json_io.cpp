#include "holant/json_io.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#include "holant/error.hpp"

namespace holant {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& path, const std::string& name) {
  return path + "." + name;
}

const Json& expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const Json& expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

// Unknown fields are schema violations: silently ignoring them would let a
// misspelled optional field change meaning without a diagnostic.
void check_fields(const Json& j, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(field(path, it.key()), "unknown field");
  }
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(field(path, key), "missing required field");
  return *it;
}

long expect_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string expect_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

mpq_class rational_from_json(const Json& j, const std::string& path) {
  std::string text = expect_string(j, path);
  try {
    return ExactScalar::from_rational_string(text).re();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(expect_int(j[i], item(path, i))));
  }
  return out;
}

}  // namespace

Json scalar_to_json(const ExactScalar& x) {
  if (x.is_real()) return rational_str(x.re());
  Json j = Json::object();
  j["re"] = rational_str(x.re());
  j["im"] = rational_str(x.im());
  return j;
}

ExactScalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return ExactScalar(rational_from_json(j, path));
  if (j.is_object()) {
    check_fields(j, path, {"re", "im"});
    mpq_class re = rational_from_json(require(j, "re", path), field(path, "re"));
    mpq_class im = rational_from_json(require(j, "im", path), field(path, "im"));
    return ExactScalar(re, im);
  }
  // Numeric literals are rejected even when integral: the scalar grammar is
  // strings only, so no JSON library can sneak a float reading in.
  fail(path, "expected a rational string \"p/q\" or {re, im}");
}

Json signature_to_json(const Signature& s) {
  Json table = Json::array();
  for (const ExactScalar& v : s.table()) table.push_back(scalar_to_json(v));
  Json tail = Json::object();
  switch (s.tail_kind()) {
    case TailKind::Zero:
      tail["kind"] = "zero";
      break;
    case TailKind::Geometric:
      tail["kind"] = "geometric";
      tail["ratio"] = scalar_to_json(s.tail_ratio());
      break;
    case TailKind::Periodic:
      tail["kind"] = "periodic";
      tail["period"] = s.tail_period();
      break;
  }
  Json j = Json::object();
  j["table"] = table;
  j["tail"] = tail;
  return j;
}

Signature signature_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  check_fields(j, path, {"table", "tail"});
  const Json& jt = require(j, "table", path);
  expect_array(jt, field(path, "table"));
  if (jt.empty()) fail(field(path, "table"), "table must hold at least s(0)");
  std::vector<ExactScalar> table;
  table.reserve(jt.size());
  for (std::size_t i = 0; i < jt.size(); ++i) {
    table.push_back(scalar_from_json(jt[i], item(field(path, "table"), i)));
  }
  const Json& tail = require(j, "tail", path);
  const std::string tail_path = field(path, "tail");
  expect_object(tail, tail_path);
  std::string kind = expect_string(require(tail, "kind", tail_path), field(tail_path, "kind"));
  if (kind == "zero") {
    check_fields(tail, tail_path, {"kind"});
    return Signature::zero_tail(std::move(table));
  }
  if (kind == "geometric") {
    check_fields(tail, tail_path, {"kind", "ratio"});
    ExactScalar ratio =
        scalar_from_json(require(tail, "ratio", tail_path), field(tail_path, "ratio"));
    return Signature::geometric_tail(std::move(table), ratio);
  }
  if (kind == "periodic") {
    check_fields(tail, tail_path, {"kind", "period"});
    long period = expect_int(require(tail, "period", tail_path), field(tail_path, "period"));
    if (period < 1 || period > static_cast<long>(table.size())) {
      fail(field(tail_path, "period"), "period must be between 1 and the table length");
    }
    return Signature::periodic_tail(std::move(table), static_cast<int>(period));
  }
  fail(field(tail_path, "kind"), "expected \"zero\", \"geometric\", or \"periodic\"");
}

Json hypergraph_to_json(const Hypergraph& g) {
  Json j = Json::object();
  j["n"] = g.n();
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(e);
  j["edges"] = edges;
  j["mult"] = g.mult();
  if (g.has_colours()) j["colours"] = g.colours();
  return j;
}

Hypergraph hypergraph_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  check_fields(j, path, {"n", "edges", "mult", "colours"});
  long n = expect_int(require(j, "n", path), field(path, "n"));
  if (n < 0) fail(field(path, "n"), "vertex count must be non-negative");
  const Json& je = require(j, "edges", path);
  expect_array(je, field(path, "edges"));
  const Json* jm = j.contains("mult") ? &j["mult"] : nullptr;
  if (jm != nullptr) {
    expect_array(*jm, field(path, "mult"));
    if (jm->size() != je.size()) {
      fail(field(path, "mult"), "mult list must align with the edge list");
    }
  }
  Hypergraph g(static_cast<int>(n));
  try {
    for (std::size_t i = 0; i < je.size(); ++i) {
      std::vector<int> verts = int_list(je[i], item(field(path, "edges"), i));
      long mult = 1;
      if (jm != nullptr) {
        mult = expect_int((*jm)[i], item(field(path, "mult"), i));
      }
      g.add_edge(verts, mult);
    }
    if (j.contains("colours")) {
      g.set_colours(int_list(j["colours"], field(path, "colours")));
    }
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  return g;
}

Json grid_to_json(const SignatureGrid& grid) {
  Json j = Json::object();
  j["graph"] = hypergraph_to_json(grid.graph);
  Json sigs = Json::array();
  for (const Signature& s : grid.assignment) sigs.push_back(signature_to_json(s));
  j["signatures"] = sigs;
  return j;
}

SignatureGrid grid_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  check_fields(j, path, {"graph", "signatures"});
  Hypergraph g = hypergraph_from_json(require(j, "graph", path), field(path, "graph"));
  const Json& js = require(j, "signatures", path);
  expect_array(js, field(path, "signatures"));
  std::vector<Signature> assignment;
  assignment.reserve(js.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    assignment.push_back(signature_from_json(js[i], item(field(path, "signatures"), i)));
  }
  try {
    return build_grid(std::move(g), std::move(assignment));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Json vcsp_to_json(const VcspInstance& inst) {
  Json j = Json::object();
  j["n_variables"] = inst.n_variables;
  Json cons = Json::array();
  for (const VcspConstraint& c : inst.constraints) {
    Json jc = Json::object();
    jc["function"] = signature_to_json(c.function);
    jc["arity"] = c.arity;
    jc["scope"] = c.scope;
    cons.push_back(jc);
  }
  j["constraints"] = cons;
  return j;
}

VcspInstance vcsp_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  check_fields(j, path, {"n_variables", "constraints"});
  VcspInstance inst;
  inst.n_variables =
      static_cast<int>(expect_int(require(j, "n_variables", path), field(path, "n_variables")));
  const Json& jc = require(j, "constraints", path);
  expect_array(jc, field(path, "constraints"));
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string cpath = item(field(path, "constraints"), i);
    expect_object(jc[i], cpath);
    check_fields(jc[i], cpath, {"function", "arity", "scope"});
    VcspConstraint c;
    c.function = signature_from_json(require(jc[i], "function", cpath), field(cpath, "function"));
    c.arity = expect_int(require(jc[i], "arity", cpath), field(cpath, "arity"));
    c.scope = int_list(require(jc[i], "scope", cpath), field(cpath, "scope"));
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

Json matrix_to_json(const MatrixModP& m) {
  Json j = Json::object();
  j["p"] = m.p;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json entries = Json::array();
  for (const auto& row : m.entries) entries.push_back(row);
  j["entries"] = entries;
  return j;
}

MatrixModP matrix_from_json(const Json& j, const std::string& path) {
  expect_object(j, path);
  check_fields(j, path, {"p", "rows", "cols", "entries"});
  MatrixModP m;
  m.p = expect_int(require(j, "p", path), field(path, "p"));
  m.rows = static_cast<int>(expect_int(require(j, "rows", path), field(path, "rows")));
  m.cols = static_cast<int>(expect_int(require(j, "cols", path), field(path, "cols")));
  const Json& je = require(j, "entries", path);
  expect_array(je, field(path, "entries"));
  if (static_cast<long>(je.size()) != m.rows) {
    fail(field(path, "entries"), "expected one row per matrix row");
  }
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string rpath = item(field(path, "entries"), i);
    expect_array(je[i], rpath);
    if (static_cast<long>(je[i].size()) != m.cols) {
      fail(rpath, "expected one entry per matrix column");
    }
    std::vector<long> row;
    row.reserve(je[i].size());
    for (std::size_t c = 0; c < je[i].size(); ++c) {
      row.push_back(expect_int(je[i][c], item(rpath, c)));
    }
    m.entries.push_back(std::move(row));
  }
  return m;
}

InstanceDocument parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  const std::string path = "$";
  expect_object(j, path);
  check_fields(j, path, {"version", "kind", "payload", "k"});
  std::string version = expect_string(require(j, "version", path), field(path, "version"));
  if (version != "1") fail(field(path, "version"), "unsupported version (expected \"1\")");
  InstanceDocument doc;
  doc.kind = expect_string(require(j, "kind", path), field(path, "kind"));
  if (j.contains("k")) {
    long k = expect_int(j["k"], field(path, "k"));
    if (k < 0) fail(field(path, "k"), "k must be non-negative");
    doc.k = k;
  }
  const Json& payload = require(j, "payload", path);
  const std::string ppath = field(path, "payload");
  if (doc.kind == "grid") {
    doc.grid = grid_from_json(payload, ppath);
  } else if (doc.kind == "vcsp") {
    doc.vcsp = vcsp_from_json(payload, ppath);
    doc.vcsp->k = doc.k.value_or(0);
    doc.k = doc.vcsp->k;
  } else if (doc.kind == "hypergraph") {
    doc.hypergraph = hypergraph_from_json(payload, ppath);
  } else if (doc.kind == "matrix-mod-p") {
    doc.matrix = matrix_from_json(payload, ppath);
  } else if (doc.kind == "signatures") {
    expect_object(payload, ppath);
    check_fields(payload, ppath, {"signatures"});
    const Json& js = require(payload, "signatures", ppath);
    expect_array(js, field(ppath, "signatures"));
    if (js.empty()) fail(field(ppath, "signatures"), "expected at least one signature");
    std::vector<Signature> sigs;
    for (std::size_t i = 0; i < js.size(); ++i) {
      sigs.push_back(signature_from_json(js[i], item(field(ppath, "signatures"), i)));
    }
    doc.signatures = std::move(sigs);
  } else {
    fail(field(path, "kind"),
         "expected \"grid\", \"vcsp\", \"hypergraph\", \"matrix-mod-p\", or \"signatures\"");
  }
  return doc;
}

Json instance_to_json(const InstanceDocument& doc) {
  Json j = Json::object();
  j["version"] = "1";
  j["kind"] = doc.kind;
  if (doc.kind == "grid") {
    if (!doc.grid) throw InternalError("grid document without a grid payload");
    j["payload"] = grid_to_json(*doc.grid);
    if (doc.k) j["k"] = *doc.k;
  } else if (doc.kind == "vcsp") {
    if (!doc.vcsp) throw InternalError("vcsp document without a vcsp payload");
    j["payload"] = vcsp_to_json(*doc.vcsp);
    // The weight is part of a VCSP instance, so it always serializes.
    j["k"] = doc.vcsp->k;
  } else if (doc.kind == "hypergraph") {
    if (!doc.hypergraph) throw InternalError("hypergraph document without a payload");
    j["payload"] = hypergraph_to_json(*doc.hypergraph);
    if (doc.k) j["k"] = *doc.k;
  } else if (doc.kind == "matrix-mod-p") {
    if (!doc.matrix) throw InternalError("matrix document without a payload");
    j["payload"] = matrix_to_json(*doc.matrix);
    if (doc.k) j["k"] = *doc.k;
  } else if (doc.kind == "signatures") {
    if (!doc.signatures) throw InternalError("signatures document without a payload");
    Json payload = Json::object();
    Json sigs = Json::array();
    for (const Signature& s : *doc.signatures) sigs.push_back(signature_to_json(s));
    payload["signatures"] = sigs;
    j["payload"] = payload;
    if (doc.k) j["k"] = *doc.k;
  } else {
    throw InternalError("unknown document kind: " + doc.kind);
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string serialize_instance(const InstanceDocument& doc) {
  return dump_json(instance_to_json(doc));
}

}  // namespace holant
