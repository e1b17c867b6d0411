#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "holant/grid.hpp"
#include "holant/hypergraph.hpp"
#include "holant/reductions.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

namespace holant {

// Insertion-ordered JSON so serialization has a stable field order and
// documents diff cleanly.
using Json = nlohmann::ordered_json;

// One parsed instance document. `kind` selects which member is engaged:
//   grid         -> grid
//   vcsp         -> vcsp (k mirrored into the document-level k)
//   hypergraph   -> hypergraph
//   matrix-mod-p -> matrix
//   signatures   -> signatures (a bare set, for classification)
struct InstanceDocument {
  std::string kind;
  std::optional<long> k;
  std::optional<SignatureGrid> grid;
  std::optional<VcspInstance> vcsp;
  std::optional<Hypergraph> hypergraph;
  std::optional<MatrixModP> matrix;
  std::optional<std::vector<Signature>> signatures;
};

// Scalars render as "p/q" when real and as {"re": "p/q", "im": "p/q"}
// otherwise. Parsing accepts both spellings and nothing else; in particular
// "0.333" has no rational reading and is rejected. `path` prefixes error
// messages so a schema violation names the offending field.
Json scalar_to_json(const ExactScalar& x);
ExactScalar scalar_from_json(const Json& j, const std::string& path);

// {"table": [scalar, ...], "tail": {"kind": "zero"}}
//                                  {"kind": "geometric", "ratio": scalar}
//                                  {"kind": "periodic", "period": m}
Json signature_to_json(const Signature& s);
Signature signature_from_json(const Json& j, const std::string& path);

// {"n": 3, "edges": [[0,1],[0,2]], "mult": [1,2]} plus "colours": [...] when
// the hypergraph is coloured. On input "mult" and "colours" are optional.
Json hypergraph_to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const Json& j, const std::string& path);

// {"graph": hypergraph, "signatures": [one signature per vertex]}
Json grid_to_json(const SignatureGrid& grid);
SignatureGrid grid_from_json(const Json& j, const std::string& path);

// {"n_variables": 2, "constraints": [{"function": sig, "arity": 1,
//  "scope": [0]}, ...]}; the weight k lives at document level.
Json vcsp_to_json(const VcspInstance& inst);
VcspInstance vcsp_from_json(const Json& j, const std::string& path);

// {"p": 2, "rows": 1, "cols": 2, "entries": [[1, 1]]}
Json matrix_to_json(const MatrixModP& m);
MatrixModP matrix_from_json(const Json& j, const std::string& path);

// Full document: {"version": "1", "kind": ..., "payload": ..., "k": ...}
// with "k" omitted when absent. Unknown fields anywhere are rejected, so a
// typo'd optional field fails loudly instead of being ignored.
InstanceDocument parse_instance(const std::string& text);
Json instance_to_json(const InstanceDocument& doc);

// Canonical text form: two-space indentation, trailing newline. Documents
// produced here re-parse to the same object and re-serialize byte-identically.
std::string serialize_instance(const InstanceDocument& doc);
std::string dump_json(const Json& j);

}  // namespace holant
