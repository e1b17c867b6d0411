#include "holant/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holant/canonical.hpp"
#include "holant/error.hpp"
#include "holant/eval.hpp"
#include "holant/fingerprint.hpp"
#include "holant/grid.hpp"
#include "holant/hombasis.hpp"
#include "holant/hypergraph.hpp"
#include "holant/json_io.hpp"
#include "holant/reductions.hpp"
#include "holant/signature.hpp"

namespace holant {

namespace {

std::string read_input(const std::string& source) {
  if (source == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file: " + source);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstanceDocument load_document(const std::string& source) {
  return parse_instance(read_input(source));
}

// --budget beats HOLANT_BUDGET beats the built-in default.
long long resolve_budget(const std::optional<long long>& flag) {
  if (flag) {
    if (*flag <= 0) throw ValidationError("--budget must be positive");
    return *flag;
  }
  const char* env = std::getenv("HOLANT_BUDGET");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == nullptr || *end != '\0' || v <= 0) {
      throw ValidationError(std::string("HOLANT_BUDGET: expected a positive integer, got \"") +
                            env + "\"");
    }
    return v;
  }
  return kDefaultBudget;
}

long require_k(const std::optional<long>& flag, const InstanceDocument& doc) {
  if (flag) {
    if (*flag < 0) throw ValidationError("--k must be non-negative");
    return *flag;
  }
  if (doc.k) return *doc.k;
  throw ValidationError("no k given: pass --k or put \"k\" in the document");
}

// Subcommands that need a signature set accept grids, bare signature lists,
// and VCSP instances (classifying the constraint functions).
SignatureSet set_of_document(const InstanceDocument& doc) {
  if (doc.kind == "grid") return signature_set_of(*doc.grid);
  if (doc.kind == "signatures") return make_signature_set(*doc.signatures);
  if (doc.kind == "vcsp") {
    std::vector<Signature> sigs;
    for (const VcspConstraint& c : doc.vcsp->constraints) sigs.push_back(c.function);
    return make_signature_set(std::move(sigs));
  }
  throw ValidationError("a " + doc.kind + " document carries no signatures");
}

// The graph and the one signature shared by all its vertices; the perfect
// matching gadgets are stated for a single signature.
std::pair<Hypergraph, Signature> single_signature_grid(const SignatureGrid& grid) {
  if (grid.assignment.empty()) {
    throw ValidationError("empty grid: no signature to read");
  }
  for (const Signature& s : grid.assignment) {
    if (!(s == grid.assignment.front())) {
      throw ValidationError("this operation needs a single-signature grid");
    }
  }
  return {grid.graph, grid.assignment.front()};
}

int rank_of(const Hypergraph& g, const std::optional<long>& flag_d, const char* what) {
  if (flag_d) {
    if (*flag_d < 1) throw ValidationError("--d must be at least 1");
    return static_cast<int>(*flag_d);
  }
  std::optional<int> u = g.uniformity();
  if (u && *u >= 1) return *u;
  throw ValidationError(std::string(what) + ": pass --d (the graph does not fix a rank)");
}

Json grid_document_json(const SignatureGrid& grid, long k) {
  InstanceDocument doc;
  doc.kind = "grid";
  doc.grid = grid;
  doc.k = k;
  return instance_to_json(doc);
}

Json expansion_to_json(const HomExpansion& ex, int d) {
  Json out = Json::object();
  out["k"] = ex.k;
  out["d"] = d;
  out["rank"] = ex.rank;
  Json terms = Json::array();
  for (const HomTerm& t : ex.terms) {
    Json jt = Json::object();
    jt["encoding"] = canonical_form(t.pattern).encoding;
    jt["coefficient"] = scalar_to_json(t.coefficient);
    jt["pattern"] = hypergraph_to_json(t.pattern);
    terms.push_back(jt);
  }
  out["terms"] = terms;
  return out;
}

Json certificate_to_json(const GadgetCertificate& cert) {
  Json out = Json::object();
  out["source"] = grid_document_json(cert.source, cert.source_k);
  out["k"] = cert.source_k;
  out["target"] = grid_document_json(cert.target, cert.target_k);
  out["k_prime"] = cert.target_k;
  out["scale"] = scalar_to_json(cert.scale);
  out["offset"] = scalar_to_json(cert.offset);
  return out;
}

Json pm_instance_to_json(const PmInstance& pm, const std::string& mode) {
  Json out = Json::object();
  out["mode"] = mode;
  out["target"] = grid_document_json(pm.grid, pm.k);
  out["k"] = pm.k;
  out["scale"] = scalar_to_json(pm.scale);
  return out;
}

Json run_eval(const InstanceDocument& doc, const std::optional<long>& flag_k,
              const std::string& method, long long budget, int bound) {
  SignatureGrid grid;
  long k = 0;
  if (doc.kind == "grid") {
    grid = *doc.grid;
    k = require_k(flag_k, doc);
  } else if (doc.kind == "vcsp") {
    auto [g, kk] = vcsp_to_holant(*doc.vcsp);
    grid = std::move(g);
    k = flag_k ? require_k(flag_k, doc) : kk;
  } else {
    throw ValidationError("eval: a " + doc.kind +
                          " document has no signatures; translate it first");
  }
  HolantResult res;
  if (method == "brute") {
    res = holant_bruteforce(grid, k, budget);
  } else if (method == "fpt") {
    SignatureGrid uni = uniformize(grid);
    bool zeros = !signature_set_of(uni).zero_part.empty();
    res = zeros ? holant_fpt_zeros(uni, k) : holant_fpt_t1(uni, k);
  } else {
    res = holant_auto(grid, k, budget, bound);
  }
  Json out = Json::object();
  out["value"] = scalar_to_json(res.value);
  out["method"] = method_name(res.method);
  if (!res.note.empty()) out["note"] = res.note;
  out["k"] = k;
  Json work = Json::object();
  work["subsets"] = res.work.subsets;
  work["compositions"] = res.work.compositions;
  out["work"] = work;
  out["budget"] = budget;
  std::cerr << "eval: k=" << k << " method=" << method_name(res.method)
            << " value=" << res.value.str() << "\n";
  return out;
}

Json run_classify(const InstanceDocument& doc, int bound) {
  SignatureType t = classify(set_of_document(doc), bound);
  Json out = Json::object();
  switch (t.tag) {
    case TypeTag::T1:
      out["type"] = "T1";
      break;
    case TypeTag::T2:
      out["type"] = "T2";
      break;
    case TypeTag::Tinf:
      out["type"] = "Tinf";
      break;
  }
  if (t.witness) {
    Json w = Json::object();
    w["a"] = t.witness->a;
    w["member"] = t.witness->member;
    w["chi"] = scalar_to_json(t.witness->chi);
    out["witness"] = w;
  }
  out["exact"] = t.exact;
  out["vacuous"] = t.vacuous;
  out["bound"] = t.bound;
  std::cerr << "classify: type=" << out["type"].get<std::string>() << " bound=" << t.bound
            << (t.exact ? " (exact)" : " (relative to bound)") << "\n";
  return out;
}

Json run_expand(const InstanceDocument& doc, const std::optional<long>& flag_k,
                const std::optional<long>& flag_d) {
  long k = require_k(flag_k, doc);
  SignatureSet set = set_of_document(doc);
  int d;
  if (doc.kind == "grid") {
    d = rank_of(doc.grid->graph, flag_d, "expand");
  } else {
    if (!flag_d) throw ValidationError("expand: --d is required for this document kind");
    d = rank_of(Hypergraph(0), flag_d, "expand");
  }
  HomExpansion ex = set.members.size() == 1 ? hom_expansion(k, set.members[0], d)
                                            : hom_expansion(k, set, d);
  std::cerr << "expand: k=" << k << " d=" << d << " terms=" << ex.terms.size() << "\n";
  return expansion_to_json(ex, d);
}

Json run_interpolate(const InstanceDocument& doc, const std::optional<long>& flag_k,
                     const std::optional<long>& flag_d, long long budget) {
  if (doc.kind != "grid") {
    throw ValidationError("interpolate: expected a grid document");
  }
  auto [graph, sig] = single_signature_grid(*doc.grid);
  long k = require_k(flag_k, doc);
  std::optional<int> u = graph.uniformity();
  if (!u || *u < 1) {
    throw ValidationError("interpolate: the grid's graph must be uniform with rank >= 1");
  }
  int d = *u;
  if (flag_d && *flag_d != d) {
    throw ValidationError("interpolate: --d contradicts the graph's rank");
  }
  // The unknown functional: X -> Holant of the tensor product G (x) X with
  // the grid's signature everywhere. Its Hom expansion has coefficient
  // zeta(F) * Hom(F -> G) at F, which is what the caller gets back.
  auto oracle = [&](const Hypergraph& x) {
    Hypergraph t = tensor_product(graph, x);
    std::vector<Signature> assignment(static_cast<std::size_t>(t.n()), sig);
    return holant_bruteforce(build_grid(std::move(t), std::move(assignment)), k, budget).value;
  };
  HomExpansion ex = dedekind_interpolate(oracle, k, d);
  std::cerr << "interpolate: k=" << k << " d=" << d << " terms=" << ex.terms.size() << "\n";
  Json out = expansion_to_json(ex, d);
  out["budget"] = budget;
  return out;
}

Json run_translate(const InstanceDocument& doc, const std::optional<long>& flag_k,
                   std::string mode, const std::vector<long>& degrees) {
  if (mode.empty()) {
    if (doc.kind == "vcsp") mode = "holant";
    else if (doc.kind == "grid") mode = "vcsp";
    else if (doc.kind == "hypergraph") mode = "hitting-set";
    else if (doc.kind == "matrix-mod-p") mode = "codeword";
    else throw ValidationError("translate: no translation applies to a " + doc.kind + " document");
  }
  InstanceDocument out;
  if (mode == "holant") {
    if (doc.kind != "vcsp") throw ValidationError("translate: mode holant expects a vcsp document");
    VcspInstance inst = *doc.vcsp;
    if (flag_k) inst.k = require_k(flag_k, doc);
    auto [grid, k] = vcsp_to_holant(inst);
    out.kind = "grid";
    out.grid = std::move(grid);
    out.k = k;
  } else if (mode == "vcsp") {
    if (doc.kind != "grid") throw ValidationError("translate: mode vcsp expects a grid document");
    long k = require_k(flag_k, doc);
    out.kind = "vcsp";
    out.vcsp = holant_to_vcsp(*doc.grid, k);
    out.k = out.vcsp->k;
  } else if (mode == "hitting-set") {
    if (doc.kind != "hypergraph") {
      throw ValidationError("translate: mode hitting-set expects a hypergraph document");
    }
    auto [grid, k] = hitting_set_holant(*doc.hypergraph, require_k(flag_k, doc));
    out.kind = "grid";
    out.grid = std::move(grid);
    out.k = k;
  } else if (mode == "factor") {
    if (doc.kind != "hypergraph") {
      throw ValidationError("translate: mode factor expects a hypergraph document");
    }
    if (degrees.empty()) {
      throw ValidationError("translate: mode factor needs --degrees (e.g. --degrees 0,1)");
    }
    auto [grid, k] = build_factor_instance(*doc.hypergraph, degrees, require_k(flag_k, doc));
    out.kind = "grid";
    out.grid = std::move(grid);
    out.k = k;
  } else if (mode == "codeword") {
    if (doc.kind != "matrix-mod-p") {
      throw ValidationError("translate: mode codeword expects a matrix-mod-p document");
    }
    auto [grid, k] = build_codeword_instance(*doc.matrix, require_k(flag_k, doc));
    out.kind = "grid";
    out.grid = std::move(grid);
    out.k = k;
  } else {
    throw ValidationError("translate: unknown mode \"" + mode + "\"");
  }
  std::cerr << "translate: " << doc.kind << " -> " << out.kind << " via " << mode << "\n";
  return instance_to_json(out);
}

Json run_gadget(const InstanceDocument& doc, const std::string& mode,
                const std::optional<long>& flag_k, const std::optional<long>& flag_d, long cap) {
  if (doc.kind != "grid") throw ValidationError("gadget: expected a grid document");
  const SignatureGrid& grid = *doc.grid;
  if (mode == "pad" || mode == "bridge") {
    long k = require_k(flag_k, doc);
    if (!flag_d) throw ValidationError("gadget: --d is required for mode " + mode);
    int d = rank_of(grid.graph, flag_d, "gadget");
    if (mode == "pad") {
      Json out = certificate_to_json(pad_gadget(grid, k, d));
      std::cerr << "gadget: pad to rank " << d << "\n";
      return out;
    }
    BridgeGadget bridge = find_bridge_gadget(d, static_cast<int>(cap));
    Json out = certificate_to_json(bridge_lift(grid, k, d, bridge));
    Json jb = Json::object();
    jb["graph"] = hypergraph_to_json(bridge.graph);
    jb["x"] = bridge.x;
    jb["y"] = bridge.y;
    out["gadget"] = jb;
    out["cap"] = cap;
    std::cerr << "gadget: bridge to rank " << d << " with " << bridge.graph.edge_count()
              << " edges per copy\n";
    return out;
  }
  auto [graph, sig] = single_signature_grid(grid);
  PmInstance pm;
  if (mode == "pm-graph") {
    pm = pm_gadget_graph(graph, sig);
  } else if (mode == "pm-hyper-zero") {
    pm = pm_gadget_hyper(graph, sig, PmMode::ZeroSig);
  } else if (mode == "pm-hyper-forced") {
    pm = pm_gadget_hyper(graph, sig, PmMode::SizeForced);
  } else {
    throw ValidationError("gadget: unknown mode \"" + mode + "\"");
  }
  std::cerr << "gadget: " << mode << " k=" << pm.k << "\n";
  return pm_instance_to_json(pm, mode);
}

Json run_generate(const std::string& mode, const std::optional<long>& flag_d,
                  const std::optional<long>& flag_b, long size_index, long cap) {
  if (!flag_d) throw ValidationError("generate: --d is required");
  int d = static_cast<int>(*flag_d);
  if (mode == "bridge") {
    BridgeGadget bridge = find_bridge_gadget(d, static_cast<int>(cap));
    Json out = Json::object();
    out["graph"] = hypergraph_to_json(bridge.graph);
    out["x"] = bridge.x;
    out["y"] = bridge.y;
    out["cap"] = cap;
    std::cerr << "generate: bridge gadget, " << bridge.graph.edge_count() << " edges\n";
    return out;
  }
  if (mode != "regular") throw ValidationError("generate: unknown mode \"" + mode + "\"");
  if (!flag_b) throw ValidationError("generate: --b is required for mode regular");
  Hypergraph g = gen_regular_connected(d, static_cast<int>(*flag_b), static_cast<int>(size_index));
  InstanceDocument out;
  out.kind = "hypergraph";
  out.hypergraph = std::move(g);
  std::cerr << "generate: " << *flag_b << "-regular " << d << "-uniform, n="
            << out.hypergraph->n() << "\n";
  return instance_to_json(out);
}

Json named_grid_example(const Hypergraph& graph, const Signature& s, long k) {
  std::vector<Signature> assignment(static_cast<std::size_t>(graph.n()), s);
  InstanceDocument doc;
  doc.kind = "grid";
  doc.grid = build_grid(graph, assignment);
  doc.k = k;
  return instance_to_json(doc);
}

Json run_examples() {
  Json ex = Json::object();
  ex["k3-matchings"] = named_grid_example(complete_graph(3), Signature::hw_le1(), 1);
  ex["c4-parity"] = named_grid_example(cycle_graph(4), Signature::s_p(2), 2);
  ex["geometric-path"] = named_grid_example(path_graph(4), Signature::geometric(ExactScalar(2)), 2);

  InstanceDocument tri;
  tri.kind = "hypergraph";
  tri.hypergraph = single_edge(3);
  tri.k = 1;
  ex["one-triple"] = instance_to_json(tri);

  InstanceDocument parity;
  parity.kind = "matrix-mod-p";
  MatrixModP m;
  m.p = 2;
  m.rows = 1;
  m.cols = 2;
  m.entries = {{1, 1}};
  parity.matrix = m;
  parity.k = 2;
  ex["parity-check"] = instance_to_json(parity);

  InstanceDocument vcsp;
  vcsp.kind = "vcsp";
  VcspInstance inst;
  inst.n_variables = 2;
  VcspConstraint c0;
  c0.function = Signature::hw_le1();
  c0.arity = 2;
  c0.scope = {0, 1};
  VcspConstraint c1;
  c1.function = Signature::one();
  c1.arity = 1;
  c1.scope = {0};
  inst.constraints = {c0, c1};
  inst.k = 1;
  vcsp.vcsp = inst;
  vcsp.k = 1;
  ex["vcsp-demo"] = instance_to_json(vcsp);

  Json out = Json::object();
  out["examples"] = ex;
  return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Exact Holant toolkit: evaluate, classify, expand, and transform instances"};
  app.require_subcommand(1);

  std::string input = "-";
  std::optional<long> flag_k;
  std::optional<long> flag_d;
  std::optional<long> flag_b;
  std::optional<long long> flag_budget;
  long bound = 8;
  long cap = 4;
  long size_index = 2;
  std::string method = "auto";
  std::string mode;
  std::vector<long> degrees;

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate the Holant value of an instance");
  eval_cmd->add_option("input", input, "instance document path, or - for stdin");
  eval_cmd->add_option("--k", flag_k, "number of selected edges");
  eval_cmd->add_option("--method", method, "auto, brute, or fpt")
      ->check(CLI::IsMember({"auto", "brute", "fpt"}));
  eval_cmd->add_option("--budget", flag_budget, "brute-force guard (default HOLANT_BUDGET or built-in)");
  eval_cmd->add_option("--bound", bound, "classification cutoff used by the auto route");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a signature set");
  classify_cmd->add_option("input", input, "instance document path, or - for stdin");
  classify_cmd->add_option("--bound", bound, "largest fingerprint argument checked");

  CLI::App* expand_cmd = app.add_subcommand("expand", "Homomorphism-basis expansion of Holant(., k)");
  expand_cmd->add_option("input", input, "instance document path, or - for stdin");
  expand_cmd->add_option("--k", flag_k, "number of selected edges");
  expand_cmd->add_option("--d", flag_d, "pattern rank");

  CLI::App* interp_cmd =
      app.add_subcommand("interpolate", "Recover expansion coefficients from evaluations");
  interp_cmd->add_option("input", input, "grid document path, or - for stdin");
  interp_cmd->add_option("--k", flag_k, "number of selected edges");
  interp_cmd->add_option("--d", flag_d, "pattern rank (must match the graph)");
  interp_cmd->add_option("--budget", flag_budget, "brute-force guard for oracle calls");

  CLI::App* translate_cmd = app.add_subcommand("translate", "Convert between instance kinds");
  translate_cmd->add_option("input", input, "instance document path, or - for stdin");
  translate_cmd->add_option("--k", flag_k, "parameter for the produced instance");
  translate_cmd->add_option("--mode", mode,
                            "holant, vcsp, hitting-set, factor, or codeword (default by kind)");
  translate_cmd->add_option("--degrees", degrees, "degree set for mode factor")
      ->delimiter(',');

  CLI::App* gadget_cmd = app.add_subcommand("gadget", "Build a certified instance transformation");
  gadget_cmd->add_option("input", input, "grid document path, or - for stdin");
  gadget_cmd->add_option("--mode", mode, "pad, bridge, pm-graph, pm-hyper-zero, pm-hyper-forced")
      ->required()
      ->check(CLI::IsMember({"pad", "bridge", "pm-graph", "pm-hyper-zero", "pm-hyper-forced"}));
  gadget_cmd->add_option("--k", flag_k, "source parameter");
  gadget_cmd->add_option("--d", flag_d, "target rank for pad/bridge");
  gadget_cmd->add_option("--cap", cap, "bridge gadget search cap (edges)");

  CLI::App* generate_cmd = app.add_subcommand("generate", "Emit structured test hypergraphs");
  generate_cmd->add_option("--mode", mode, "regular (default) or bridge");
  generate_cmd->add_option("--d", flag_d, "edge rank");
  generate_cmd->add_option("--b", flag_b, "vertex degree for mode regular");
  generate_cmd->add_option("--i", size_index, "size index for mode regular");
  generate_cmd->add_option("--cap", cap, "search cap for mode bridge");

  CLI::App* examples_cmd = app.add_subcommand("examples", "Print ready-to-use instance documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    Json result;
    if (*eval_cmd) {
      result = run_eval(load_document(input), flag_k, method, resolve_budget(flag_budget),
                        static_cast<int>(bound));
    } else if (*classify_cmd) {
      result = run_classify(load_document(input), static_cast<int>(bound));
    } else if (*expand_cmd) {
      result = run_expand(load_document(input), flag_k, flag_d);
    } else if (*interp_cmd) {
      result = run_interpolate(load_document(input), flag_k, flag_d, resolve_budget(flag_budget));
    } else if (*translate_cmd) {
      result = run_translate(load_document(input), flag_k, mode, degrees);
    } else if (*gadget_cmd) {
      result = run_gadget(load_document(input), mode, flag_k, flag_d, cap);
    } else if (*generate_cmd) {
      result = run_generate(mode.empty() ? "regular" : mode, flag_d, flag_b, size_index, cap);
    } else if (*examples_cmd) {
      result = run_examples();
    }
    std::cout << dump_json(result);
    return 0;
  } catch (const GuardError& e) {
    std::cerr << "guard tripped: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace holant
