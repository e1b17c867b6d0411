#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "holant/canonical.hpp"
#include "holant/grid.hpp"
#include "holant/hypergraph.hpp"
#include "holant/json_io.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

using namespace holant;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

const std::filesystem::path& work_dir() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path d =
        std::filesystem::temp_directory_path() / ("holant-cli-" + std::to_string(getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  std::filesystem::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

// Runs the real binary through the shell so redirections and the environment
// behave exactly as they would for a user.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "",
                  const std::filesystem::path& stdin_file = {}) {
  static int seq = 0;
  std::filesystem::path out = work_dir() / ("out" + std::to_string(seq) + ".txt");
  std::filesystem::path err = work_dir() / ("err" + std::to_string(seq) + ".txt");
  ++seq;
  std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "'" HOLANT_CLI_PATH "' " + args;
  if (!stdin_file.empty()) cmd += " < '" + stdin_file.string() + "'";
  cmd += " > '" + out.string() + "' 2> '" + err.string() + "'";
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// The examples output, fetched once; individual documents are re-dumped with
// the library serializer, which matches how they were rendered inline.
const Json& examples_json() {
  static const Json parsed = [] {
    CliResult r = run_cli("examples");
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
  }();
  return parsed;
}

std::filesystem::path example_file(const std::string& name) {
  const Json& doc = examples_json().at("examples").at(name);
  return write_file(name + ".json", doc.dump(2) + "\n");
}

std::filesystem::path grid_file(const std::string& name, const Hypergraph& g,
                                const Signature& s, std::optional<long> k) {
  InstanceDocument doc;
  doc.kind = "grid";
  doc.grid = build_grid(g, std::vector<Signature>(static_cast<std::size_t>(g.n()), s));
  doc.k = k;
  return write_file(name, serialize_instance(doc));
}

ExactScalar value_of(const Json& j) {
  return ExactScalar::from_rational_string(j.at("value").get<std::string>());
}

}  // namespace

TEST_CASE("examples emit parseable, round-trip-stable documents") {
  const Json& ex = examples_json().at("examples");
  for (const char* name : {"k3-matchings", "c4-parity", "geometric-path", "one-triple",
                           "parity-check", "vcsp-demo"}) {
    REQUIRE(ex.contains(name));
    std::string text = ex.at(name).dump(2) + "\n";
    InstanceDocument doc = parse_instance(text);
    CHECK(serialize_instance(doc) == text);
  }
  // Byte-identical across runs.
  CliResult again = run_cli("examples");
  CHECK(again.code == 0);
  CHECK(again.out == examples_json().dump(2) + "\n");
}

TEST_CASE("eval reports the value, the method, and the work done") {
  std::filesystem::path k3 = example_file("k3-matchings");
  CliResult r = run_cli("eval --k 1 '" + k3.string() + "'");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("value") == "3/1");
  CHECK(j.at("method") == "brute");
  CHECK(j.at("k") == 1);
  CHECK(j.at("budget") == 100000000);
  CHECK(j.at("work").at("subsets").get<long long>() > 0);

  // The document carries k = 1 itself.
  CliResult implicit = run_cli("eval '" + k3.string() + "'");
  CHECK(implicit.code == 0);
  CHECK(implicit.out == r.out);

  // Same runs give the same bytes.
  CliResult again = run_cli("eval --k 1 '" + k3.string() + "'");
  CHECK(again.out == r.out);

  // Reading from stdin.
  CliResult piped = run_cli("eval --k 1 -", "", k3);
  CHECK(piped.code == 0);
  CHECK(piped.out == r.out);

  // The fpt route reports which algorithm ran.
  std::filesystem::path geo = example_file("geometric-path");
  CliResult fpt = run_cli("eval --method fpt '" + geo.string() + "'");
  REQUIRE(fpt.code == 0);
  Json jf = Json::parse(fpt.out);
  CHECK(jf.at("method") == "fpt_t1");
  CliResult brute = run_cli("eval --method brute '" + geo.string() + "'");
  REQUIRE(brute.code == 0);
  CHECK(Json::parse(brute.out).at("value") == jf.at("value"));
}

TEST_CASE("eval rejects bad input and stops at the budget") {
  std::filesystem::path broken = write_file("broken.json", "{ this is not json\n");
  CHECK(run_cli("eval --k 1 '" + broken.string() + "'").code == 1);

  // Decimal literals have no exact reading.
  std::string text = slurp(example_file("k3-matchings"));
  std::string decimal = text;
  decimal.replace(decimal.find("\"1/1\""), 5, "\"0.333\"");
  std::filesystem::path dec = write_file("decimal.json", decimal);
  CliResult rd = run_cli("eval --k 1 '" + dec.string() + "'");
  CHECK(rd.code == 1);
  CHECK(rd.err.find("$.") != std::string::npos);

  // Unknown fields are called out by path.
  Json j = Json::parse(text);
  j["surprise"] = 1;
  std::filesystem::path extra = write_file("extra.json", j.dump(2) + "\n");
  CliResult re = run_cli("eval --k 1 '" + extra.string() + "'");
  CHECK(re.code == 1);
  CHECK(re.err.find("surprise") != std::string::npos);

  // No k anywhere.
  Json nok = Json::parse(text);
  nok.erase("k");
  std::filesystem::path miss = write_file("nok.json", nok.dump(2) + "\n");
  CHECK(run_cli("eval '" + miss.string() + "'").code == 1);

  // Guard exits are distinguishable from validation exits.
  std::filesystem::path k3 = example_file("k3-matchings");
  CliResult guard = run_cli("eval --method brute --budget 1 '" + k3.string() + "'");
  CHECK(guard.code == 2);
  CHECK(guard.err.find("guard") != std::string::npos);
  CHECK(run_cli("eval --budget -4 '" + k3.string() + "'").code == 1);

  // Environment budget applies unless the flag overrides it.
  CHECK(run_cli("eval --method brute '" + k3.string() + "'", "HOLANT_BUDGET=1").code == 2);
  CHECK(run_cli("eval --method brute --budget 50 '" + k3.string() + "'", "HOLANT_BUDGET=1").code ==
        0);
  CHECK(run_cli("eval '" + k3.string() + "'", "HOLANT_BUDGET=nonsense").code == 1);
}

TEST_CASE("classify names the type and shows its witness") {
  InstanceDocument sigs;
  sigs.kind = "signatures";
  sigs.signatures = {Signature::hw_le1()};
  std::filesystem::path f = write_file("sigs.json", serialize_instance(sigs));
  CliResult r = run_cli("classify '" + f.string() + "'");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("type") == "Tinf");
  CHECK(j.at("witness").at("a") == 3);
  CHECK(j.at("witness").at("chi") == "2/1");
  CHECK(j.at("exact") == true);
  CHECK(j.at("bound") == 8);

  std::filesystem::path c4 = example_file("c4-parity");
  CliResult rp = run_cli("classify '" + c4.string() + "'");
  REQUIRE(rp.code == 0);
  CHECK(Json::parse(rp.out).at("type") == "Tinf");
  CHECK(Json::parse(rp.out).at("witness").at("a") == 4);

  CHECK(run_cli("classify --bound 2 '" + f.string() + "'").code == 1);
}

TEST_CASE("expand lists the basis coefficients by pattern") {
  InstanceDocument sigs;
  sigs.kind = "signatures";
  sigs.signatures = {Signature::hw_le1()};
  std::filesystem::path f = write_file("expand-sigs.json", serialize_instance(sigs));
  CliResult r = run_cli("expand --k 2 --d 2 '" + f.string() + "'");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("k") == 2);
  CHECK(j.at("d") == 2);
  REQUIRE(j.at("terms").size() == 3);
  for (const Json& t : j.at("terms")) {
    int n = t.at("pattern").at("n").get<int>();
    std::string c = t.at("coefficient").get<std::string>();
    if (n == 2) CHECK(c == "1/4");   // one edge
    if (n == 3) CHECK(c == "-1/2");  // path with two edges
    if (n == 4) CHECK(c == "1/8");   // two disjoint edges
  }

  // A grid document takes its rank from the graph.
  std::filesystem::path k3 = example_file("k3-matchings");
  CliResult rg = run_cli("expand --k 2 '" + k3.string() + "'");
  REQUIRE(rg.code == 0);
  CHECK(Json::parse(rg.out).at("terms").size() == 3);

  // Signature documents fix no rank on their own.
  CHECK(run_cli("expand --k 2 '" + f.string() + "'").code == 1);
}

TEST_CASE("interpolate recovers coefficients scaled by target homs") {
  std::filesystem::path k3 = example_file("k3-matchings");
  CliResult r = run_cli("interpolate --k 2 '" + k3.string() + "'");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j.at("terms").size() == 3);
  for (const Json& t : j.at("terms")) {
    int n = t.at("pattern").at("n").get<int>();
    std::string c = t.at("coefficient").get<std::string>();
    if (n == 2) CHECK(c == "3/2");
    if (n == 3) CHECK(c == "-6/1");
    if (n == 4) CHECK(c == "9/2");
  }
  CHECK(j.contains("budget"));

  CHECK(run_cli("interpolate --k 2 --d 3 '" + k3.string() + "'").code == 1);
}

TEST_CASE("translate converts between instance kinds") {
  // Constraint instance to grid, same weighted count.
  std::filesystem::path vcsp = example_file("vcsp-demo");
  CliResult tr = run_cli("translate '" + vcsp.string() + "'");
  REQUIRE(tr.code == 0);
  Json grid_doc = Json::parse(tr.out);
  CHECK(grid_doc.at("kind") == "grid");
  std::filesystem::path gf = write_file("vcsp-as-grid.json", tr.out);
  CliResult ev1 = run_cli("eval '" + gf.string() + "'");
  CliResult ev2 = run_cli("eval '" + vcsp.string() + "'");
  REQUIRE(ev1.code == 0);
  REQUIRE(ev2.code == 0);
  CHECK(value_of(Json::parse(ev1.out)) == value_of(Json::parse(ev2.out)));

  // Grid to constraint instance.
  std::filesystem::path k3 = example_file("k3-matchings");
  CliResult tg = run_cli("translate --k 1 '" + k3.string() + "'");
  REQUIRE(tg.code == 0);
  CHECK(Json::parse(tg.out).at("kind") == "vcsp");
  std::filesystem::path vf = write_file("k3-as-vcsp.json", tg.out);
  CliResult ev3 = run_cli("eval '" + vf.string() + "'");
  REQUIRE(ev3.code == 0);
  CHECK(Json::parse(ev3.out).at("value") == "3/1");

  // Hypergraph to hitting-set grid. All three vertices of a single triple
  // are interchangeable, so they collapse to one choice.
  std::filesystem::path tri = example_file("one-triple");
  CliResult th = run_cli("translate --k 1 '" + tri.string() + "'");
  REQUIRE(th.code == 0);
  std::filesystem::path hf = write_file("triple-hitting.json", th.out);
  CliResult ev4 = run_cli("eval '" + hf.string() + "'");
  REQUIRE(ev4.code == 0);
  CHECK(Json::parse(ev4.out).at("value") == "1/1");

  // Parity-check matrix to codeword grid.
  std::filesystem::path par = example_file("parity-check");
  CliResult tc = run_cli("translate '" + par.string() + "'");
  REQUIRE(tc.code == 0);
  std::filesystem::path cf = write_file("parity-codewords.json", tc.out);
  CliResult ev5 = run_cli("eval '" + cf.string() + "'");
  REQUIRE(ev5.code == 0);
  CHECK(Json::parse(ev5.out).at("value") == "1/1");

  // Degree-constrained subsets of a hypergraph.
  CliResult tf =
      run_cli("translate --mode factor --degrees 0,1 --k 1 '" + tri.string() + "'");
  REQUIRE(tf.code == 0);
  std::filesystem::path ff = write_file("triple-factor.json", tf.out);
  CliResult ev6 = run_cli("eval '" + ff.string() + "'");
  REQUIRE(ev6.code == 0);
  CHECK(Json::parse(ev6.out).at("value") == "1/1");

  CHECK(run_cli("translate --mode factor --k 1 '" + tri.string() + "'").code == 1);
  CHECK(run_cli("translate --mode bogus '" + tri.string() + "'").code == 1);
}

TEST_CASE("gadget emits certificates the evaluator can check") {
  auto check_certificate = [](const Json& j) {
    std::filesystem::path sf = write_file("cert-source.json", j.at("source").dump(2) + "\n");
    std::filesystem::path tf = write_file("cert-target.json", j.at("target").dump(2) + "\n");
    CliResult es = run_cli("eval '" + sf.string() + "'");
    CliResult et = run_cli("eval '" + tf.string() + "'");
    REQUIRE(es.code == 0);
    REQUIRE(et.code == 0);
    ExactScalar scale = ExactScalar::from_rational_string(j.at("scale").get<std::string>());
    ExactScalar offset = ExactScalar::from_rational_string(j.at("offset").get<std::string>());
    CHECK(value_of(Json::parse(et.out)) == scale * value_of(Json::parse(es.out)) + offset);
  };

  std::filesystem::path pad_src = grid_file(
      "pad-src.json", complete_graph(3),
      Signature::zero_tail({ExactScalar(1), ExactScalar(2), ExactScalar(3)}), std::nullopt);
  CliResult pad = run_cli("gadget --mode pad --k 1 --d 3 '" + pad_src.string() + "'");
  REQUIRE(pad.code == 0);
  Json jp = Json::parse(pad.out);
  CHECK(jp.at("k") == 1);
  CHECK(jp.at("k_prime") == 1);
  CHECK(jp.at("scale") == "2/1");
  check_certificate(jp);

  std::filesystem::path bridge_src = grid_file(
      "bridge-src.json", cycle_graph(4),
      Signature::zero_tail({ExactScalar(1), ExactScalar(0), ExactScalar(3)}), std::nullopt);
  CliResult bridge = run_cli("gadget --mode bridge --k 1 --d 3 '" + bridge_src.string() + "'");
  REQUIRE(bridge.code == 0);
  Json jb = Json::parse(bridge.out);
  CHECK(jb.at("k_prime") == 4);
  CHECK(jb.at("gadget").at("graph").at("edges").size() == 4);
  check_certificate(jb);

  // Perfect matchings of C4 through the degree-one branch.
  std::filesystem::path pm_src =
      grid_file("pm-src.json", cycle_graph(4), Signature::hw_ge1(), std::nullopt);
  CliResult pm = run_cli("gadget --mode pm-graph '" + pm_src.string() + "'");
  REQUIRE(pm.code == 0);
  Json jm = Json::parse(pm.out);
  CHECK(jm.at("mode") == "pm-graph");
  CHECK(jm.at("scale") == "1/1");
  std::filesystem::path mt = write_file("pm-target.json", jm.at("target").dump(2) + "\n");
  CliResult evm = run_cli("eval '" + mt.string() + "'");
  REQUIRE(evm.code == 0);
  CHECK(Json::parse(evm.out).at("value") == "2/1");

  // Hypergraph variants, kept tiny.
  Hypergraph two_pm(6);
  two_pm.add_edge({0, 1, 2});
  two_pm.add_edge({3, 4, 5});
  two_pm.add_edge({0, 3, 4});
  two_pm.add_edge({1, 2, 5});
  std::filesystem::path hz_src =
      grid_file("pm-hyper-src.json", two_pm,
                Signature::zero_tail({ExactScalar(0), ExactScalar(1)}), std::nullopt);
  CliResult hz = run_cli("gadget --mode pm-hyper-zero '" + hz_src.string() + "'");
  REQUIRE(hz.code == 0);
  Json jz = Json::parse(hz.out);
  std::filesystem::path zt = write_file("pm-hyper-target.json", jz.at("target").dump(2) + "\n");
  CliResult evz = run_cli("eval '" + zt.string() + "'");
  REQUIRE(evz.code == 0);
  CHECK(value_of(Json::parse(evz.out)) ==
        ExactScalar::from_rational_string(jz.at("scale").get<std::string>()) * ExactScalar(2));

  std::filesystem::path hf_src =
      grid_file("pm-forced-src.json", single_edge(3), Signature::s_p(3), std::nullopt);
  CliResult hf = run_cli("gadget --mode pm-hyper-forced '" + hf_src.string() + "'");
  REQUIRE(hf.code == 0);
  Json jf = Json::parse(hf.out);
  std::filesystem::path ft = write_file("pm-forced-target.json", jf.at("target").dump(2) + "\n");
  CliResult evf = run_cli("eval '" + ft.string() + "'");
  REQUIRE(evf.code == 0);
  CHECK(value_of(Json::parse(evf.out)) ==
        ExactScalar::from_rational_string(jf.at("scale").get<std::string>()));

  CHECK(run_cli("gadget --mode pad --k 1 --d 2 '" + pad_src.string() + "'").code == 1);
  CHECK(run_cli("gadget --mode pad --d 3 '" + pad_src.string() + "'").code == 1);
  CHECK(run_cli("gadget '" + pad_src.string() + "'").code == 1);
}

TEST_CASE("generate emits structured hypergraphs") {
  CliResult r = run_cli("generate --d 2 --b 2 --i 2");
  REQUIRE(r.code == 0);
  InstanceDocument doc = parse_instance(r.out);
  CHECK(doc.kind == "hypergraph");
  REQUIRE(doc.hypergraph.has_value());
  CHECK(doc.hypergraph->n() == 8);
  CHECK(is_isomorphic(*doc.hypergraph, cycle_graph(8)));

  CliResult b = run_cli("generate --mode bridge --d 3");
  REQUIRE(b.code == 0);
  Json jb = Json::parse(b.out);
  CHECK(jb.at("graph").at("edges").size() == 4);
  CHECK(jb.contains("x"));
  CHECK(jb.contains("y"));
  CHECK(jb.at("cap") == 4);

  CHECK(run_cli("generate --d 2").code == 1);       // no degree given
  CHECK(run_cli("generate --mode what").code == 1);
}

TEST_CASE("usage errors exit with code one, help with zero") {
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("frobnicate").code == 1);
  std::filesystem::path k3 = example_file("k3-matchings");
  CHECK(run_cli("eval --method bogus '" + k3.string() + "'").code == 1);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("eval --help").code == 0);
  CHECK(run_cli("eval '/nonexistent/path.json'").code == 1);
}
