#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "qes/json_io.hpp"

using namespace qes;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& stdin_data = "",
                  const std::string& env_prefix = "") {
  std::string cmd;
  if (!stdin_data.empty()) {
    std::string quoted = "'";
    for (char ch : stdin_data)
      if (ch == '\'')
        quoted += "'\\''";
      else
        quoted += ch;
    quoted += "'";
    cmd = "printf %s " + quoted + " | " + env_prefix + QES_CLI_PATH " " + args +
          " 2>/dev/null";
  } else {
    cmd = env_prefix + QES_CLI_PATH " " + args + " 2>/dev/null";
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("poly JSON round-trip is bit-exact", "[json]") {
  Poly p(2);
  p.add_term({1, 1}, Rational(1));
  p.add_term({0, 2}, make_rational(-5, 2));
  p.add_term({0, 0}, make_rational(1, 3));
  std::string first = poly_to_json(p).dump();
  Poly back = poly_from_json(Json::parse(first));
  CHECK(back == p);
  CHECK(poly_to_json(back).dump() == first);
  CHECK(first ==
        R"({"V":2,"terms":[{"exp":[0,0],"coeff":"1/3"},{"exp":[1,1],"coeff":"1"},{"exp":[0,2],"coeff":"-5/2"}]})");
}

TEST_CASE("poly JSON round-trip on random inputs", "[json]") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> deg(0, 4), num(-9, 9), den(1, 7), terms(0, 8);
  for (int trial = 0; trial < 30; ++trial) {
    int V = 1 + trial % 3;
    Poly p(V);
    for (int t = terms(rng); t > 0; --t) {
      Monomial m(V);
      for (int j = 0; j < V; ++j) m[j] = deg(rng);
      p.add_term(std::move(m), make_rational(num(rng), den(rng)));
    }
    std::string s = poly_to_json(p).dump();
    CHECK(poly_to_json(poly_from_json(Json::parse(s))).dump() == s);
  }
}

TEST_CASE("operator JSON round-trip", "[json]") {
  DiffOp op = j_scalar(1, 0, 3, 2);
  std::string s = diffop_to_json(op).dump();
  CHECK(diffop_from_json(Json::parse(s)) == op);
  CHECK(diffop_to_json(diffop_from_json(Json::parse(s))).dump() == s);

  GenContext ctx{2, 3, 1};
  GradedOp g = j_graded(1, 1, ctx);
  std::string gs = gradedop_to_json(g).dump();
  CHECK(gradedop_from_json(Json::parse(gs)) == g);
  CHECK(gradedop_to_json(gradedop_from_json(Json::parse(gs))).dump() == gs);
}

TEST_CASE("expression evaluation: scalar context", "[json]") {
  Json doc = Json::parse(R"({"V":2,"N":3,"expr":{"gen":"J","a":1,"b":2}})");
  auto ev = eval_expression(doc);
  REQUIRE(std::holds_alternative<DiffOp>(ev.op));
  CHECK(std::get<DiffOp>(ev.op) == j_scalar(1, 2, 3, 2));

  doc = Json::parse(
      R"({"V":1,"N":2,"expr":{"node":"commutator","args":[{"gen":"J","a":0,"b":1},{"gen":"J","a":1,"b":0}]}})");
  ev = eval_expression(doc);
  CHECK(std::get<DiffOp>(ev.op) ==
        commutator(j_scalar(0, 1, 2, 1), j_scalar(1, 0, 2, 1)));

  doc = Json::parse(
      R"({"V":1,"N":2,"expr":{"node":"scale","coeff":"-3/2","args":[{"gen":"Cas","p":2}]}})");
  ev = eval_expression(doc);
  CHECK(std::get<DiffOp>(ev.op) == casimir(2, 2, 1).scaled(make_rational(-3, 2)));
}

TEST_CASE("expression evaluation: graded context", "[json]") {
  Json doc = Json::parse(
      R"({"V":1,"N":3,"delta":1,"expr":{"node":"anticommutator","args":[{"gen":"Q","idx":[1]},{"gen":"Qbar","idx":[0]}]}})");
  auto ev = eval_expression(doc);
  REQUIRE(std::holds_alternative<GradedOp>(ev.op));
  GenContext ctx{1, 3, 1};
  CHECK(std::get<GradedOp>(ev.op) ==
        ganticommutator(q_gen(MultiIndex({1}), ctx), qbar_gen(MultiIndex({0}), ctx)));

  doc = Json::parse(
      R"({"V":2,"N":2,"delta":1,"expr":{"node":"add","args":[{"gen":"T"},{"gen":"W","idxA":[1],"idxB":[2],"k":1}]}})");
  ev = eval_expression(doc);
  GenContext ctx2{2, 2, 1};
  CHECK(std::get<GradedOp>(ev.op) ==
        grading_t(ctx2) + w_tensor(MultiIndex({1}), MultiIndex({2}), 1, ctx2));
}

TEST_CASE("expression evaluation: coordinate multiplication", "[json]") {
  Json doc = Json::parse(R"({"V":2,"N":2,"expr":{"gen":"X","j":2}})");
  auto ev = eval_expression(doc);
  CHECK(std::get<DiffOp>(ev.op) == DiffOp::from_poly(Poly::variable(2, 2)));
}

TEST_CASE("expression evaluation rejects malformed input", "[json]") {
  CHECK_THROWS_AS(eval_expression(Json::parse(R"({"V":1,"N":2})")),
                  std::invalid_argument);
  // graded generator without delta
  CHECK_THROWS_AS(
      eval_expression(Json::parse(R"({"V":1,"N":2,"expr":{"gen":"Q","idx":[0]}})")),
      std::invalid_argument);
  // scalar-only generator with delta
  CHECK_THROWS_AS(
      eval_expression(
          Json::parse(R"({"V":1,"N":2,"delta":1,"expr":{"gen":"Jt","a":0,"b":0}})")),
      std::invalid_argument);
  // unknown node
  CHECK_THROWS_AS(
      eval_expression(
          Json::parse(R"({"V":1,"N":2,"expr":{"node":"pow","args":[{"gen":"J","a":0,"b":0}]}})")),
      std::invalid_argument);
}

TEST_CASE("check report serialization", "[json]") {
  CheckReport rep;
  rep.relation = "gl_comm";
  rep.params = {{"V", "2"}, {"N", "3"}, {"delta", "1"}};
  rep.pass = true;
  CHECK(check_report_to_json(rep).dump() ==
        R"({"relation":"gl_comm","params":{"V":2,"N":3,"delta":1},"pass":true})");
  rep.pass = false;
  rep.counterexample = "a=0 b=1";
  CHECK(Json::parse(check_report_to_json(rep).dump()).at("counterexample") == "a=0 b=1");
}

// --------------------------------------------------------------------------
// Process-level CLI checks.

TEST_CASE("cli alpha emits the frozen table row", "[cli]") {
  auto r = run_cli("alpha --delta 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"alpha\":[\"9/16\",\"0\",\"-5/2\",\"0\",\"1\"]}\n");
}

TEST_CASE("cli dim", "[cli]") {
  auto r = run_cli("dim --V 2 --N 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"dim\":6}\n");
  r = run_cli("dim --V 1 --N 3 --delta 1");
  CHECK(r.out == "{\"dim\":7}\n");
}

TEST_CASE("cli count emits rank, unknowns and closed form", "[cli]") {
  auto r = run_cli("count --case 1 --V 1 --delta 1");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("rank") == 3);
  CHECK(j.at("unknowns") == 3);
  CHECK(j.at("closed_form") == 3);

  // the exact rank; the documented closed form (9) is reported alongside it
  r = run_cli("count --case 2 --V 2 --delta 2");
  j = Json::parse(r.out);
  CHECK(j.at("rank") == 6);
  CHECK(j.at("closed_form") == 9);
}

TEST_CASE("cli classify exits zero on a full pass", "[cli]") {
  auto r = run_cli("classify --delta-max 3");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("pass") == true);
  REQUIRE(j.at("reports").size() == 5);
  CHECK(j.at("reports")[0].at("admissible_k") == Json::array({"1"}));
  CHECK(j.at("reports")[2].at("admissible_k") == Json::array({"-1"}));
  CHECK(j.at("reports")[4].at("admissible_k") == Json::array());
}

TEST_CASE("cli check passes and fails with matching exit codes", "[cli]") {
  auto r = run_cli("check --relation anticomm --V 1 --N 4 --delta 2");
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.out).at("pass") == true);

  r = run_cli("check --relation invariance --V 2 --N 3 --delta 1");
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli jacobi", "[cli]") {
  auto r = run_cli("jacobi --delta 2 --p 1");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("X1") == "4");
  CHECK(j.at("admissible_k") == Json::array({"-1"}));
  CHECK_FALSE(j.contains("X2"));
}

TEST_CASE("cli spectrum reads stdin", "[cli]") {
  auto r = run_cli("spectrum --spec -",
                   R"({"V":1,"N":2,"expr":{"node":"add","args":[{"gen":"J","a":0,"b":0}]}})");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("dim") == 3);
  CHECK(j.at("exact_complete") == true);
}

TEST_CASE("cli spectrum reports NotInvariant with exit 1", "[cli]") {
  auto r = run_cli("spectrum --spec -", R"({"V":1,"N":1,"expr":{"gen":"X","j":1}})");
  CHECK(r.exit_code == 1);
  Json j = Json::parse(r.out);
  CHECK(j.at("error") == "NotInvariant");
  CHECK(j.at("basis_element") == "x1");
  CHECK(j.at("offending_monomial") == "x1^2");
}

TEST_CASE("cli apply", "[cli]") {
  // write the polynomial through stdin; expression from a temp file
  std::string expr = R"({"V":1,"N":2,"expr":{"gen":"J","a":0,"b":1}})";
  std::string path = "/tmp/qes_test_expr.json";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f);
    fwrite(expr.data(), 1, expr.size(), f);
    fclose(f);
  }
  auto r = run_cli("apply --expr " + path + " --poly -",
                   R"({"V":1,"terms":[{"exp":[2],"coeff":"1"}]})");
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.out) ==
        Json::parse(R"({"V":1,"terms":[{"exp":[1],"coeff":"2"}]})"));
}

TEST_CASE("cli usage errors exit 2", "[cli]") {
  CHECK(run_cli("check --relation bogus --V 1 --N 1").exit_code == 2);
  CHECK(run_cli("dim --V 0 --N 1").exit_code == 2);
  CHECK(run_cli("count --case 2 --V 1 --delta 3").exit_code == 2);
  CHECK(run_cli("nosuchverb").exit_code == 2);
}

TEST_CASE("cli output is byte-stable across runs", "[cli]") {
  for (const std::string args :
       {std::string("basis --V 2 --N 2"), std::string("gen --name T --V 2 --N 3 --delta 1"),
        std::string("jacobi --delta 3"), std::string("fit --V 1 --N 3 --delta 2")}) {
    auto r1 = run_cli(args);
    auto r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
  }
}

TEST_CASE("cli spectrum --approx roots an irrational factor", "[cli]") {
  // d^2 - x(D-2) on P(2,1) has characteristic polynomial t^3 - 4
  std::string doc =
      R"({"V":1,"N":2,"expr":{"node":"add","args":[)"
      R"({"node":"mul","args":[{"gen":"J","a":0,"b":1},{"gen":"J","a":0,"b":1}]},)"
      R"({"gen":"J","a":1,"b":0}]}})";
  auto r = run_cli("spectrum --spec - --approx", doc);
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("exact_complete") == false);
  CHECK(j.at("charpoly") == Json::array({"-4", "0", "0", "1"}));
  REQUIRE(j.at("approx").size() == 3);
  for (const auto& root : j.at("approx"))
    CHECK(std::stod(root.at("residual").get<std::string>()) <= 1e-9);
}

TEST_CASE("cli help is available per verb", "[cli]") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("alpha --help").exit_code == 0);
  CHECK(run_cli("spectrum --help").exit_code == 0);
}

TEST_CASE("worker count does not change the output bytes", "[cli]") {
  std::string args = "count --case 2 --V 2 --delta 2";
  auto serial = run_cli(args);
  auto parallel = run_cli(args, "", "QES_THREADS=3 ");
  CHECK(serial.exit_code == 0);
  CHECK(parallel.exit_code == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("cli gen matches the library factories", "[cli]") {
  auto r = run_cli("gen --name Qbar --idx 0,2 --V 2 --N 3 --delta 2");
  CHECK(r.exit_code == 0);
  GenContext ctx{2, 3, 2};
  CHECK(Json::parse(r.out) ==
        Json::parse(gradedop_to_json(qbar_gen(MultiIndex({0, 2}), ctx)).dump()));
}
