#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "qes/abstract_jacobi.hpp"
#include "qes/gens.hpp"
#include "qes/spectrum.hpp"
#include "qes/verify.hpp"

namespace qes {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Polynomials: {"V":2,"terms":[{"exp":[1,1],"coeff":"1"}, ...]} with rational
// coefficients as decimal strings. Terms are emitted in the canonical
// graded-lex order, so serialization round-trips bit-exactly.

inline Json poly_to_json(const Poly& p) {
  Json j;
  j["V"] = p.vars();
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exp"] = m;
    t["coeff"] = to_string(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline Poly poly_from_json(const Json& j) {
  if (!j.contains("V") || !j.contains("terms"))
    throw std::invalid_argument("poly: need fields V and terms");
  Poly p(j.at("V").get<int>());
  for (const auto& t : j.at("terms")) {
    Monomial m = t.at("exp").get<Monomial>();
    p.add_term(std::move(m), rational_from_string(t.at("coeff").get<std::string>()));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Operators: same layout with a "deriv" order vector per term; a graded
// operator stores its four entries under "ee","ef","fe","ff".

inline Json diffop_to_json(const DiffOp& op) {
  Json j;
  j["V"] = op.vars();
  Json terms = Json::array();
  for (const auto& [k, c] : op.terms()) {
    Json t;
    t["exp"] = k.mono;
    t["deriv"] = k.deriv;
    t["coeff"] = to_string(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline DiffOp diffop_from_json(const Json& j) {
  if (!j.contains("V") || !j.contains("terms"))
    throw std::invalid_argument("diffop: need fields V and terms");
  DiffOp op(j.at("V").get<int>());
  for (const auto& t : j.at("terms")) {
    op.add_term({t.at("exp").get<Monomial>(), t.at("deriv").get<DerivMulti>()},
                rational_from_string(t.at("coeff").get<std::string>()));
  }
  return op;
}

inline Json gradedop_to_json(const GradedOp& op) {
  Json j;
  j["V"] = op.vars();
  j["ee"] = diffop_to_json(op.ee());
  j["ef"] = diffop_to_json(op.ef());
  j["fe"] = diffop_to_json(op.fe());
  j["ff"] = diffop_to_json(op.ff());
  return j;
}

inline GradedOp gradedop_from_json(const Json& j) {
  return GradedOp(diffop_from_json(j.at("ee")), diffop_from_json(j.at("ef")),
                  diffop_from_json(j.at("fe")), diffop_from_json(j.at("ff")));
}

// ---------------------------------------------------------------------------
// Expression language. A document carries the context fields V, N and an
// optional delta next to the root node:
//   {"V":1, "N":3, "delta":1, "expr": {...}}
// Generator nodes: {"gen":"J","a":0,"b":1}, {"gen":"Jt","a":..,"b":..},
// {"gen":"Q","idx":[...]}, {"gen":"Qbar","idx":[...]}, {"gen":"T"},
// {"gen":"Cas","p":2}, {"gen":"W","idxA":[...],"idxB":[...],"k":1},
// {"gen":"X","j":1} (multiplication by x_j).
// Combining nodes: {"node":"add"|"mul"|"commutator"|"anticommutator",
// "args":[...]} and {"node":"scale","coeff":"3/2","args":[...]}.
// With delta present evaluation is graded throughout (Jt and Cas are
// scalar-only); without delta it stays scalar and yields a DiffOp.

using OpValue = std::variant<DiffOp, GradedOp>;

struct ExprContext {
  int V = 1;
  int N = 0;
  std::optional<int> delta;

  GenContext gen_context() const {
    return GenContext{V, N, delta.value_or(0)};
  }
  SpaceSpec space() const { return SpaceSpec{V, N, delta}; }
};

namespace detail {

inline MultiIndex multi_index_from_json(const Json& j) {
  return MultiIndex(j.get<std::vector<int>>());
}

inline OpValue eval_node(const Json& node, const ExprContext& ctx);

inline OpValue eval_gen(const Json& node, const ExprContext& ctx) {
  const std::string gen = node.at("gen").get<std::string>();
  const bool graded = ctx.delta.has_value();
  if (gen == "J") {
    int a = node.at("a").get<int>();
    int b = node.at("b").get<int>();
    if (graded) return j_graded(a, b, ctx.gen_context());
    return j_scalar(a, b, ctx.N, ctx.V);
  }
  if (gen == "Jt") {
    if (graded) throw std::invalid_argument("Jt is a scalar generator; drop delta");
    return j_sl(node.at("a").get<int>(), node.at("b").get<int>(), ctx.N, ctx.V);
  }
  if (gen == "Cas") {
    if (graded) throw std::invalid_argument("Cas is a scalar operator; drop delta");
    return casimir(node.at("p").get<int>(), ctx.N, ctx.V);
  }
  if (gen == "X") {
    // multiplication by a coordinate; not an enveloping-algebra element, so
    // expressions built from it can legitimately fail invariance checks
    DiffOp x = DiffOp::from_poly(Poly::variable(ctx.V, node.at("j").get<int>()));
    if (graded) return GradedOp::scalar(x);
    return x;
  }
  if (!graded)
    throw std::invalid_argument("generator '" + gen + "' needs a delta in the context");
  const GenContext g = ctx.gen_context();
  if (gen == "Q") return q_gen(multi_index_from_json(node.at("idx")), g);
  if (gen == "Qbar") return qbar_gen(multi_index_from_json(node.at("idx")), g);
  if (gen == "T") return grading_t(g);
  if (gen == "W")
    return w_tensor(multi_index_from_json(node.at("idxA")),
                    multi_index_from_json(node.at("idxB")), node.at("k").get<int>(), g);
  throw std::invalid_argument("unknown generator: " + gen);
}

template <class T, class Compose, class Comm, class Anti>
inline T combine(const std::string& op, std::vector<T> args, Compose comp, Comm comm,
                 Anti anti) {
  if (op == "add") {
    T acc = std::move(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) acc += args[i];
    return acc;
  }
  if (op == "mul") {
    T acc = std::move(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) acc = comp(acc, args[i]);
    return acc;
  }
  if (op == "commutator") {
    if (args.size() != 2) throw std::invalid_argument("commutator takes two arguments");
    return comm(args[0], args[1]);
  }
  if (op == "anticommutator") {
    if (args.size() != 2) throw std::invalid_argument("anticommutator takes two arguments");
    return anti(args[0], args[1]);
  }
  throw std::invalid_argument("unknown node: " + op);
}

inline OpValue eval_node(const Json& node, const ExprContext& ctx) {
  if (node.contains("gen")) return eval_gen(node, ctx);
  if (!node.contains("node")) throw std::invalid_argument("expression node needs 'gen' or 'node'");
  const std::string op = node.at("node").get<std::string>();
  const auto& args_json = node.at("args");
  if (!args_json.is_array() || args_json.empty())
    throw std::invalid_argument("node '" + op + "' needs a non-empty args array");

  if (op == "scale") {
    if (args_json.size() != 1) throw std::invalid_argument("scale takes one argument");
    Rational s = rational_from_string(node.at("coeff").get<std::string>());
    OpValue v = eval_node(args_json[0], ctx);
    if (std::holds_alternative<DiffOp>(v)) return std::get<DiffOp>(v).scaled(s);
    return std::get<GradedOp>(v).scaled(s);
  }

  std::vector<OpValue> args;
  args.reserve(args_json.size());
  for (const auto& a : args_json) args.push_back(eval_node(a, ctx));
  const bool graded = std::holds_alternative<GradedOp>(args[0]);
  for (const auto& a : args)
    if (std::holds_alternative<GradedOp>(a) != graded)
      throw std::invalid_argument("cannot mix scalar and graded operands");
  if (graded) {
    std::vector<GradedOp> ops;
    for (auto& a : args) ops.push_back(std::move(std::get<GradedOp>(a)));
    return combine(
        op, std::move(ops), [](const GradedOp& x, const GradedOp& y) { return gcompose(x, y); },
        [](const GradedOp& x, const GradedOp& y) { return gcommutator(x, y); },
        [](const GradedOp& x, const GradedOp& y) { return ganticommutator(x, y); });
  }
  std::vector<DiffOp> ops;
  for (auto& a : args) ops.push_back(std::move(std::get<DiffOp>(a)));
  return combine(
      op, std::move(ops), [](const DiffOp& x, const DiffOp& y) { return compose(x, y); },
      [](const DiffOp& x, const DiffOp& y) { return commutator(x, y); },
      [](const DiffOp& x, const DiffOp& y) { return anticommutator(x, y); });
}

}  // namespace detail

struct EvaluatedExpr {
  ExprContext context;
  OpValue op;
};

inline EvaluatedExpr eval_expression(const Json& doc) {
  if (!doc.contains("V") || !doc.contains("N") || !doc.contains("expr"))
    throw std::invalid_argument("expression document needs V, N and expr");
  ExprContext ctx;
  ctx.V = doc.at("V").get<int>();
  ctx.N = doc.at("N").get<int>();
  if (doc.contains("delta") && !doc.at("delta").is_null())
    ctx.delta = doc.at("delta").get<int>();
  ctx.space().validate();
  return EvaluatedExpr{ctx, detail::eval_node(doc.at("expr"), ctx)};
}

// ---------------------------------------------------------------------------
// Report serialization.

inline Json check_report_to_json(const CheckReport& rep) {
  Json j;
  j["relation"] = rep.relation;
  Json params;
  for (const auto& [k, v] : rep.params) params[k] = std::stoi(v);
  j["params"] = std::move(params);
  j["pass"] = rep.pass;
  if (!rep.pass) j["counterexample"] = rep.counterexample;
  return j;
}

inline Json alpha_to_json(const AlphaCoefficients& a) {
  Json j;
  Json vals = Json::array();
  for (const auto& v : a.values) vals.push_back(to_string(v));
  j["alpha"] = std::move(vals);
  return j;
}

inline Json jacobi_report_to_json(const JacobiReport& rep) {
  Json j;
  j["delta"] = rep.delta;
  j["p"] = rep.p;
  if (rep.X1) j["X1"] = to_string(*rep.X1);
  if (rep.Y1) j["Y1"] = to_string(*rep.Y1);
  if (rep.X2) j["X2"] = to_string(*rep.X2);
  if (rep.Y2) j["Y2"] = to_string(*rep.Y2);
  Json ks = Json::array();
  for (const auto& k : rep.admissible_k) ks.push_back(to_string(k));
  j["admissible_k"] = std::move(ks);
  return j;
}

inline Json spectrum_to_json(const SpectrumResult& res) {
  Json j;
  j["dim"] = res.dim;
  Json cp = Json::array();
  for (int i = 0; i <= res.charpoly.degree(); ++i)
    cp.push_back(to_string(res.charpoly.coeff(i)));
  j["charpoly"] = std::move(cp);
  Json eig = Json::array();
  for (const auto& e : res.rational) {
    Json entry;
    entry["value"] = to_string(e.value);
    entry["multiplicity"] = e.multiplicity;
    eig.push_back(std::move(entry));
  }
  j["eigenvalues"] = std::move(eig);
  if (!res.quadratic.empty()) {
    Json quads = Json::array();
    for (const auto& q : res.quadratic) {
      Json entry;
      entry["center"] = to_string(q.center);
      entry["half"] = to_string(q.half);
      entry["radicand"] = q.radicand.get_str();
      quads.push_back(std::move(entry));
    }
    j["quadratic_pairs"] = std::move(quads);
  }
  j["exact_complete"] = res.exact_complete;
  return j;
}

}  // namespace qes
