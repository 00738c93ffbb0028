// Command-line front end: construction of the generators, verification of the
// algebra relations, constraint counting, the formal Jacobi classification and
// QES spectra. All machine output is JSON and byte-stable for fixed inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qes/approx_roots.hpp"
#include "qes/json_io.hpp"
#include "qes/symm.hpp"

namespace {

using qes::Json;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad JSON in " + what + ": " + e.what());
  }
}

void emit(const Json& j, const std::string& format) {
  if (format == "text")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << j.dump() << "\n";
}

using qes::Integer;

std::optional<Integer> closed_form(int case_, int V, int delta) {
  if (case_ == 1) return qes::binomial(2 * delta + V, V);
  if (V == 1) return Integer(delta) * (delta - 1) / 2;
  if (delta == 2) {
    Integer v(V);
    return v * (v + 1) * (v * v + 9 * v - 4) / 12;
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qes: exact operator algebra on polynomial spaces P(N,V) and "
      "P(N-delta,V)+P(N,V).\nSet QES_THREADS to cap internal parallelism."};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  int V = 1, N = 0, delta = 0, delta_max = 1, case_ = 1, p = 0, k = 0, a = 0, b = 0;
  bool have_delta = false, approx = false;
  std::string relation, gen_name, expr_path, poly_path, coeff;
  std::vector<int> idx, idxA, idxB;

  auto add_ctx = [&](CLI::App* cmd, bool need_delta) {
    cmd->add_option("--V", V, "number of variables")->required();
    cmd->add_option("--N", N, "maximal total degree")->required();
    auto* d = cmd->add_option("--delta", delta, "degree gap of the graded sum");
    if (need_delta)
      d->required();
    else
      d->each([&](const std::string&) { have_delta = true; });
  };

  auto* cmd_basis = app.add_subcommand(
      "basis", "monomial basis of P(N,V), or of P(N-delta,V)+P(N,V) with --delta");
  add_ctx(cmd_basis, false);

  auto* cmd_dim = app.add_subcommand("dim", "dimension of the space");
  add_ctx(cmd_dim, false);

  auto* cmd_gen = app.add_subcommand(
      "gen",
      "construct a named generator: J(a,b), Jt(a,b), Q(idx), Qbar(idx), T, "
      "Cas(p), W(idxA,idxB,k)");
  add_ctx(cmd_gen, false);
  cmd_gen->add_option("--name", gen_name, "generator name")
      ->required()
      ->check(CLI::IsMember({"J", "Jt", "Q", "Qbar", "T", "Cas", "W"}));
  cmd_gen->add_option("--a", a, "lower index");
  cmd_gen->add_option("--b", b, "upper index");
  cmd_gen->add_option("--idx", idx, "multi-index for Q/Qbar")->delimiter(',');
  cmd_gen->add_option("--idxA", idxA, "lower multi-index for W")->delimiter(',');
  cmd_gen->add_option("--idxB", idxB, "upper multi-index for W")->delimiter(',');
  cmd_gen->add_option("--k", k, "chain length for W");
  cmd_gen->add_option("--p", p, "power for Cas");

  auto* cmd_apply = app.add_subcommand(
      "apply", "apply an operator expression to a polynomial (graded: "
               "{\"upper\":...,\"lower\":...})");
  cmd_apply->add_option("--expr", expr_path, "expression document ('-' for stdin)")
      ->required();
  cmd_apply->add_option("--poly", poly_path, "polynomial file ('-' for stdin)")
      ->required();

  auto* cmd_check = app.add_subcommand(
      "check",
      "verify one structural relation exactly; exits 0 only on a full pass.\n"
      "Relations: gl_comm (commutators of the bosonic generators), adjoint_q / "
      "adjoint_qbar (multiplet action with weight delta), grading (grading "
      "operator weights), nilpotent (vanishing Q and Qbar products), anticomm "
      "(anticommutator expansion in W tensors), invariance (all generators "
      "preserve the space)");
  add_ctx(cmd_check, false);
  cmd_check->add_option("--relation", relation, "relation name")
      ->required()
      ->check(CLI::IsMember({"gl_comm", "adjoint_q", "adjoint_qbar", "grading",
                             "nilpotent", "anticomm", "invariance"}));

  auto* cmd_alpha = app.add_subcommand(
      "alpha", "anticommutator expansion coefficients alpha_0..alpha_delta");
  cmd_alpha->add_option("--delta", delta, "degree gap")->required();

  auto* cmd_fit = app.add_subcommand(
      "fit", "recover the alpha coefficients from the representation by an "
             "exact linear fit");
  add_ctx(cmd_fit, true);

  auto* cmd_count = app.add_subcommand(
      "count", "exact rank of the symmetrized anticommutator constraints "
               "(case 1: one-row tableau, case 2: square tableau)");
  cmd_count->add_option("--case", case_, "1 or 2")->required()->check(CLI::Range(1, 2));
  cmd_count->add_option("--V", V, "number of variables")->required();
  cmd_count->add_option("--delta", delta, "degree gap")->required();

  auto* cmd_jacobi = app.add_subcommand(
      "jacobi", "formal Jacobi expansion coefficients and admissible weights "
                "for one delta (optionally one p)");
  cmd_jacobi->add_option("--delta", delta, "degree gap")->required();
  auto* popt = cmd_jacobi->add_option("--p", p, "second tableau row half-length");

  auto* cmd_classify = app.add_subcommand(
      "classify", "admissible weights for every tableau up to delta-max; "
                  "exits 0 only if they match the two closure cases");
  cmd_classify->add_option("--delta-max", delta_max, "largest delta")->required();

  auto* cmd_spectrum = app.add_subcommand(
      "spectrum", "exact characteristic polynomial and eigenvalues of an "
                  "operator expression on its space");
  cmd_spectrum->add_option("--spec", expr_path, "expression document ('-' for stdin)")
      ->required();
  cmd_spectrum->add_flag("--approx", approx,
                         "also report floating-point roots with residuals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_basis)) {
      qes::SpaceSpec spec{V, N, have_delta ? std::optional<int>(delta) : std::nullopt};
      auto mons = qes::basis(spec);
      Json j;
      j["V"] = V;
      j["N"] = N;
      if (have_delta) {
        j["delta"] = delta;
        j["upper_dim"] = qes::to_u64(qes::binomial(N - delta + V, V));
      }
      j["dim"] = qes::dimension(spec);
      j["monomials"] = mons;
      emit(j, format);
      return 0;
    }

    if (app.got_subcommand(cmd_dim)) {
      qes::SpaceSpec spec{V, N, have_delta ? std::optional<int>(delta) : std::nullopt};
      Json j;
      j["dim"] = qes::dimension(spec);
      emit(j, format);
      return 0;
    }

    if (app.got_subcommand(cmd_gen)) {
      qes::GenContext ctx{V, N, delta};
      Json j;
      if (gen_name == "J") {
        if (have_delta)
          j = qes::gradedop_to_json(qes::j_graded(a, b, ctx));
        else
          j = qes::diffop_to_json(qes::j_scalar(a, b, N, V));
      } else if (gen_name == "Jt") {
        j = qes::diffop_to_json(qes::j_sl(a, b, N, V));
      } else if (gen_name == "Cas") {
        j = qes::diffop_to_json(qes::casimir(p, N, V));
      } else if (gen_name == "Q") {
        j = qes::gradedop_to_json(qes::q_gen(qes::MultiIndex(idx), ctx));
      } else if (gen_name == "Qbar") {
        j = qes::gradedop_to_json(qes::qbar_gen(qes::MultiIndex(idx), ctx));
      } else if (gen_name == "T") {
        j = qes::gradedop_to_json(qes::grading_t(ctx));
      } else {
        j = qes::gradedop_to_json(
            qes::w_tensor(qes::MultiIndex(idxA), qes::MultiIndex(idxB), k, ctx));
      }
      emit(j, format);
      return 0;
    }

    if (app.got_subcommand(cmd_apply)) {
      auto doc = parse_json(slurp(expr_path), "expression");
      auto evaluated = qes::eval_expression(doc);
      auto pj = parse_json(slurp(poly_path), "polynomial");
      if (std::holds_alternative<qes::DiffOp>(evaluated.op)) {
        qes::Poly img = std::get<qes::DiffOp>(evaluated.op).apply(qes::poly_from_json(pj));
        emit(qes::poly_to_json(img), format);
      } else {
        qes::GradedVector v(qes::poly_from_json(pj.at("upper")),
                            qes::poly_from_json(pj.at("lower")));
        qes::GradedVector img = std::get<qes::GradedOp>(evaluated.op).gapply(v);
        Json j;
        j["upper"] = qes::poly_to_json(img.upper);
        j["lower"] = qes::poly_to_json(img.lower);
        emit(j, format);
      }
      return 0;
    }

    if (app.got_subcommand(cmd_check)) {
      qes::GenContext ctx{V, N, delta};
      qes::CheckReport rep;
      if (relation == "invariance")
        rep = have_delta ? qes::check_invariance_graded(ctx)
                         : qes::check_invariance_scalar(N, V);
      else
        rep = qes::check_relation(qes::relation_from_name(relation), ctx);
      emit(qes::check_report_to_json(rep), format);
      return rep.pass ? 0 : 1;
    }

    if (app.got_subcommand(cmd_alpha)) {
      emit(qes::alpha_to_json(qes::solve_alpha(delta)), format);
      return 0;
    }

    if (app.got_subcommand(cmd_fit)) {
      emit(qes::alpha_to_json(qes::fit_anticommutator(qes::GenContext{V, N, delta})),
           format);
      return 0;
    }

    if (app.got_subcommand(cmd_count)) {
      long long rank = qes::count_constraints(case_, V, delta);
      Json j;
      j["rank"] = rank;
      j["unknowns"] = qes::constraint_unknowns(V, delta);
      auto cf = closed_form(case_, V, delta);
      if (cf)
        j["closed_form"] = qes::to_u64(*cf);
      else
        j["closed_form"] = nullptr;
      emit(j, format);
      return 0;
    }

    if (app.got_subcommand(cmd_jacobi)) {
      Json j;
      if (popt->count() > 0) {
        j = qes::jacobi_report_to_json(qes::jacobi_report(delta, p));
      } else {
        Json reports = Json::array();
        for (int pp = 0; 2 * pp <= delta; ++pp)
          reports.push_back(qes::jacobi_report_to_json(qes::jacobi_report(delta, pp)));
        j["delta"] = delta;
        j["reports"] = std::move(reports);
      }
      emit(j, format);
      return 0;
    }

    if (app.got_subcommand(cmd_classify)) {
      bool all_pass = true;
      Json reports = Json::array();
      for (const auto& rep : qes::classify(delta_max)) {
        Json rj = qes::jacobi_report_to_json(rep);
        auto expected = qes::expected_admissible_k(rep.delta, rep.p);
        Json ek = Json::array();
        for (const auto& kv : expected) ek.push_back(qes::to_string(kv));
        bool pass = rep.admissible_k == expected;
        rj["expected_k"] = std::move(ek);
        rj["pass"] = pass;
        all_pass = all_pass && pass;
        reports.push_back(std::move(rj));
      }
      Json j;
      j["delta_max"] = delta_max;
      j["reports"] = std::move(reports);
      j["pass"] = all_pass;
      emit(j, format);
      return all_pass ? 0 : 1;
    }

    if (app.got_subcommand(cmd_spectrum)) {
      auto doc = parse_json(slurp(expr_path), "expression");
      auto evaluated = qes::eval_expression(doc);
      qes::SpaceSpec spec = evaluated.context.space();
      qes::SpectrumResult res;
      if (std::holds_alternative<qes::DiffOp>(evaluated.op))
        res = qes::spectrum(std::get<qes::DiffOp>(evaluated.op), spec);
      else
        res = qes::spectrum(std::get<qes::GradedOp>(evaluated.op), spec);
      Json j = qes::spectrum_to_json(res);
      if (approx && !res.unresolved.is_zero()) {
        Json roots = Json::array();
        char buf[64];
        for (const auto& r : qes::approx_roots(res.unresolved)) {
          Json entry;
          std::snprintf(buf, sizeof buf, "%.17g", r.re);
          entry["re"] = std::string(buf);
          std::snprintf(buf, sizeof buf, "%.17g", r.im);
          entry["im"] = std::string(buf);
          std::snprintf(buf, sizeof buf, "%.3g", r.residual);
          entry["residual"] = std::string(buf);
          roots.push_back(std::move(entry));
        }
        j["approx"] = std::move(roots);
      }
      emit(j, format);
      return 0;
    }
  } catch (const qes::NotInvariantError& e) {
    Json j;
    j["error"] = "NotInvariant";
    j["basis_element"] = e.basis_element;
    j["offending_monomial"] = e.offending_monomial;
    emit(j, format);
    return 1;
  } catch (const qes::DegenerateFitError& e) {
    Json j;
    j["error"] = "DegenerateFit";
    j["rank"] = e.rank;
    j["unknowns"] = e.unknowns;
    emit(j, format);
    return 1;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = "usage";
    j["message"] = e.what();
    emit(j, format);
    return 2;
  }
  return 2;
}
