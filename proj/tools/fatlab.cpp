#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fatlab/fatness.hpp"
#include "fatlab/pipeline.hpp"
#include "fatlab/scenario.hpp"
#include "fatlab/tables.hpp"

namespace {

using namespace fatlab;
using nlohmann::json;

constexpr int kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitUndetermined = 3;

struct GlobalOpts {
  std::uint64_t seed = 2;
  std::string format = "text";
  int nmax = 12;
  double tau_fat = 1e-8;
  double tau_deg = 1e-12;
};

json rat_vec_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(rat_to_string(r));
  return a;
}

void emit(const GlobalOpts& opts, const Report& rep) {
  if (opts.format == "machine")
    std::cout << rep.machine.dump(2) << "\n";
  else
    std::cout << rep.text;
}

Report audit_report(const std::string& path, const GlobalOpts& opts) {
  Report rep;
  rep.machine = fatlab::detail::machine_header("check-algebra", "");
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("not valid JSON: ") + e.what());
  }

  // Accept a full scenario (audits every constructed algebra), a bare
  // {"algebra": expr}, or {"raw_algebra": {...}} for corrupted fixtures.
  std::vector<std::pair<std::string, AlgebraPtr>> targets;
  if (j.contains("k")) {
    const Scenario s = load_scenario(j);
    rep.machine["scenario"] = s.name;
    targets.push_back({"k = " + j.at("k").get<std::string>(), s.k});
    if (s.g != s.k) targets.push_back({"g = " + j.at("g").get<std::string>(), s.g});
    if (s.h_source) targets.push_back({"h = " + j.at("h").at("algebra").get<std::string>(), s.h_source});
    if (s.l_source) targets.push_back({"l = " + j.at("l").at("algebra").get<std::string>(), s.l_source});
  } else if (j.contains("algebra") && j.at("algebra").is_string()) {
    targets.push_back({j.at("algebra").get<std::string>(), parse_algebra_expr(j.at("algebra").get<std::string>())});
  } else if (j.contains("raw_algebra")) {
    const auto& r = j.at("raw_algebra");
    const int d = r.at("dim").get<int>();
    const Mat form = fatlab::detail::parse_rational_matrix(r.at("form"), d, d, "raw form");
    std::vector<SparseVec> table(static_cast<size_t>(d) * d);
    for (const auto& ent : r.at("brackets")) {
      const int i = ent.at("i").get<int>(), jj = ent.at("j").get<int>();
      if (i < 0 || i >= d || jj < 0 || jj >= d) throw ScenarioError("raw bracket index out of range");
      SparseVec sv;
      for (const auto& kv : ent.at("v")) sv.push_back({kv.at(0).get<int>(), parse_rat(kv.at(1).get<std::string>())});
      table[static_cast<size_t>(i) * d + jj] = std::move(sv);
    }
    targets.push_back({"raw", std::make_shared<LieAlgebra>(d, form, std::move(table), "raw")});
  } else {
    throw ScenarioError("expected a scenario, an 'algebra' expression or a 'raw_algebra' block");
  }

  std::ostringstream text;
  json results = json::array();
  bool all_ok = true;
  for (const auto& [label, alg] : targets) {
    const AlgebraReport ar = check_algebra(*alg);
    all_ok = all_ok && ar.ok;
    text << label << ": " << (ar.ok ? "ok" : "FAIL") << " (dim " << alg->dim() << ")\n";
    json violations = json::array();
    for (const AlgebraViolation& v : ar.violations) {
      text << "  " << v.identity << " at (";
      json idx = json::array();
      for (size_t t = 0; t < v.indices.size(); ++t) {
        text << (t ? "," : "") << v.indices[t];
        idx.push_back(v.indices[t]);
      }
      text << "): " << v.detail << "\n";
      violations.push_back({{"identity", v.identity}, {"indices", idx}, {"detail", v.detail}});
    }
    results.push_back({{"algebra", label}, {"ok", ar.ok}, {"violations", violations}});
  }
  text << "overall: " << (all_ok ? "pass" : "fail") << "\n";
  rep.machine["result"] = {{"pass", all_ok}, {"algebras", results}};
  rep.text = text.str();
  rep.exit_code = all_ok ? kExitPass : kExitFail;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

Report fat_report(const std::string& path, const GlobalOpts& opts) {
  const Scenario s = load_scenario_file(path);
  FatnessConfig cfg;
  cfg.tau_fat = opts.tau_fat;
  cfg.tau_deg = opts.tau_deg;
  cfg.seed = opts.seed;
  const SkewPencil pencil = build_pencil(s.conn, s.l);
  const FatnessVerdict v = decide_fat(pencil, cfg);

  Report rep;
  rep.machine = fatlab::detail::machine_header("fat", s.name);
  rep.machine["seed"] = opts.seed;
  std::ostringstream text;
  text << "scenario: " << s.name << "\n";
  text << "pencil: u_dim " << pencil.u_dim() << ", horizontal dim " << pencil.m_dim() << "\n";
  text << "verdict: " << fatness_name(v.verdict) << "\n";
  text << "method: " << v.method << "\n";
  text << "exact: " << (v.exact ? "yes" : "no") << "\n";
  if (!v.detail.empty()) text << "detail: " << v.detail << "\n";
  json result;
  result["verdict"] = fatness_name(v.verdict);
  result["method"] = v.method;
  result["exact"] = v.exact;
  result["detail"] = v.detail;
  result["u_dim"] = pencil.u_dim();
  result["m_dim"] = pencil.m_dim();
  if (!v.witness_u.empty()) {
    text << "witness u = " << vec_to_string(v.witness_u) << (v.witness_exact ? " (exact)" : " (rationalized)")
         << "\n";
    result["witness_u"] = rat_vec_json(v.witness_u);
    result["witness_exact"] = v.witness_exact;
  }
  if (!v.witness_kernel.empty()) {
    text << "kernel vector = " << vec_to_string(v.witness_kernel) << "\n";
    result["witness_kernel"] = rat_vec_json(v.witness_kernel);
  }
  if (!v.cert_neg.empty() || !v.cert_pos.empty()) {
    text << "sign-change certificate: pfaffian < 0 at " << vec_to_string(v.cert_neg) << ", > 0 at "
         << vec_to_string(v.cert_pos) << "\n";
    result["cert_neg"] = rat_vec_json(v.cert_neg);
    result["cert_pos"] = rat_vec_json(v.cert_pos);
  }
  if (v.min_sigma >= 0) {
    text << "min sigma: " << v.min_sigma << "\n";
    result["min_sigma"] = v.min_sigma;
  }
  rep.machine["result"] = result;
  rep.text = text.str();
  rep.exit_code = v.verdict == Fatness::Fat      ? kExitPass
                  : v.verdict == Fatness::NotFat ? kExitFail
                                                 : kExitUndetermined;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

Report classify_report(const std::string& path, const GlobalOpts& opts) {
  const Scenario s = load_scenario_file(path);
  const std::string h_name = s.h_source ? natural_type_string(s.h_source) : "";
  const ConditionReport r = verify_necessary_conditions(s.conn, s.l, opts.nmax, opts.seed, h_name);

  Report rep;
  rep.machine = fatlab::detail::machine_header("classify", s.name);
  rep.machine["seed"] = opts.seed;
  std::ostringstream text;
  text << "scenario: " << s.name << "\n";
  json conds = json::array();
  for (const Condition& c : r.conditions) {
    text << "(" << c.id << ") " << c.title << ": " << c.status << " -- " << c.detail << "\n";
    conds.push_back({{"id", c.id}, {"title", c.title}, {"status", c.status}, {"detail", c.detail}});
  }
  text << "conclusion: " << r.conclusion << "\n";
  text << "overall: " << (r.all_pass ? "pass" : "fail") << "\n";
  rep.machine["result"] = {{"all_pass", r.all_pass}, {"conclusion", r.conclusion}, {"conditions", conds}};
  rep.text = text.str();
  rep.exit_code = r.all_pass ? kExitPass : kExitFail;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

Report tables_disjoint_report(const GlobalOpts& opts, bool inject_fake) {
  std::vector<Table2Row> extra;
  if (inject_fake) {
    Table2Row fake;
    fake.row = 99;
    fake.bb_case = 'X';
    fake.h = parse_symbolic_sum("C(2)");
    fake.hl = parse_symbolic_sum("C(1)");
    extra.push_back(fake);
  }
  const DisjointReport d = tables_disjoint(opts.nmax, extra);
  Report rep;
  rep.machine = fatlab::detail::machine_header("tables-disjoint", "");
  std::ostringstream text;
  text << "checked " << d.pairs_checked << " pairs up to n = " << opts.nmax;
  if (inject_fake) text << " (with injected control row)";
  text << "\n";
  if (!d.note.empty()) text << "note: " << d.note << "\n";
  json colls = json::array();
  for (const Collision& c : d.collisions) {
    text << "collision: row " << c.t1_row;
    if (c.n > 0) text << " at n = " << c.n;
    text << " pair " << c.pair << " matches case (" << c.via.bb_case << ") row " << c.via.row << "\n";
    colls.push_back({{"t1_row", c.t1_row}, {"n", c.n}, {"pair", c.pair},
                     {"via_case", std::string(1, c.via.bb_case)}, {"via_row", c.via.row}});
  }
  text << (d.collisions.empty() ? "no collisions\n" : "");
  rep.machine["result"] = {{"pairs_checked", d.pairs_checked}, {"collisions", colls}, {"note", d.note}};
  rep.text = text.str();
  rep.exit_code = d.collisions.empty() ? kExitPass : kExitFail;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

Report tables_list_report(const GlobalOpts& opts, int which) {
  const Tables& tb = tables();
  Report rep;
  rep.machine = fatlab::detail::machine_header("tables-list", "");
  std::ostringstream text;
  json rows = json::array();
  if (which == 1) {
    for (const Table1Row& r : tb.t1) {
      text << "row " << r.row << ": g = " << r.g.text << ", h = " << r.h.text << " [" << r.emb_h
           << "], l = " << r.l.text << " [" << r.emb_l << "], h cap l = " << r.hl.text;
      if (r.has_n) text << " (n >= " << r.min_n << ")";
      text << (r.constructible ? "" : " [symbolic-only]") << "\n";
      rows.push_back({{"row", r.row}, {"g", r.g.text}, {"h", r.h.text}, {"emb_h", r.emb_h},
                      {"l", r.l.text}, {"emb_l", r.emb_l}, {"hl", r.hl.text},
                      {"min_n", r.has_n ? json(r.min_n) : json()}, {"constructible", r.constructible}});
    }
  } else {
    for (const Table2Row& r : tb.t2) {
      text << "row " << r.row << " case (" << r.bb_case << "): h = " << r.h.text
           << ", h cap l = " << r.hl.text;
      if (r.has_n) text << " (n >= " << r.min_n << ")";
      text << "\n";
      rows.push_back({{"row", r.row}, {"case", std::string(1, r.bb_case)}, {"h", r.h.text},
                      {"hl", r.hl.text}, {"min_n", r.has_n ? json(r.min_n) : json()}});
    }
  }
  rep.machine["result"] = {{"table", which}, {"rows", rows}};
  rep.text = text.str();
  rep.exit_code = kExitPass;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

Report tables_spot_report(const GlobalOpts& opts, int row, int n) {
  const SpotReport sr = numeric_spot_check(row, n, opts.seed);
  Report rep;
  rep.machine = fatlab::detail::machine_header("tables-spot-check", "");
  std::ostringstream text;
  text << "row " << sr.row;
  if (sr.n > 0) text << " at n = " << sr.n;
  if (!sr.applicable) {
    text << ": skipped (" << sr.skipped << ")\n";
  } else {
    text << ": " << (sr.pass ? "pass" : "fail") << " -- " << sr.message << "\n";
    text << "dims: g " << sr.g_dim << " = h " << sr.h_dim << " + l " << sr.l_dim << ", intersection "
         << sr.inter_dim << " of type " << sr.inter_type << "\n";
  }
  rep.machine["result"] = {{"row", sr.row},       {"n", sr.n},
                           {"applicable", sr.applicable}, {"skipped", sr.skipped},
                           {"pass", sr.pass},     {"message", sr.message},
                           {"g_dim", sr.g_dim},   {"h_dim", sr.h_dim},
                           {"l_dim", sr.l_dim},   {"inter_dim", sr.inter_dim},
                           {"inter_type", sr.inter_type}};
  rep.text = text.str();
  rep.exit_code = (!sr.applicable || sr.pass) ? kExitPass : kExitFail;
  rep.machine["exit_code"] = rep.exit_code;
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fatlab: fatness of canonical invariant connections on homogeneous bundles"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "deterministic seed (FATLAB_SEED env overrides)");
  app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--nmax", opts.nmax, "table parameter bound");
  app.add_option("--tau-fat", opts.tau_fat, "numerical fatness threshold");
  app.add_option("--tau-deg", opts.tau_deg, "numerical degeneracy threshold");

  std::string file;
  CLI::App* c_check = app.add_subcommand("check-algebra", "exact structure audits of the algebras in a file");
  c_check->add_option("file", file, "scenario or algebra JSON")->required();
  CLI::App* c_fat = app.add_subcommand("fat", "decide fatness of a scenario's canonical connection");
  c_fat->add_option("file", file, "scenario JSON")->required();
  CLI::App* c_classify = app.add_subcommand("classify", "evaluate the necessary conditions for fatness");
  c_classify->add_option("file", file, "scenario JSON")->required();

  CLI::App* c_tables = app.add_subcommand("tables", "classification table queries");
  c_tables->require_subcommand(1);
  bool inject_fake = false;
  CLI::App* t_disjoint = c_tables->add_subcommand("disjoint", "audit Table 1 against the Table 2 pairs");
  t_disjoint->add_flag("--inject-fake", inject_fake, "add a deliberately colliding control row");
  int which_table = 2;
  CLI::App* t_list = c_tables->add_subcommand("list", "print table rows");
  t_list->add_option("--table", which_table, "1 or 2")->check(CLI::IsMember({1, 2}));
  int spot_row = 1, spot_n = 0;
  CLI::App* t_spot = c_tables->add_subcommand("spot-check", "build a Table 1 row concretely and verify it");
  t_spot->add_option("--row", spot_row, "Table 1 row")->required();
  t_spot->add_option("--n", spot_n, "parameter value for parametric rows");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("FATLAB_SEED")) {
    try {
      opts.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: FATLAB_SEED is not an integer\n";
      return kExitInput;
    }
  }

  try {
    Report rep;
    if (c_check->parsed())
      rep = audit_report(file, opts);
    else if (c_fat->parsed())
      rep = fat_report(file, opts);
    else if (c_classify->parsed())
      rep = classify_report(file, opts);
    else if (t_disjoint->parsed())
      rep = tables_disjoint_report(opts, inject_fake);
    else if (t_list->parsed())
      rep = tables_list_report(opts, which_table);
    else
      rep = tables_spot_report(opts, spot_row, spot_n);
    emit(opts, rep);
    return rep.exit_code;
  } catch (const fatlab::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
}
