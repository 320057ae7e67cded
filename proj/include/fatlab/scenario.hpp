#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatlab/fatness.hpp"
#include "fatlab/homspace.hpp"
#include "fatlab/pipeline.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab {

/// Any malformed or inconsistent scenario input; the CLI maps it to exit 2.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Algebra expressions: "su(3)", "so(5)", "sp(2)", "u(2)", "t(1)", "g2",
/// and sums joined with '+', e.g. "su(3)+t(1)".
inline AlgebraPtr parse_algebra_expr(const std::string& expr) {
  auto strip = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  std::vector<AlgebraPtr> parts;
  size_t pos = 0;
  const std::string text = strip(expr);
  if (text.empty()) throw ScenarioError("empty algebra expression");
  while (pos <= text.size()) {
    size_t next = text.find('+', pos);
    if (next == std::string::npos) next = text.size();
    const std::string part = strip(text.substr(pos, next - pos));
    if (part == "g2") {
      parts.push_back(make_g2());
    } else {
      const size_t open = part.find('(');
      if (open == std::string::npos || part.back() != ')')
        throw ScenarioError("bad algebra term '" + part + "' in '" + expr + "'");
      const std::string fam = part.substr(0, open);
      int n = 0;
      try {
        n = std::stoi(part.substr(open + 1, part.size() - open - 2));
      } catch (const std::exception&) {
        throw ScenarioError("bad parameter in algebra term '" + part + "'");
      }
      if (fam == "su")
        parts.push_back(make_su(n));
      else if (fam == "so")
        parts.push_back(make_so(n));
      else if (fam == "sp")
        parts.push_back(make_sp(n));
      else if (fam == "u")
        parts.push_back(make_u(n));
      else if (fam == "t")
        parts.push_back(make_t(n));
      else
        throw ScenarioError("unknown algebra family '" + fam + "'");
    }
    if (next == text.size()) break;
    pos = next + 1;
  }
  return parts.size() == 1 ? parts[0] : make_direct_sum(parts);
}

namespace detail {

inline Mat parse_rational_matrix(const nlohmann::json& rows, int expect_rows, int expect_cols,
                                 const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows)
    throw ScenarioError(std::string(what) + ": expected " + std::to_string(expect_rows) + " rows");
  Mat m(expect_rows, expect_cols);
  for (int r = 0; r < expect_rows; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != expect_cols)
      throw ScenarioError(std::string(what) + ": row " + std::to_string(r) + " needs " +
                          std::to_string(expect_cols) + " entries");
    for (int c = 0; c < expect_cols; ++c) m(r, c) = parse_rat(row[c].get<std::string>());
  }
  return m;
}

inline Embedding build_embedding(const nlohmann::json& spec, const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  if (!spec.is_object() || !spec.contains("kind")) throw ScenarioError("embedding spec needs a kind");
  const std::string kind = spec.at("kind").get<std::string>();
  try {
    if (kind == "block") return embed_block_upper_left(sub, ambient);
    if (kind == "sp-defining") return embed_defining_sp_in_su(sub, ambient);
    if (kind == "realify") return embed_realify(sub, ambient);
    if (kind == "realization") return embed_realization(sub, ambient);
    if (kind == "complex-structure") return embed_complex_structure_torus(sub, ambient);
    if (kind == "highest-root") return embed_highest_root_su2(sub, ambient);
    if (kind == "diagonal-torus") {
      std::vector<Rat> w;
      for (const auto& e : spec.at("weights")) w.push_back(parse_rat(e.get<std::string>()));
      return embed_diagonal_torus(sub, ambient, w);
    }
    if (kind == "matrix") {
      const Mat m = parse_rational_matrix(spec.at("matrix"), ambient->dim(), sub->dim(), "embedding matrix");
      return embed_verified(sub, ambient, m);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError("embedding '" + kind + "' rejected: " + e.what());
  }
  throw ScenarioError("unknown embedding kind '" + kind + "'");
}

}  // namespace detail

struct Scenario {
  std::string name, description;
  AlgebraPtr k, g;
  AlgebraPtr h_source, l_source;  // null when l is zero/full
  ReductivePair pair;
  InvariantConnection conn;
  Subspace l;
};

inline Scenario load_scenario(const nlohmann::json& j) {
  Scenario s;
  try {
    if (j.at("schema_version").get<int>() != 1) throw ScenarioError("unsupported scenario schema version");
    s.name = j.value("name", "");
    s.description = j.value("description", "");
    if (j.value("connection", "canonical") != "canonical")
      throw ScenarioError("only the canonical connection is supported");

    s.k = parse_algebra_expr(j.at("k").get<std::string>());

    const auto& hj = j.at("h");
    if (!hj.is_object() || !hj.contains("algebra") || !hj.contains("embed"))
      throw ScenarioError("h needs an algebra expression and an embedding");
    s.h_source = parse_algebra_expr(hj.at("algebra").get<std::string>());
    const Embedding he = detail::build_embedding(hj.at("embed"), s.h_source, s.k);
    s.pair = make_reductive_pair(s.k, make_subspace(s.k, he.matrix));

    const auto& lj = j.at("lambda");
    Mat lambda_h;
    if (lj.is_string() && lj.get<std::string>() == "inclusion") {
      if (j.at("g").get<std::string>() != j.at("k").get<std::string>())
        throw ScenarioError("lambda 'inclusion' requires g and k to be the same expression");
      s.g = s.k;
      lambda_h = s.pair.h.basis;
    } else {
      s.g = parse_algebra_expr(j.at("g").get<std::string>());
      if (lj.is_string() && lj.get<std::string>() == "identity") {
        if (s.g->dim() != s.pair.h.dim())
          throw ScenarioError("lambda 'identity' needs dim g = dim h");
        lambda_h = Mat::identity(s.g->dim());
      } else if (lj.is_object() && lj.contains("matrix")) {
        lambda_h = detail::parse_rational_matrix(lj.at("matrix"), s.g->dim(), s.pair.h.dim(), "lambda matrix");
      } else {
        throw ScenarioError("lambda must be 'identity', 'inclusion' or a matrix");
      }
    }
    try {
      s.conn = canonical_connection(s.pair, s.g, lambda_h);
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("connection rejected: ") + e.what());
    }

    const auto& ljson = j.at("l");
    if (ljson.is_string()) {
      const std::string v = ljson.get<std::string>();
      if (v == "zero")
        s.l = zero_subspace(s.g);
      else if (v == "full")
        s.l = full_subspace(s.g);
      else
        throw ScenarioError("l must be 'zero', 'full' or an embedded algebra");
    } else {
      if (!ljson.contains("algebra") || !ljson.contains("embed"))
        throw ScenarioError("l needs an algebra expression and an embedding");
      s.l_source = parse_algebra_expr(ljson.at("algebra").get<std::string>());
      const Embedding le = detail::build_embedding(ljson.at("embed"), s.l_source, s.g);
      s.l = make_subspace(s.g, le.matrix);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("scenario rejected: ") + e.what());
  }
  return s;
}

inline Scenario load_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return load_scenario(j);
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str());
}

/// Command outcome: human text, a versioned machine block, and the process
/// exit status. Wall time is kept off both renderings so identical input and
/// seed give byte-identical output.
struct Report {
  int exit_code = 0;
  std::string text;
  nlohmann::json machine;
};

namespace detail {

inline nlohmann::json machine_header(const std::string& command, const std::string& scenario_name) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["command"] = command;
  if (!scenario_name.empty()) j["scenario"] = scenario_name;
  return j;
}

}  // namespace detail

}  // namespace fatlab
