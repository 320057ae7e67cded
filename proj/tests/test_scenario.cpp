#include <catch_amalgamated.hpp>

#include "fatlab/pipeline.hpp"
#include "fatlab/scenario.hpp"

using namespace fatlab;

namespace {

std::string scenario_path(const char* file) {
  return std::string(FATLAB_SOURCE_DIR) + "/scenarios/" + file;
}

}  // namespace

TEST_CASE("natural type spellings follow the source family") {
  REQUIRE(natural_type_string(make_sp(2)) == "C2");
  REQUIRE(natural_type_string(make_su(4)) == "A3");
  REQUIRE(natural_type_string(make_su(2)) == "A1");
  REQUIRE(natural_type_string(make_so(7)) == "B3");
  REQUIRE(natural_type_string(make_so(8)) == "D4");
  REQUIRE(natural_type_string(make_so(2)) == "T");
  REQUIRE(natural_type_string(make_u(1)) == "T");
  REQUIRE(natural_type_string(make_u(3)) == "A2+T");
  REQUIRE(natural_type_string(make_g2()) == "G2");
  REQUIRE(natural_type_string(make_t(2)) == "T+T");
  REQUIRE(natural_type_string(parse_algebra_expr("su(3)+t(1)")) == "A2+T");
}

TEST_CASE("hinted spellings only apply genuine low-rank coincidences") {
  REQUIRE(hinted_type_string(identify(make_sp(1)), 'C') == "C1");
  REQUIRE(hinted_type_string(identify(make_su(2)), 'B') == "B1");
  REQUIRE(hinted_type_string(identify(make_sp(2)), 'C') == "C2");  // B2 respelled toward C
  REQUIRE(hinted_type_string(identify(make_su(2)), 'A') == "A1");
  REQUIRE(hinted_type_string(identify(make_su(3)), 'C') == "A2");  // rank 2 A stays
  REQUIRE(hinted_type_string(identify(make_u(2)), 'C') == "C1+T");
  REQUIRE(hinted_type_string(identify(make_so(7)), 'C') == "B3");  // rank 3 never respelled
}

TEST_CASE("algebra expression parser") {
  REQUIRE(parse_algebra_expr("su(3)")->dim() == 8);
  REQUIRE(parse_algebra_expr("g2")->dim() == 14);
  REQUIRE(parse_algebra_expr("su(2)+t(1)+so(3)")->dim() == 7);
  REQUIRE_THROWS_AS(parse_algebra_expr("sl(2)"), ScenarioError);
  REQUIRE_THROWS_AS(parse_algebra_expr("su(x)"), ScenarioError);
  REQUIRE_THROWS_AS(parse_algebra_expr(""), ScenarioError);
}

TEST_CASE("bundled hopf scenario loads and is fat with all conditions passing") {
  Scenario s = load_scenario_file(scenario_path("hopf.json"));
  REQUIRE(s.name == "hopf");
  REQUIRE(s.pair.m.dim() == 2);
  REQUIRE(s.g->dim() == 1);
  REQUIRE(s.l.dim() == 0);

  SkewPencil p = build_pencil(s.conn, s.l);
  REQUIRE(p.u_dim() == 1);
  REQUIRE(p.m_dim() == 2);
  FatnessVerdict v = decide_fat(p);
  REQUIRE(v.verdict == Fatness::Fat);
  REQUIRE(v.method == "single-form-det");
  REQUIRE(v.exact);

  ConditionReport r = verify_necessary_conditions(s.conn, s.l, 12, 2, natural_type_string(s.h_source));
  REQUIRE(r.conditions.size() == 5);
  REQUIRE(r.all_pass);
  REQUIRE(r.conclusion == "all necessary conditions hold");
  REQUIRE(r.conditions[1].status == "pass");  // fiber dim 1: no table constraint
  REQUIRE(r.conditions[4].status == "not-applicable");  // g is a torus, not simple
}

TEST_CASE("bundled 4-sphere scenario: conditions pass yet the bundle is not fat") {
  Scenario s = load_scenario_file(scenario_path("s4_sphere.json"));
  REQUIRE(s.pair.m.dim() == 4);
  SkewPencil p = build_pencil(s.conn, s.l);
  REQUIRE(p.u_dim() == 3);
  REQUIRE(p.m_dim() == 4);
  FatnessVerdict v = decide_fat(p);
  REQUIRE(v.verdict == Fatness::NotFat);
  REQUIRE(v.exact);

  ConditionReport r = verify_necessary_conditions(s.conn, s.l, 12, 2, natural_type_string(s.h_source));
  REQUIRE(r.all_pass);  // necessary, not sufficient
  REQUIRE(r.conditions[1].detail.find("case (B)") != std::string::npos);
}

TEST_CASE("bundled counterexample scenario fails the table membership condition") {
  Scenario s = load_scenario_file(scenario_path("su4_sp2_counterexample.json"));
  REQUIRE(s.g == s.k);
  REQUIRE(s.l.dim() == 9);
  REQUIRE(s.pair.h.dim() == 10);

  ConditionReport r = verify_necessary_conditions(s.conn, s.l, 12, 2, natural_type_string(s.h_source));
  REQUIRE_FALSE(r.all_pass);
  REQUIRE(r.conclusion == "pair (C2, C1+T) not in Table 2 => no fat canonical-connection bundle");
  REQUIRE(r.conditions[0].status == "pass");
  REQUIRE(r.conditions[1].status == "fail");
  REQUIRE(r.conditions[2].status == "fail");  // symmetric but rank 2 < rank 3
  REQUIRE(r.conditions[2].detail == "symmetric = yes, maximal rank = no");
  REQUIRE(r.conditions[4].status == "fail");  // g simple yet g != lambda(h)
}

TEST_CASE("condition reports are deterministic") {
  Scenario a = load_scenario_file(scenario_path("su4_sp2_counterexample.json"));
  Scenario b = load_scenario_file(scenario_path("su4_sp2_counterexample.json"));
  ConditionReport ra = verify_necessary_conditions(a.conn, a.l, 12, 2, natural_type_string(a.h_source));
  ConditionReport rb = verify_necessary_conditions(b.conn, b.l, 12, 2, natural_type_string(b.h_source));
  REQUIRE(ra.conclusion == rb.conclusion);
  REQUIRE(ra.conditions.size() == rb.conditions.size());
  for (size_t i = 0; i < ra.conditions.size(); ++i) {
    REQUIRE(ra.conditions[i].status == rb.conditions[i].status);
    REQUIRE(ra.conditions[i].detail == rb.conditions[i].detail);
  }
}

TEST_CASE("scenario loader rejects malformed input with ScenarioError") {
  // not json at all
  REQUIRE_THROWS_AS(load_scenario_text("{nope"), ScenarioError);
  // wrong schema version
  REQUIRE_THROWS_AS(load_scenario_text(R"json({"schema_version": 2})json"), ScenarioError);
  // missing h
  REQUIRE_THROWS_AS(load_scenario_text(
                        R"json({"schema_version":1,"k":"su(2)","g":"t(1)","lambda":"identity","l":"zero","connection":"canonical"})json"),
                    ScenarioError);
  // identity lambda with mismatched dimensions
  REQUIRE_THROWS_AS(
      load_scenario_text(
          R"json({"schema_version":1,"k":"su(3)","h":{"algebra":"t(1)","embed":{"kind":"diagonal-torus","weights":["1","-1","0"]}},"g":"su(2)","lambda":"identity","l":"zero","connection":"canonical"})json"),
      ScenarioError);
  // unknown embedding kind
  REQUIRE_THROWS_AS(
      load_scenario_text(
          R"json({"schema_version":1,"k":"su(2)","h":{"algebra":"t(1)","embed":{"kind":"mystery"}},"g":"t(1)","lambda":"identity","l":"zero","connection":"canonical"})json"),
      ScenarioError);
  // non-canonical connection is rejected
  REQUIRE_THROWS_AS(
      load_scenario_text(
          R"json({"schema_version":1,"k":"su(2)","h":{"algebra":"t(1)","embed":{"kind":"diagonal-torus","weights":["1","-1"]}},"g":"t(1)","lambda":"identity","l":"zero","connection":"levi-civita"})json"),
      ScenarioError);
  // missing file
  REQUIRE_THROWS_AS(load_scenario_file("/nonexistent/path.json"), ScenarioError);
}

TEST_CASE("inclusion lambda requires g to equal k") {
  REQUIRE_THROWS_AS(
      load_scenario_text(
          R"json({"schema_version":1,"k":"su(4)","h":{"algebra":"sp(2)","embed":{"kind":"sp-defining"}},"g":"su(3)","lambda":"inclusion","l":"zero","connection":"canonical"})json"),
      ScenarioError);
}
