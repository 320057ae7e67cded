// Acceptance battery: prints one pass/fail line per criterion and exits with
// the number of failed criteria. argv[1] must point at the fatlab CLI binary;
// the bundled scenario files are resolved from the source tree.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fatlab/fatness.hpp"
#include "fatlab/pipeline.hpp"
#include "fatlab/scenario.hpp"
#include "fatlab/tables.hpp"
#include "support.hpp"

using namespace fatlab;
using namespace fatlab::testsupport;

namespace {

int g_failures = 0;

using Clock = std::chrono::steady_clock;

struct Criterion {
  int number;
  Clock::time_point start = Clock::now();
  bool ok = true;
  double budget_s;
  std::ostringstream why;

  Criterion(int n, double budget) : number(n), budget_s(budget) {}

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why << (why.str().empty() ? "" : "; ") << what;
    }
  }

  void finish(const std::string& detail) {
    const double secs =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count() / 1000.0;
    if (secs > budget_s) {
      ok = false;
      why << (why.str().empty() ? "" : "; ") << "over budget (" << secs << " s > " << budget_s << " s)";
    }
    std::printf("criterion %2d: %s -- %s (%.2f s)\n", number, ok ? "pass" : "FAIL",
                ok ? detail.c_str() : why.str().c_str(), secs);
    if (!ok) ++g_failures;
  }
};

std::string scenario_path(const char* file) {
  return std::string(FATLAB_SOURCE_DIR) + "/scenarios/" + file;
}

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& cli, const std::string& args) {
  CmdResult res;
  const std::string cmd = "'" + cli + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-fatlab-cli>\n");
    return 64;
  }
  const std::string cli = argv[1];

  SkewPencil hopf_pencil;          // cached for criterion 10
  std::vector<SkewPencil> odd_pencils;

  {  // 1. exact structure audits across the named families plus random sums
    Criterion c(1, 10.0);
    int audited = 0;
    auto audit = [&](const AlgebraPtr& g) {
      const AlgebraReport r = check_algebra(*g);
      c.require(r.ok, g->name() + " failed audit");
      ++audited;
    };
    for (int n = 2; n <= 6; ++n) audit(make_su(n));
    for (int n = 3; n <= 9; ++n) audit(make_so(n));
    for (int n = 1; n <= 4; ++n) audit(make_sp(n));
    for (int n = 1; n <= 4; ++n) audit(make_u(n));
    audit(make_g2());
    DetRng rng(20260814);
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<AlgebraPtr> parts;
      const int np = static_cast<int>(rng.next_int(1, 3));
      for (int p = 0; p < np; ++p) {
        switch (rng.next_int(0, 4)) {
          case 0: parts.push_back(make_su(static_cast<int>(rng.next_int(2, 4)))); break;
          case 1: parts.push_back(make_so(static_cast<int>(rng.next_int(3, 6)))); break;
          case 2: parts.push_back(make_sp(static_cast<int>(rng.next_int(1, 2)))); break;
          case 3: parts.push_back(make_u(static_cast<int>(rng.next_int(1, 3)))); break;
          default: parts.push_back(make_t(static_cast<int>(rng.next_int(1, 3)))); break;
        }
      }
      audit(make_direct_sum(parts));
    }
    c.finish(std::to_string(audited) + " algebras audited exactly");
  }

  {  // 2. Hopf fatness with an exact certificate and no floating data
    Criterion c(2, 1.0);
    const Scenario s = load_scenario_file(scenario_path("hopf.json"));
    hopf_pencil = build_pencil(s.conn, s.l);
    const FatnessVerdict v = decide_fat(hopf_pencil);
    c.require(v.verdict == Fatness::Fat, "verdict not fat");
    c.require(v.exact, "certificate not exact");
    c.require(v.method == "single-form-det", "unexpected method " + v.method);
    c.require(v.min_sigma < 0, "numerical stage was entered");
    c.finish("fat via " + v.method + ", exact, no numerical stage");
  }

  {  // 3. odd horizontal dimension is never fat
    Criterion c(3, 5.0);
    DetRng rng(3033);
    for (int rep = 0; rep < 50; ++rep) {
      const int m = 3 + 2 * static_cast<int>(rng.next_int(0, 2));
      const int v = static_cast<int>(rng.next_int(1, 4));
      SkewPencil p = random_pencil(rng, m, v);
      const FatnessVerdict verdict = decide_fat(p);
      c.require(verdict.verdict == Fatness::NotFat, "odd m decided fat");
      c.require(verdict.method == "odd-horizontal", "unexpected method " + verdict.method);
      odd_pencils.push_back(std::move(p));
    }
    c.finish("50 odd-dimensional pencils all not fat");
  }

  {  // 4. the two fatness conditions agree on seeded factorization instances
    Criterion c(4, 30.0);
    int agreed = 0;
    for (int inst = 0; inst < 100; ++inst) {
      const LemmaInstance li = lemma_instance(inst, 4000 + inst);
      const Lemma1Report rep = check_lemma1_equivalence(li.pair, li.l);
      c.require(rep.premise, "span premise violated at instance " + std::to_string(inst));
      c.require(!rep.disagree, "conditions disagree at instance " + std::to_string(inst));
      if (rep.premise && !rep.disagree) ++agreed;
    }
    c.finish(std::to_string(agreed) + " instances, conditions never disagree");
  }

  {  // 5. symmetric and maximal-rank reproduction
    Criterion c(5, 1.0);
    auto so5 = make_so(5);
    auto p1 = make_reductive_pair(so5, make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix));
    c.require(is_symmetric_pair(p1) && is_maximal_rank_pair(p1), "(so(5), so(4)) misclassified");
    auto su2 = make_su(2);
    Mat hb(3, 1);
    hb(2, 0) = 1;
    auto p2 = make_reductive_pair(su2, make_subspace(su2, hb));
    c.require(is_symmetric_pair(p2) && is_maximal_rank_pair(p2), "(su(2), t(1)) misclassified");
    auto su3 = make_su(3);
    auto p3 = make_reductive_pair(su3, make_subspace(su3, embed_block_upper_left(make_su(2), su3).matrix));
    c.require(!is_maximal_rank_pair(p3), "(su(3), su(2)-block) not flagged");
    c.finish("both symmetric max-rank pairs confirmed, control rejected");
  }

  {  // 6. holonomy dimensions of the canonical connections
    Criterion c(6, 1.0);
    auto so5 = make_so(5);
    auto pr = make_reductive_pair(so5, make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix));
    auto conn = canonical_connection(pr, make_so(4), Mat::identity(6));
    const int d1 = holonomy_algebra(conn).dim();
    c.require(d1 == 6, "so(5)/so(4) holonomy dim " + std::to_string(d1));
    auto su2 = make_su(2);
    Mat hb(3, 1);
    hb(2, 0) = 1;
    auto p2 = make_reductive_pair(su2, make_subspace(su2, hb));
    Mat lam(1, 1);
    lam(0, 0) = 1;
    const int d2 = holonomy_algebra(canonical_connection(p2, make_t(1), lam)).dim();
    c.require(d2 == 1, "Hopf holonomy dim " + std::to_string(d2));
    c.finish("holonomy dims 6 and 1");
  }

  {  // 7. table disjointness plus the injected-control sanity check
    Criterion c(7, 5.0);
    const DisjointReport rep = tables_disjoint(12);
    c.require(rep.collisions.empty(), std::to_string(rep.collisions.size()) + " collisions");
    c.require(rep.pairs_checked == 85, "unexpected pair count " + std::to_string(rep.pairs_checked));
    Table2Row fake;
    fake.row = 99;
    fake.bb_case = 'X';
    fake.h = parse_symbolic_sum("C(2)");
    fake.hl = parse_symbolic_sum("C(1)");
    const DisjointReport rep2 = tables_disjoint(12, {fake});
    c.require(rep2.collisions.size() == 1,
              "control produced " + std::to_string(rep2.collisions.size()) + " collisions");
    c.finish("85 pairs disjoint; injected control caught exactly once");
  }

  {  // 8. factorization spot checks at the two smallest admissible parameters
    Criterion c(8, 30.0);
    tables();  // initialize the shared table data before going parallel
    struct Case {
      int row, n;
    };
    const std::vector<Case> cases = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 0}, {4, 0},
                                     {5, 0}, {6, 3}, {6, 4}, {7, 3}, {7, 4}, {8, 2},
                                     {8, 3}, {9, 2}, {9, 3}, {10, 2}, {10, 3}};
    std::vector<std::future<SpotReport>> jobs;
    for (const Case& k : cases)
      jobs.push_back(std::async(std::launch::async, [k] { return numeric_spot_check(k.row, k.n); }));
    for (size_t i = 0; i < jobs.size(); ++i) {
      const SpotReport sr = jobs[i].get();
      c.require(sr.applicable && sr.pass,
                "row " + std::to_string(cases[i].row) + " n " + std::to_string(cases[i].n) + ": " +
                    (sr.applicable ? sr.message : sr.skipped));
    }
    c.finish(std::to_string(cases.size()) + " concrete factorizations verified");
  }

  {  // 9. end-to-end classification through the CLI binary
    Criterion c(9, 30.0);
    const CmdResult ce = run_cli(cli, "classify '" + scenario_path("su4_sp2_counterexample.json") + "'");
    c.require(ce.exit_code == 1, "counterexample exit " + std::to_string(ce.exit_code));
    c.require(ce.output.find("not in Table 2") != std::string::npos, "missing rejection message");
    c.require(ce.output.find("(C2, C1+T)") != std::string::npos, "missing pair spelling");

    const CmdResult ch = run_cli(cli, "classify '" + scenario_path("hopf.json") + "'");
    c.require(ch.exit_code == 0, "hopf classify exit " + std::to_string(ch.exit_code));
    c.require(ch.output.find("overall: pass") != std::string::npos, "hopf conditions not all passing");

    const CmdResult cf = run_cli(cli, "fat '" + scenario_path("hopf.json") + "'");
    c.require(cf.exit_code == 0, "hopf fat exit " + std::to_string(cf.exit_code));
    const CmdResult cs = run_cli(cli, "fat '" + scenario_path("s4_sphere.json") + "'");
    c.require(cs.exit_code == 1, "s4 fat exit " + std::to_string(cs.exit_code));

    const std::string margs = "--format machine classify '" + scenario_path("hopf.json") + "'";
    const CmdResult m1 = run_cli(cli, margs);
    const CmdResult m2 = run_cli(cli, margs);
    c.require(!m1.output.empty() && m1.output == m2.output, "machine reports differ between runs");
    c.finish("dichotomy reproduced through the CLI; reports deterministic");
  }

  {  // 10. verdicts invariant under exact rotations and form rescalings
    Criterion c(10, 30.0);
    std::vector<SkewPencil> cached;
    cached.push_back(hopf_pencil);
    for (size_t i = 0; i < odd_pencils.size(); i += 7) cached.push_back(odd_pencils[i]);
    DetRng rng(1010);
    int transforms = 0;
    for (const SkewPencil& base : cached) {
      const Fatness expect = decide_fat(base).verdict;
      for (int rep = 0; rep < 20; ++rep) {
        const Mat q = rational_rotation(rng, base.m_dim(), 4);
        const Fatness got = decide_fat(rotate_horizontal(base, q)).verdict;
        c.require(got == expect, "rotation changed a verdict");
        ++transforms;
      }
      for (int rep = 0; rep < 5; ++rep) {
        const Rat s = Rat(rng.next_int(1, 9), rng.next_int(1, 9));
        const Fatness got = decide_fat(scale_pencil(base, s)).verdict;
        c.require(got == expect, "rescaling changed a verdict");
        ++transforms;
      }
    }
    c.finish(std::to_string(transforms) + " transformed pencils, verdicts unchanged");
  }

  if (g_failures == 0) std::printf("acceptance: all 10 criteria pass\n");
  else std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return g_failures;
}
