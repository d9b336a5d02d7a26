// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rswan/error.hpp"
#include "rswan/extensions.hpp"
#include "rswan/reciprocity.hpp"
#include "rswan/rsw.hpp"
#include "rswan/run.hpp"
#include "support.hpp"

using namespace rswan;
using testing::S;
using testing::W;
using testing::field;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) out_.detail = "first failure: " + what;
    out_.pass = out_.pass && ok;
  }
  Outcome done(const std::string& summary) {
    if (out_.pass) out_.detail = summary;
    return out_;
  }

 private:
  Outcome out_;
};

std::vector<oracle::Series1> std_components(const WittVector& a) {
  std::vector<oracle::Series1> out;
  for (const auto& c : a.print_order()) out.push_back(oracle::to_oracle(c));
  return out;
}

RingPtr tower(int p, int s, int dim) {
  return field(p, dim == 1 ? std::vector<std::string>{"t"} : std::vector<std::string>{"u", "t"}, s);
}

Outcome exp_congruences() {
  Check c;
  for (int p : {2, 3, 5}) {
    const ExpCongruenceReport r = check_exp_congruences(p, p);
    for (int i = 0; i < 3; ++i) c.expect(r.pass[static_cast<std::size_t>(i)], "p=" + std::to_string(p) + " congruence " + std::to_string(i + 1));
  }
  return c.done("three congruences for p = 2, 3, 5");
}

Outcome well_definedness() {
  Check c;
  std::mt19937_64 rng(2);
  int pairs = 0;
  for (int p : {2, 3})
    for (int s : {1, 2})
      for (int dim : {1, 2}) {
        const RingPtr K = tower(p, s, dim);
        for (int i = 0; i < 500; ++i) {
          Character chi;
          do {
            chi = asw_reduce(testing::random_witt(K, rng, -5, 1, -1, 1));
          } while (swan_conductor(chi) == 0);
          const WittVector b = testing::random_witt(K, rng, -3, 1, -1, 1);
          const Character other = asw_reduce(witt_add(chi.rep, testing::as_coboundary(b)));
          const std::string tag = "p=" + std::to_string(p) + " s=" + std::to_string(s) + " d=" + std::to_string(dim);
          c.expect(swan_conductor(other) == swan_conductor(chi), tag + ": conductor changed");
          c.expect(rsw_char_p(chi).value.congruent(rsw_char_p(other).value), tag + ": Rsw differs");
          ++pairs;
        }
      }
  return c.done(std::to_string(pairs) + " pairs agree");
}

Outcome closedness() {
  Check c;
  int count = 0;
  for (int p : {2, 3, 5})
    for (const auto& nc : testing::catalog_characters(p)) {
      const Character chi = asw_reduce(nc.rep);
      const std::int64_t n = swan_conductor(chi);
      if (n == 0) continue;
      const RswValue v = rsw_char_p(chi);
      c.expect(sw_from_rsw(v) == n, nc.name + ": Sw recovery");
      if (chi.rep.ring()->dimension() >= 2) {
        const LogForm dv = d(v.value.form);
        c.expect(WindowedForm{dv, v.value.n, v.value.m}.congruent(WindowedForm{LogForm(dv.ring(), dv.nvars(), dv.degree()), v.value.n, v.value.m}),
                 nc.name + ": d(Rsw) nonzero");
      }
      ++count;
    }
  return c.done(std::to_string(count) + " catalog characters");
}

Outcome duality() {
  Check c;
  const RingPtr K = field(2, {"u", "t"});
  for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {3, 1}, {4, 2}}) {
    int b = 0;
    for (std::int64_t pb = 1; pb < n - m; pb *= 2) ++b;
    for (int i = 0; i <= 2; ++i) {
      const DualityMatrix M = duality_matrix(n, m, b, K, i, 2 - i);
      const std::string tag = "(n,m)=(" + std::to_string(n) + "," + std::to_string(m) + ") i=" + std::to_string(i);
      c.expect(M.left.size() == M.right.size() && !M.left.empty(), tag + ": not square");
      c.expect(is_invertible(M.entries), tag + ": singular");
    }
  }
  return c.done("(2,1), (3,1), (4,2) invertible over F_2((u))");
}

Outcome reciprocity() {
  Check c;
  int samples = 0;
  auto run = [&](const testing::NamedCharacter& nc) {
    const Character chi = asw_reduce(nc.rep);
    if (swan_conductor(chi) == 0) return;
    const CharacterizationReport rep = verify_rsw_characterization(chi, 100, 0);
    const RingPtr& K = chi.rep.ring();
    const int p = K->prime();
    for (const auto& smp : rep.samples) {
      c.expect(smp.lhs == smp.rhs, nc.name + ": alpha " + smp.alpha);
      if (K->dimension() == 1) {
        // oracle for the left side over Z/p^s
        const oracle::Series1 theta = oracle::ghost_top(std_components(chi.rep), p);
        oracle::Series1 x = oracle::to_oracle(parse_series(smp.alpha, K));
        x.M = theta.M;
        c.expect(oracle::schmid(theta, oracle::trunc_exp(x, p)) == smp.lhs, nc.name + ": oracle, alpha " + smp.alpha);
        if (K->tower().s == 1) {
          const auto f = oracle::to_oracle(chi.rep.component(0));
          const auto y = oracle::trunc_exp(oracle::to_oracle(parse_series(smp.alpha, K)), p);
          c.expect(oracle::schmid(f, y) == smp.lhs, nc.name + ": Schmid, alpha " + smp.alpha);
        }
      }
      ++samples;
    }
  };
  for (int p : {2, 3})
    for (const auto& nc : testing::catalog_characters(p)) {
      const RingPtr& K = nc.rep.ring();
      const int s = K->tower().s;
      if (K->dimension() == 1 && s <= 2) run(nc);
      if (K->dimension() == 2 && p == 2 && s == 1) run(nc);
    }
  return c.done(std::to_string(samples) + " samples");
}

Outcome conductor_change_criterion() {
  Check c;
  const RingPtr K = field(2);
  const RingPtr L = field(2, {"u"});
  const ConductorChangeReport r = conductor_change(asw_reduce(W(K, {"t^-3"})), ExtensionMap{K, L, {S(L, "u^2 + u^3")}});
  c.expect(r.delta == 1 && r.predicted == 5 && r.direct == 5 && r.status == Status::Pass, "catalog case");

  std::mt19937_64 rng(6);
  int accepted = 0;
  for (int attempt = 0; attempt < 5000 && accepted < 50; ++attempt) {
    const int p = attempt % 2 ? 3 : 2;
    const RingPtr Kp = field(p);
    const RingPtr Lp = field(p, {"u"});
    const std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 4);
    const Series y = S(Lp, "u").pow(e) * (Series::one(Lp, 1) + testing::random_poly(Lp, rng, 1, 3));
    const Series f = testing::random_poly(Kp, rng, -7, 0);
    const Character chi = asw_reduce(WittVector(Kp, {f}));
    if (swan_conductor(chi) == 0) continue;
    ConductorChangeReport rep;
    try {
      rep = conductor_change(chi, ExtensionMap{Kp, Lp, {y}});
    } catch (const Unsupported&) {
      continue;  // dlog of the image vanishes
    }
    if (!rep.hypothesis) continue;
    ++accepted;
    const std::string tag = "p=" + std::to_string(p) + " f=" + render_series(f) + " t->" + render_series(y);
    c.expect(rep.status == Status::Pass, tag);
    c.expect(rep.direct == oracle::pulled_sw(oracle::to_oracle(f), oracle::to_oracle(y)), tag + " (oracle)");
  }
  c.expect(accepted == 50, "only " + std::to_string(accepted) + " random cases satisfied the hypothesis");
  return c.done("catalog case and " + std::to_string(accepted) + " random cases");
}

Outcome family_ratios() {
  Check c;
  const RingPtr KU = field(2, {"u", "t"});
  const ThmBReport rep = thmB_ratio_experiment(asw_reduce(W(KU, {"u*t^-2"})), thmB_family(KU, {3, 5, 7}), true);
  std::ostringstream got;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    c.expect(row.ratio == Ratio::of(2 * row.e - 1, row.e), "tau=" + std::to_string(row.e));
    c.expect(row.ratio <= Ratio::of(2, 1), "bound");
    if (i) c.expect(rep.rows[i - 1].ratio < row.ratio, "monotone");
    got << (i ? ", " : "") << row.ratio.to_string();
  }
  c.expect(rep.rows.size() == 3, "row count");
  return c.done("ratios " + got.str());
}

Outcome curve_ratios() {
  Check c;
  const RingPtr X = field(2, {"x", "t"});
  const CurveReport rep = curve_ratio_experiment(S(X, "x*t^-3"), 0, {2, 4, 8});
  std::ostringstream got;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    c.expect(row.ratio == Ratio::of(3 * row.e - 1, row.e), "e=" + std::to_string(row.e));
    got << (i ? ", " : "") << row.ratio.to_string();
  }
  c.expect(rep.sw_d == 3 && rep.all_bounded, "bound by Sw_D");
  c.expect(rep.rows.size() == 3, "row count");
  return c.done("ratios " + got.str());
}

Outcome ghost_coherence() {
  Check c;
  std::mt19937_64 rng(9);
  for (auto [p, s] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const RingPtr K = field(p, {"t"}, s);
    for (int i = 0; i < 1000; ++i) {
      const WittVector a = testing::random_witt(K, rng, -3, 3), b = testing::random_witt(K, rng, -3, 3);
      const WittVector sum = witt_add(a, b);
      const std::string tag = "p=" + std::to_string(p) + " s=" + std::to_string(s);
      c.expect(theta_lift(sum).congruent(theta_lift(a) + theta_lift(b)), tag);
      const auto lhs = oracle::ghost_top(std_components(sum), p);
      const auto rhs = oracle::ghost_top(std_components(a), p) + oracle::ghost_top(std_components(b), p);
      c.expect(lhs.c == rhs.c, tag + " (oracle)");
    }
  }
  return c.done("3000 pairs");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Check c;
  for (int p : {2, 3, 5}) {
    std::string bodies[2];
    for (int run = 0; run < 2; ++run) {
      const std::string out = "acceptance_check_all_p" + std::to_string(p) + "_" + std::to_string(run) + ".json";
      const std::string cmd = std::string(RSWAN_CLI) + " check-all --p " + std::to_string(p) + " --seed 0 --out " + out;
      const int status = std::system(cmd.c_str());
      c.expect(status == 0, "check-all --p " + std::to_string(p) + " exit status");
      try {
        bodies[run] = report_body(Json::parse(slurp(out))).dump();
      } catch (const std::exception& e) {
        c.expect(false, std::string("unreadable report: ") + e.what());
      }
      std::remove(out.c_str());
    }
    c.expect(!bodies[0].empty() && bodies[0] == bodies[1], "p=" + std::to_string(p) + " bodies differ");
  }
  return c.done("identical bodies for p = 2, 3, 5");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 1, exp_congruences},   {2, 30, well_definedness},          {3, 10, closedness},
      {4, 30, duality},          {5, 120, reciprocity},              {6, 60, conductor_change_criterion},
      {7, 30, family_ratios},    {8, 30, curve_ratios},              {9, 30, ghost_coherence},
      {10, 0, determinism},
  };
  bool all = true;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && cr.limit_s > 0 && secs > cr.limit_s) o = {false, o.detail + "; over the time limit"};
    all = all && o.pass;
    const std::string limit = cr.limit_s > 0 ? "limit " + std::to_string(static_cast<int>(cr.limit_s)) + " s" : "no limit";
    std::printf("criterion %d: %s (%s; %.2f s, %s)\n", cr.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs, limit.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
