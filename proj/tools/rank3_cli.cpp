// rank3: command line front end. Exit status 0 = pass, 1 = structural
// mismatch, 2 = usage or internal error.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rank3/error.hpp"
#include "rank3/expected.hpp"
#include "rank3/geometry.hpp"
#include "rank3/group_action.hpp"
#include "rank3/report.hpp"

using namespace rank3;
using ojson = nlohmann::ordered_json;

namespace {

struct Args {
  std::string family;
  int dim = 0;
  int n = 0;
  long long ell = 0;
  std::uint64_t seed = 0;
  std::size_t max_p_size = 3000;
  std::string format = "json";
  bool skip_order = false;
  bool no_timings = false;
  std::string report_path;
  bool extended = false;
  unsigned jobs = 0;
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SpaceSpec space_of(const Args& a) {
  if (a.family.empty()) throw Usage("--family is required");
  SpaceSpec s{parse_family(a.family), 0};
  if (a.dim && a.n) throw Usage("give either --dim or --n");
  if (a.n) {
    if (!s.orthogonal()) throw Usage("--n is for orthogonal families; use --dim for unitary");
    s.dim = 2 * a.n;
  } else {
    s.dim = a.dim;
  }
  if (!s.dim) throw Usage("--dim (or --n) is required");
  s.validate();
  return s;
}

long long ell_of(const Args& a) {
  if (!a.ell) throw Usage("--ell is required");
  return a.ell;
}

void emit(const Args& a, const ojson& j, const std::string& text) {
  if (a.format == "text")
    std::cout << text;
  else
    std::cout << j.dump(2) << "\n";
}

void strip_timings(ojson& j) {
  if (j.contains("timingsMs")) j["timingsMs"] = ojson::object();
}

int cmd_points(const Args& a) {
  const SpaceSpec s = space_of(a);
  check_scale(s, a.max_p_size);
  const Space space(s);
  const PointSets ps = enumerate_points(space);
  const bool ok = ps.P.size() == std::size_t(closed_point_count(s)) &&
                  ps.P0.size() == std::size_t(closed_singular_count(s));
  ojson j;
  j["input"] = {{"family", family_name(s.family)}, {"m", s.dim}, {"n", s.n()}};
  j["points"] = {{"nonsingular", ps.P.size()}, {"singular", ps.P0.size()}};
  j["formula"] = {{"nonsingular", closed_point_count(s)}, {"singular", closed_singular_count(s)}};
  j["match"] = ok;
  emit(a, j,
       s.describe() + ": |P| = " + std::to_string(ps.P.size()) + ", |P0| = " + std::to_string(ps.P0.size()) +
           (ok ? " (formulas agree)\n" : " (FORMULA MISMATCH)\n"));
  return ok ? 0 : 1;
}

int cmd_params(const Args& a) {
  const SpaceSpec s = space_of(a);
  check_scale(s, a.max_p_size);
  const Space space(s);
  const PointSets ps = enumerate_points(space);
  const Rank3Params p = brute_params(ps);
  const Rank3Params c = closed_params(s);
  const Roots r = quadratic_roots(p);
  const bool ok = p == c && r == closed_roots(s) && p.a * (p.a - p.r - 1) == p.b * p.s;
  ojson j;
  j["input"] = {{"family", family_name(s.family)}, {"m", s.dim}, {"n", s.n()}};
  j["params"] = {{"v", p.v}, {"a", p.a}, {"b", p.b}, {"r", p.r}, {"s", p.s}};
  j["roots"] = ojson::array({r.c, r.d});
  j["match"] = ok;
  emit(a, j,
       s.describe() + ": (v, a, b, r, s) = (" + std::to_string(p.v) + ", " + std::to_string(p.a) + ", " +
           std::to_string(p.b) + ", " + std::to_string(p.r) + ", " + std::to_string(p.s) + "), roots (" +
           std::to_string(r.c) + ", " + std::to_string(r.d) + ")" + (ok ? "\n" : " (FORMULA MISMATCH)\n"));
  return ok ? 0 : 1;
}

int cmd_order(const Args& a) {
  const SpaceSpec s = space_of(a);
  check_scale(s, a.max_p_size);
  const Space space(s);
  const PointSets ps = enumerate_points(space);
  const GroupInfo g = build_group(space, ps, a.seed);
  std::vector<Perm> on_p;
  for (const auto& pp : g.perms) on_p.push_back(pp.on_P);
  const Orbitals orb = rank_and_orbitals(on_p, ps);
  const bool ok = g.certified && orb.rank == 3;
  ojson j;
  j["input"] = {{"family", family_name(s.family)}, {"m", s.dim}, {"n", s.n()}, {"seed", a.seed}};
  j["order"] = g.order.str();
  j["formulaOrder"] = g.formula.str();
  j["orderOnPoints"] = g.order_on_points.str();
  j["match"] = g.certified;
  j["generators"] = g.gens.size();
  j["rank"] = orb.rank;
  j["suborbits"] = orb.suborbits;
  std::string sub;
  for (auto x : orb.suborbits) sub += " " + std::to_string(x);
  emit(a, j,
       s.describe() + ": order " + g.order.str() + ", formula " + g.formula.str() +
           (g.certified ? " (match)" : " (MISMATCH)") + ", " + std::to_string(g.gens.size()) +
           " generators, rank " + std::to_string(orb.rank) + ", suborbits" + sub + "\n");
  return ok ? 0 : 1;
}

AnalyzeOptions options_of(const Args& a) {
  AnalyzeOptions o;
  o.seed = a.seed;
  o.max_p_size = a.max_p_size;
  o.skip_order = a.skip_order;
  return o;
}

int cmd_analyze(const Args& a) {
  const SpaceSpec s = space_of(a);
  const Report r = analyze(s, ell_of(a), options_of(a));
  ojson j = to_json(r);
  if (a.no_timings) strip_timings(j);
  emit(a, j, to_text(r));
  return r.verdict.match ? 0 : 1;
}

int cmd_expect(const Args& a) {
  const SpaceSpec s = space_of(a);
  const ExpectedStructure e = expected(s, ell_of(a));
  const ojson j = to_json(e);
  std::string text = s.describe() + " over F_" + std::to_string(e.ell) + ": table " + std::to_string(e.table) +
                     " row " + std::to_string(e.row) + " (" + e.condition + ")\n  shape: " + e.shape + "\n  dims:";
  for (const auto& [k, v] : e.dims) text += " " + k + "=" + std::to_string(v);
  text += "\n";
  for (const auto& t : e.typos)
    text += "  " + t.flag + ": " + t.label + " printed " + std::to_string(t.printed) + ", corrected " +
            std::to_string(t.corrected) + "\n";
  if (e.out_of_scale) text += "  OUT_OF_SCALE\n";
  emit(a, j, text);
  return 0;
}

int cmd_verify(const Args& a) {
  Report r;
  if (!a.report_path.empty()) {
    std::ifstream in(a.report_path);
    if (!in) throw Usage("cannot read " + a.report_path);
    const nlohmann::json j = nlohmann::json::parse(in);
    r = report_from_json(j);
    r.verdict = verify(r, expected(r.spec, r.ell));
  } else {
    r = analyze(space_of(a), ell_of(a), options_of(a));
  }
  ojson j = to_json(r);
  if (a.no_timings) strip_timings(j);
  emit(a, j, to_text(r));
  return r.verdict.match ? 0 : 1;
}

int cmd_suite(const Args& a) {
  const auto instances = suite_instances(a.extended);
  AnalyzeOptions o = options_of(a);
  if (a.extended) o.max_p_size = std::max<std::size_t>(o.max_p_size, 3000);
  const unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());

  struct Outcome {
    bool ok = false;
    std::string status;
    ojson json;
    std::string text;
  };
  auto run = [&](const SuiteInstance& in) {
    Outcome out;
    try {
      const Report r = analyze(in.spec, in.ell, o);
      out.ok = r.verdict.match;
      out.status = out.ok ? "PASS" : "FAIL";
      out.json = to_json(r);
      if (a.no_timings) strip_timings(out.json);
      out.text = to_text(r);
    } catch (const std::exception& ex) {
      out.status = "ERROR";
      out.json = {{"error", ex.what()}};
      out.text = in.spec.describe() + " l=" + std::to_string(in.ell) + ": error: " + ex.what() + "\n";
    }
    return out;
  };

  // one pipeline per worker; results are merged in list order
  std::vector<Outcome> results(instances.size());
  for (std::size_t start = 0; start < instances.size(); start += jobs) {
    std::vector<std::future<Outcome>> batch;
    for (std::size_t i = start; i < std::min(instances.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, instances[i]));
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }

  bool all = true;
  ojson arr = ojson::array();
  std::string text;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& in = instances[i];
    const auto& res = results[i];
    all = all && res.ok;
    const ExpectedStructure e = expected(in.spec, in.ell);
    ojson entry;
    entry["family"] = family_name(in.spec.family);
    entry["m"] = in.spec.dim;
    entry["ell"] = in.ell;
    entry["table"] = e.table;
    entry["row"] = e.row;
    entry["status"] = res.status;
    entry["report"] = res.json;
    arr.push_back(entry);
    std::string flags;
    if (res.json.contains("verdict"))
      for (const auto& f : res.json["verdict"]["flags"]) flags += " [" + f.get<std::string>() + "]";
    text += res.status + "  table " + std::to_string(e.table) + " row " + std::to_string(e.row) + "  " +
            in.spec.describe() + " l=" + std::to_string(in.ell) + flags + "\n";
    if (!res.ok) text += res.text;
  }
  for (const auto& sk : skipped_rows()) {
    arr.push_back({{"table", sk.table}, {"row", sk.row}, {"condition", sk.condition}, {"status", sk.status},
                   {"reason", sk.reason}});
    text += sk.status + "  table " + std::to_string(sk.table) + " row " + std::to_string(sk.row) + "  (" +
            sk.condition + "): " + sk.reason + "\n";
  }
  ojson j;
  j["schema"] = 1;
  j["instances"] = arr;
  j["pass"] = all;
  emit(a, j, text);
  return all ? 0 : 1;
}

void add_instance_options(CLI::App* c, Args& a, bool need_ell) {
  c->add_option("--family", a.family, "o+, o- or u")->check(CLI::IsMember({"o+", "o-", "u"}));
  c->add_option("--dim", a.dim, "dimension m of the formed space");
  c->add_option("--n", a.n, "n with m = 2n (orthogonal families)");
  if (need_ell) c->add_option("--ell", a.ell, "odd prime characteristic");
  c->add_option("--seed", a.seed, "random seed (default 0)");
  c->add_option("--max-p-size", a.max_p_size, "largest |P| to attempt (default 3000)");
}

void add_output_options(CLI::App* c, Args& a) {
  c->add_option("--format", a.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank 3 permutation modules of O+-(2n,2) and U(m,2) over odd prime fields"};
  app.require_subcommand(1);
  Args a;

  auto* points = app.add_subcommand("points", "enumerate singular and nonsingular points");
  add_instance_options(points, a, false);
  add_output_options(points, a);
  auto* params = app.add_subcommand("params", "rank 3 parameters and the roots of the quadratic");
  add_instance_options(params, a, false);
  add_output_options(params, a);
  auto* order = app.add_subcommand("order", "certified group order (Schreier-Sims)");
  add_instance_options(order, a, false);
  add_output_options(order, a);
  auto* analyze_cmd = app.add_subcommand("analyze", "full structure report");
  add_instance_options(analyze_cmd, a, true);
  add_output_options(analyze_cmd, a);
  analyze_cmd->add_flag("--skip-order", a.skip_order, "do not report the Schreier-Sims order");
  analyze_cmd->add_flag("--no-timings", a.no_timings, "emit an empty timingsMs object");
  auto* expect = app.add_subcommand("expect", "expected structure from the tables");
  add_instance_options(expect, a, true);
  add_output_options(expect, a);
  auto* verify_cmd = app.add_subcommand("verify", "analyze and compare with the tables");
  add_instance_options(verify_cmd, a, true);
  add_output_options(verify_cmd, a);
  verify_cmd->add_flag("--skip-order", a.skip_order, "do not report the Schreier-Sims order");
  verify_cmd->add_flag("--no-timings", a.no_timings, "emit an empty timingsMs object");
  verify_cmd->add_option("--report", a.report_path, "re-verify a stored JSON report instead of computing");
  auto* suite = app.add_subcommand("suite", "verify the default instance list");
  suite->add_option("--seed", a.seed, "random seed (default 0)");
  suite->add_option("--max-p-size", a.max_p_size, "largest |P| to attempt (default 3000)");
  suite->add_flag("--extended", a.extended, "include U(7) at l = 3");
  suite->add_flag("--skip-order", a.skip_order, "do not report the Schreier-Sims order");
  suite->add_flag("--no-timings", a.no_timings, "emit empty timingsMs objects");
  suite->add_option("--jobs", a.jobs, "parallel pipelines (default: hardware threads)");
  add_output_options(suite, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*points) return cmd_points(a);
    if (*params) return cmd_params(a);
    if (*order) return cmd_order(a);
    if (*analyze_cmd) return cmd_analyze(a);
    if (*expect) return cmd_expect(a);
    if (*verify_cmd) return cmd_verify(a);
    if (*suite) return cmd_suite(a);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const OutOfScale& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
