#include "rank3/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rank3/error.hpp"
#include "rank3/group_action.hpp"
#include "rank3/perm_module.hpp"
#include "rank3/structure.hpp"

namespace rank3 {

namespace {

constexpr const char* kPipelinePrefix = "pipeline: ";
// Flags raised before the structural comparison; kept apart so that a stored
// report verifies to the same verdict.
const std::set<std::string> kPipelineFlags = {"UEVEN_S_PARENS"};

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& out) : out_(out), t_(clock::now()) {}
  void lap(const std::string& name) {
    const auto now = clock::now();
    out_.emplace_back(name, std::chrono::duration<double, std::milli>(now - t_).count());
    t_ = now;
  }

 private:
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<std::string, double>>& out_;
  clock::time_point t_;
};

std::string bigint_str(const BigInt& x) { return x.str(); }

std::vector<SpaceSpec> family_sizes(Family fam) {
  std::vector<SpaceSpec> out;
  if (fam == Family::Unitary) {
    for (int m = 4; m <= 31; ++m) out.push_back({fam, m});
  } else {
    for (int m = 6; m <= 30; m += 2) out.push_back({fam, m});
  }
  return out;
}

// Labels: dimension-one classes split into FF and omega, the rest by the
// row's dimension table (corrected values first, then printed ones).
std::vector<std::string> label_classes(const ChopResult& chop, const ExpectedStructure& e) {
  std::vector<std::string> labels;
  std::set<std::string> used;
  for (const auto& c : chop.classes) {
    std::string label;
    if (c.dim == 1) {
      label = c.trivial ? "FF" : "omega";
    } else {
      for (const auto* table : {&e.dims, &e.printed}) {
        for (const auto& [l, d] : *table) {
          if (l == "FF" || l == "omega" || d != static_cast<long long>(c.dim) || used.count(l)) continue;
          label = l;
          break;
        }
        if (!label.empty()) break;
      }
      if (label.empty()) label = "?" + std::to_string(c.dim);
    }
    if (used.count(label)) label += "'";
    used.insert(label);
    labels.push_back(label);
  }
  return labels;
}

LabelCount layer_count(const std::vector<LayerEntry>& layer) {
  LabelCount c;
  for (const auto& x : layer) ++c[x.label];
  return c;
}

std::string format_count(const LabelCount& c) {
  std::string s;
  for (const auto& [k, v] : c) {
    if (!s.empty()) s += "+";
    s += (v > 1 ? std::to_string(v) + "*" : "") + k;
  }
  return s.empty() ? "0" : s;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

// ---- property checks --------------------------------------------------------

struct Context {
  const PrimeField& f;
  const PointSets& ps;
  const PermModule& pm;
  const StructureAnalyzer& sa;
  const Report& r;
  const Lattice* lat;
  const Subspace& uc;
  const Subspace& ud;
  std::uint64_t seed;
};

PropertyCheck prop_minimality(const Context& c) {
  PropertyCheck p{"graph_submodule_minimality", true, ""};
  if (!c.lat) return {p.name, false, "lattice not available"};
  const Subspace t = c.pm.T();
  std::size_t checked = 0;
  for (const auto& node : c.lat->nodes) {
    if (node.dim() == 0 || node == t) continue;
    ++checked;
    if (!node.contains(c.f, c.uc) && !node.contains(c.f, c.ud)) {
      p.ok = false;
      p.detail = "node of dim " + std::to_string(node.dim()) + " contains neither graph submodule";
      return p;
    }
  }
  p.detail = std::to_string(checked) + " nodes contain U'_c or U'_d";
  return p;
}

// perp maps the lattice onto itself and reverses covers; returns the node
// index of each perp (or npos).
PropertyCheck prop_duality(const Context& c, std::vector<std::size_t>& perp_index) {
  PropertyCheck p{"perp_anti_automorphism", true, ""};
  if (!c.lat) return {p.name, false, "lattice not available"};
  const Lattice& lat = *c.lat;
  perp_index.assign(lat.nodes.size(), Lattice::npos);
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    perp_index[i] = lat.find(perp(c.f, lat.nodes[i]));
    if (perp_index[i] == Lattice::npos) {
      p.ok = false;
      p.detail = "perp of node " + std::to_string(i) + " is not in the lattice";
      return p;
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : lat.edges) edges.insert({e.from, e.to});
  for (const auto& e : lat.edges) {
    if (!edges.count({perp_index[e.to], perp_index[e.from]})) {
      p.ok = false;
      p.detail = "perp does not reverse the cover " + std::to_string(e.from) + " < " + std::to_string(e.to);
      return p;
    }
  }
  p.detail = std::to_string(lat.nodes.size()) + " nodes, " + std::to_string(lat.edges.size()) + " covers reversed";
  return p;
}

// For a node N with N and its perp meeting trivially (so N is self-dual via
// the form) and a simple socle, the head is simple and isomorphic to it.
PropertyCheck prop_head_socle(const Context& c, const std::vector<std::size_t>& perp_index) {
  PropertyCheck p{"head_socle_symmetry", true, ""};
  if (!c.lat || perp_index.empty()) return {p.name, false, "lattice not available"};
  const Lattice& lat = *c.lat;
  const auto order = lat.order();
  std::vector<std::size_t> atoms;
  for (const auto& e : lat.edges)
    if (e.from == 0) atoms.push_back(e.to);
  std::size_t checked = 0;
  for (std::size_t i = 1; i < lat.nodes.size(); ++i) {
    std::vector<std::size_t> below;
    for (std::size_t a : atoms)
      if (order[a][i]) below.push_back(a);
    if (below.size() != 1) continue;
    const Subspace meet = intersect(c.f, lat.nodes[i], lat.nodes[perp_index[i]]);
    if (meet.dim() != 0) continue;
    ++checked;
    std::size_t socle_cls = 0;
    for (const auto& e : lat.edges)
      if (e.from == 0 && e.to == below[0]) socle_cls = e.cls;
    std::vector<std::size_t> head;
    for (const auto& e : lat.edges)
      if (e.to == i) head.push_back(e.cls);
    if (head.size() != 1 || head[0] != socle_cls) {
      p.ok = false;
      p.detail = "self-dual node " + std::to_string(i) + " has head differing from its simple socle";
      return p;
    }
  }
  p.detail = std::to_string(checked) + " self-dual nodes with simple socle";
  return p;
}

PropertyCheck prop_root_inner(const Context& c) {
  PropertyCheck p{"root_pair_inner_product", true, ""};
  std::mt19937_64 rng(c.seed ^ 0x1f2e3d4cULL);
  std::uniform_int_distribution<std::uint32_t> pick(0, std::uint32_t(c.ps.P.size() - 1));
  const Fe s = c.f.reduce(c.r.params.s);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t a = pick(rng), b = pick(rng);
    const Fe got = inner(c.f, c.pm.v_c(c.r.roots.c, a), c.pm.v_c(c.r.roots.d, b));
    if (got != s) {
      p.ok = false;
      p.detail = "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") gives " + std::to_string(got);
      return p;
    }
  }
  p.detail = "100 random pairs give s = " + std::to_string(s);
  return p;
}

PropertyCheck prop_adjacency(const Context& c) {
  PropertyCheck p{"adjacency_identity", true, ""};
  if (c.ps.P.size() > 200) {
    p.detail = "skipped (v > 200)";
    return p;
  }
  p.ok = adjacency_identity_holds(c.pm, c.r.params);
  p.detail = p.ok ? "A^2 - (r-s)A - (a-s)I = sJ" : "identity fails";
  return p;
}

PropertyCheck prop_T_scalar(const Context& c) {
  PropertyCheck p{"T_scalar_on_graph_submodules", true, ""};
  auto check = [&](const Subspace& u, long long other) {
    const Fe k = c.f.reduce(-other);
    for (std::size_t i = 0; i < u.dim(); ++i) {
      const auto row = u.basis().row(i);
      const Vec t = c.pm.apply_T(row);
      for (std::size_t j = 0; j < t.size(); ++j)
        if (t[j] != c.f.mul(k, row[j])) return false;
    }
    return true;
  };
  p.ok = check(c.uc, c.r.roots.d) && check(c.ud, c.r.roots.c);
  p.detail = "dim U'_c = " + std::to_string(c.uc.dim()) + ", dim U'_d = " + std::to_string(c.ud.dim());
  return p;
}

PropertyCheck prop_cross_maps(const Context& c) {
  PropertyCheck p{"cross_maps_Q_R", true, ""};
  const auto& ps = c.ps;
  const ModuleRep& mp = c.pm.on_P();
  const ModuleRep& mp0 = c.pm.on_P0();
  // equivariance on the point bases: Lambda(alpha)g = Lambda(alpha g), same for Gamma
  for (std::size_t k = 0; k < mp.num_gens(); ++k) {
    const Perm& gp = std::get<Perm>(mp.gen(k));
    const Perm& g0 = std::get<Perm>(mp0.gen(k));
    auto same = [](std::vector<std::uint32_t> x, const std::vector<std::uint32_t>& y) {
      std::sort(x.begin(), x.end());
      std::vector<std::uint32_t> z = y;
      std::sort(z.begin(), z.end());
      return x == z;
    };
    for (std::size_t a = 0; a < ps.P.size(); ++a) {
      std::vector<std::uint32_t> img;
      for (auto b : ps.lambda[a]) img.push_back(g0[b]);
      if (!same(img, ps.lambda[gp[a]])) return {p.name, false, "Q is not equivariant"};
    }
    for (std::size_t b = 0; b < ps.P0.size(); ++b) {
      std::vector<std::uint32_t> img;
      for (auto a : ps.gamma[b]) img.push_back(gp[a]);
      if (!same(img, ps.gamma[g0[b]])) return {p.name, false, "R is not equivariant"};
    }
  }
  // Im(Q|S) is spanned by Q(alpha_0 - beta); it is 0 iff all vanish and
  // T(FP0) iff all are constant.
  auto classify = [&](std::size_t n, auto&& image) {
    bool nonzero = false, nonconst = false;
    for (std::uint32_t b = 1; b < n && !(nonzero && nonconst); ++b) {
      const Vec w = image(b);
      for (Fe x : w) {
        if (x != 0) nonzero = true;
        if (x != w[0]) nonconst = true;
      }
    }
    return std::pair{nonzero, nonconst};
  };
  auto q_img = [&](std::uint32_t b) {
    Vec u(ps.P.size(), 0);
    u[0] = 1;
    u[b] = c.f.neg(1);
    return c.pm.q_apply(u);
  };
  auto r_img = [&](std::uint32_t b) {
    Vec u(ps.P0.size(), 0);
    u[0] = 1;
    u[b] = c.f.neg(1);
    return c.pm.r_apply(u);
  };
  const auto [qz, qc] = classify(ps.P.size(), q_img);
  const auto [rz, rc] = classify(ps.P0.size(), r_img);
  p.ok = qz && qc && rz && rc;
  p.detail = std::string("Im(Q|S) ") + (qz && qc ? "not in {0, T(FP0)}" : "degenerate") + "; Im(R|S0) " +
             (rz && rc ? "not in {0, T(FP)}" : "degenerate");
  return p;
}

PropertyCheck prop_abs_irred(const Context& c) {
  PropertyCheck p{"factors_absolutely_irreducible", true, ""};
  for (const auto& cls : c.sa.factors().classes) {
    if (!cls.abs_irred) {
      p.ok = false;
      p.detail = "factor of dim " + std::to_string(cls.dim) + " has a larger endomorphism algebra";
      return p;
    }
  }
  p.detail = std::to_string(c.sa.factors().classes.size()) + " classes with End = F";
  return p;
}

PropertyCheck prop_socle_multiset(const Context& c, const SocleSeries& ss) {
  PropertyCheck p{"socle_layers_match_factors", true, ""};
  const auto& mult = c.sa.factors().multiplicity;
  std::vector<std::size_t> sum(mult.size(), 0);
  for (const auto& layer : ss.layers)
    for (std::size_t k = 0; k < layer.size(); ++k) sum[k] += layer[k];
  p.ok = sum == mult && !ss.terms.empty() && ss.terms.back().dim() == c.ps.P.size();
  p.detail = std::to_string(ss.layers.size()) + " layers";
  return p;
}

PropertyCheck prop_closure(const Context& c) {
  PropertyCheck p{"lattice_closed_under_sum_and_meet", true, ""};
  if (!c.lat) return {p.name, false, "lattice not available"};
  if (c.ps.P.size() > 300 || c.lat->nodes.size() > 64) {
    p.detail = "skipped (large instance)";
    return p;
  }
  const auto& nodes = c.lat->nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (c.lat->find(sum(c.f, nodes[i], nodes[j])) == Lattice::npos ||
          c.lat->find(intersect(c.f, nodes[i], nodes[j])) == Lattice::npos) {
        p.ok = false;
        p.detail = "nodes " + std::to_string(i) + ", " + std::to_string(j) + " escape the lattice";
        return p;
      }
    }
  }
  p.detail = std::to_string(nodes.size()) + " nodes";
  return p;
}

}  // namespace

void check_scale(const SpaceSpec& spec, std::size_t max_p_size) {
  const long long v = closed_point_count(spec);
  if (v <= static_cast<long long>(max_p_size)) return;
  std::string smallest;
  for (const auto& s : family_sizes(spec.family)) {
    if (closed_point_count(s) > static_cast<long long>(max_p_size)) {
      smallest = s.describe() + " (|P| = " + std::to_string(closed_point_count(s)) + ")";
      break;
    }
  }
  throw OutOfScale("out of desk scale: " + spec.describe() + " has |P| = " + std::to_string(v) +
                   " > " + std::to_string(max_p_size) + "; smallest excluded case of the family is " + smallest);
}

Report analyze(const SpaceSpec& spec, long long ell, const AnalyzeOptions& opts) {
  spec.validate();
  const PrimeField f = PrimeField::make(ell);
  check_scale(spec, opts.max_p_size);
  const ExpectedStructure e = expected(spec, ell);

  Report r;
  r.spec = spec;
  r.ell = ell;
  r.seed = opts.seed;
  Stopwatch sw(r.timings_ms);
  auto diff = [&r](const std::string& s) { r.pipeline_diffs.push_back(kPipelinePrefix + s); };

  const Space space(spec);
  const PointSets ps = enumerate_points(space);
  r.nonsingular = ps.P.size();
  r.singular = ps.P0.size();
  sw.lap("points");

  r.params = brute_params(ps);
  const Rank3Params closed = closed_params(spec);
  if (r.nonsingular != std::size_t(closed_point_count(spec))) diff("nonsingular point count differs from formula");
  if (r.singular != std::size_t(closed_singular_count(spec))) diff("singular point count differs from formula");
  if (!(r.params == closed)) diff("counted parameters differ from the closed formulas");
  if (r.params.a * (r.params.a - r.params.r - 1) != r.params.b * r.params.s) diff("a(a-r-1) != b s");
  r.roots = quadratic_roots(r.params);
  if (!(r.roots == closed_roots(spec))) diff("roots differ from the family pattern");
  if (spec.family == Family::Unitary && !spec.odd_unitary() && r.params.s == closed.s)
    r.pipeline_flags.push_back("UEVEN_S_PARENS");
  sw.lap("params");

  const GroupInfo g = build_group(space, ps, opts.seed);
  r.group.formula = bigint_str(g.formula);
  if (!opts.skip_order) {
    r.group.order = bigint_str(g.order);
    r.group.order_on_points = bigint_str(g.order_on_points);
    if (!g.certified) diff("group order " + bigint_str(g.order) + " differs from formula " + bigint_str(g.formula));
  }
  std::vector<Perm> on_p;
  for (const auto& pp : g.perms) on_p.push_back(pp.on_P);
  const Orbitals orb = rank_and_orbitals(on_p, ps);
  r.group.rank = orb.rank;
  r.group.suborbits = orb.suborbits;
  if (orb.rank != 3 || !orb.matches_geometry) diff("action is not rank 3 with orbitals {=, Delta, Phi}");
  sw.lap("group");

  const PermModule pm(f, ps, g.perms);
  const Subspace uc = pm.graph_submodule(r.roots.c);
  const Subspace ud = f.reduce(r.roots.c) == f.reduce(r.roots.d) ? uc : pm.graph_submodule(r.roots.d);
  sw.lap("graph");

  const StructureAnalyzer sa(pm.on_P(), opts.seed);
  sw.lap("chop");
  const SocleSeries ss = sa.socle_series();
  sw.lap("socle");
  std::optional<Lattice> lat;
  try {
    lat = sa.lattice(opts.length_bound, opts.node_budget);
  } catch (const BudgetExceeded& ex) {
    diff(std::string("lattice: ") + ex.what());
  } catch (const InvalidInput& ex) {
    diff(std::string("lattice: ") + ex.what());
  }
  sw.lap("lattice");

  const ChopResult& chop = sa.factors();
  const auto labels = label_classes(chop, e);
  for (std::size_t k = 0; k < chop.classes.size(); ++k)
    r.factors.push_back({labels[k], chop.classes[k].dim, chop.multiplicity[k], chop.classes[k].abs_irred});
  for (const auto& layer : ss.layers) {
    std::vector<LayerEntry> out;
    for (std::size_t k = 0; k < layer.size(); ++k)
      for (std::size_t t = 0; t < layer[k]; ++t) out.push_back({labels[k], chop.classes[k].dim});
    r.socle.push_back(std::move(out));
  }
  if (lat) {
    r.lattice.computed = true;
    for (const auto& n : lat->nodes) r.lattice.dims.push_back(n.dim());
    for (const auto& ed : lat->edges) {
      r.lattice.edges.push_back({ed.from, ed.to});
      r.lattice.edge_labels.push_back(labels[ed.cls]);
    }
  }

  if (opts.properties) {
    const Context c{f, ps, pm, sa, r, lat ? &*lat : nullptr, uc, ud, opts.seed};
    std::vector<std::size_t> perp_index;
    r.properties.push_back(prop_minimality(c));
    r.properties.push_back(prop_duality(c, perp_index));
    r.properties.push_back(prop_head_socle(c, perp_index));
    r.properties.push_back(prop_root_inner(c));
    r.properties.push_back(prop_adjacency(c));
    r.properties.push_back(prop_T_scalar(c));
    r.properties.push_back(prop_cross_maps(c));
    r.properties.push_back(prop_abs_irred(c));
    r.properties.push_back(prop_socle_multiset(c, ss));
    r.properties.push_back(prop_closure(c));
    for (const auto& p : r.properties)
      if (!p.ok) diff("property " + p.name + " failed: " + p.detail);
    sw.lap("properties");
  }

  r.verdict = verify(r, e);
  return r;
}

Verdict verify(const Report& r, const ExpectedStructure& e) {
  Verdict v;
  v.diffs = r.pipeline_diffs;
  v.flags = r.pipeline_flags;
  if (e.out_of_scale) v.diffs.push_back("row is out of desk scale and cannot be verified");

  // factors
  LabelCount got;
  std::map<std::string, long long> accepted = e.dims;
  for (const auto& fe : r.factors) {
    got[fe.label] += int(fe.mult);
    if (!fe.abs_irred) add_unique(v.flags, "NOT_ABS_IRRED_" + fe.label);
    auto it = e.dims.find(fe.label);
    if (it == e.dims.end()) {
      v.diffs.push_back("factor " + fe.label + " (dim " + std::to_string(fe.dim) + ") has no label in the table row");
      continue;
    }
    const long long d = static_cast<long long>(fe.dim);
    const long long printed = e.printed.at(fe.label);
    if (d == it->second) {
      if (printed != d) {
        for (const auto& t : e.typos)
          if (t.label == fe.label) add_unique(v.flags, t.flag);
      }
    } else if (d != printed) {
      v.diffs.push_back("dim " + fe.label + ": computed " + std::to_string(d) + ", table " + std::to_string(printed));
    }
    accepted[fe.label] = d;
  }
  const LabelCount want = e.factor_counts();
  if (got != want) v.diffs.push_back("factor multiset: computed " + format_count(got) + ", expected " + format_count(want));

  // socle layers
  const auto want_layers = e.socle_layers();
  std::vector<LabelCount> got_layers;
  for (const auto& layer : r.socle) got_layers.push_back(layer_count(layer));
  if (got_layers != want_layers) {
    std::string a, b;
    for (const auto& l : got_layers) a += (a.empty() ? "" : " | ") + format_count(l);
    for (const auto& l : want_layers) b += (b.empty() ? "" : " | ") + format_count(l);
    v.diffs.push_back("socle series: computed " + a + ", expected " + b);
  }

  // lattice
  if (!r.lattice.computed) {
    v.diffs.push_back("lattice not computed");
  } else {
    const auto& L = r.lattice;
    if (L.dims.empty() || L.dims.front() != 0 || L.dims.back() != r.nonsingular)
      v.diffs.push_back("lattice does not run from 0 to FP");
    for (std::size_t i = 0; i < L.edges.size(); ++i) {
      const auto [a, b] = L.edges[i];
      auto it = accepted.find(L.edge_labels[i]);
      if (a >= L.dims.size() || b >= L.dims.size() || it == accepted.end() ||
          static_cast<long long>(L.dims[b] - L.dims[a]) != it->second) {
        v.diffs.push_back("lattice cover " + std::to_string(a) + " < " + std::to_string(b) + " has inconsistent dimension");
        break;
      }
    }
    LabelledLattice computed;
    computed.dims.assign(L.dims.begin(), L.dims.end());
    for (std::size_t i = 0; i < L.edges.size(); ++i)
      computed.edges.push_back({L.edges[i].first, L.edges[i].second, L.edge_labels[i]});
    try {
      LabelledLattice model = e.lattice();
      for (std::size_t i = 0; i < model.dims.size(); ++i) {
        long long d = 0;
        for (const auto& [k, n] : model.content[i]) d += accepted.at(k) * n;
        model.dims[i] = d;
      }
      if (!isomorphic(computed, model))
        v.diffs.push_back("lattice shape: computed " + std::to_string(computed.dims.size()) + " nodes / " +
                          std::to_string(computed.edges.size()) + " covers, expected " +
                          std::to_string(model.dims.size()) + " nodes / " + std::to_string(model.edges.size()) +
                          " covers (or same counts, different diagram)");
    } catch (const std::exception& ex) {
      v.diffs.push_back(std::string("lattice model: ") + ex.what());
    }
  }
  v.match = v.diffs.empty();
  return v;
}

// ---- serialization ------------------------------------------------------------

nlohmann::ordered_json to_json(const Report& r) {
  using oj = nlohmann::ordered_json;
  oj j;
  j["schema"] = 1;
  j["input"] = {{"family", family_name(r.spec.family)},
                {"m", r.spec.dim},
                {"n", r.spec.n()},
                {"ell", r.ell},
                {"seed", r.seed}};
  j["points"] = {{"nonsingular", r.nonsingular}, {"singular", r.singular}};
  j["params"] = {{"v", r.params.v}, {"a", r.params.a}, {"b", r.params.b}, {"r", r.params.r}, {"s", r.params.s}};
  j["roots"] = oj::array({r.roots.c, r.roots.d});
  oj g;
  g["order"] = r.group.order ? oj(*r.group.order) : oj(nullptr);
  g["formulaOrder"] = r.group.formula;
  g["rank"] = r.group.rank;
  g["suborbits"] = r.group.suborbits;
  g["orderOnPoints"] = r.group.order_on_points ? oj(*r.group.order_on_points) : oj(nullptr);
  j["group"] = g;
  oj factors = oj::array();
  for (const auto& fe : r.factors)
    factors.push_back({{"label", fe.label}, {"dim", fe.dim}, {"mult", fe.mult}, {"absIrred", fe.abs_irred}});
  j["factors"] = factors;
  oj socle = oj::array();
  for (const auto& layer : r.socle) {
    oj l = oj::array();
    for (const auto& x : layer) l.push_back({{"label", x.label}, {"dim", x.dim}});
    socle.push_back(l);
  }
  j["socleSeries"] = socle;
  oj lat;
  if (r.lattice.computed) {
    oj nodes = oj::array(), edges = oj::array();
    for (std::size_t i = 0; i < r.lattice.dims.size(); ++i) nodes.push_back({{"id", i}, {"dim", r.lattice.dims[i]}});
    for (const auto& [a, b] : r.lattice.edges) edges.push_back(oj::array({a, b}));
    lat["nodes"] = nodes;
    lat["edges"] = edges;
    lat["edgeLabels"] = r.lattice.edge_labels;
  } else {
    lat = nullptr;
  }
  j["lattice"] = lat;
  j["verdict"] = {{"match", r.verdict.match}, {"flags", r.verdict.flags}, {"diffs", r.verdict.diffs}};
  oj t = oj::object();
  for (const auto& [k, ms] : r.timings_ms) t[k] = std::round(ms * 1000.0) / 1000.0;
  j["timingsMs"] = t;
  oj props = oj::array();
  for (const auto& p : r.properties) props.push_back({{"name", p.name}, {"ok", p.ok}, {"detail", p.detail}});
  j["properties"] = props;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  if (j.value("schema", 0) != 1) throw InvalidInput("unsupported report schema");
  Report r;
  const auto& in = j.at("input");
  r.spec = {parse_family(in.at("family").get<std::string>()), in.at("m").get<int>()};
  r.spec.validate();
  r.ell = in.at("ell").get<long long>();
  r.seed = in.at("seed").get<std::uint64_t>();
  r.nonsingular = j.at("points").at("nonsingular").get<std::size_t>();
  r.singular = j.at("points").at("singular").get<std::size_t>();
  const auto& p = j.at("params");
  r.params = {p.at("v").get<long long>(), p.at("a").get<long long>(), p.at("b").get<long long>(),
              p.at("r").get<long long>(), p.at("s").get<long long>()};
  r.roots = {j.at("roots").at(0).get<long long>(), j.at("roots").at(1).get<long long>()};
  const auto& g = j.at("group");
  if (!g.at("order").is_null()) r.group.order = g.at("order").get<std::string>();
  r.group.formula = g.at("formulaOrder").get<std::string>();
  r.group.rank = g.at("rank").get<int>();
  r.group.suborbits = g.at("suborbits").get<std::vector<std::size_t>>();
  if (g.contains("orderOnPoints") && !g.at("orderOnPoints").is_null())
    r.group.order_on_points = g.at("orderOnPoints").get<std::string>();
  for (const auto& fe : j.at("factors"))
    r.factors.push_back({fe.at("label").get<std::string>(), fe.at("dim").get<std::size_t>(),
                         fe.at("mult").get<std::size_t>(), fe.at("absIrred").get<bool>()});
  for (const auto& layer : j.at("socleSeries")) {
    std::vector<LayerEntry> out;
    for (const auto& x : layer) out.push_back({x.at("label").get<std::string>(), x.at("dim").get<std::size_t>()});
    r.socle.push_back(std::move(out));
  }
  const auto& lat = j.at("lattice");
  if (!lat.is_null()) {
    r.lattice.computed = true;
    for (const auto& n : lat.at("nodes")) r.lattice.dims.push_back(n.at("dim").get<std::size_t>());
    for (const auto& e : lat.at("edges"))
      r.lattice.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
    r.lattice.edge_labels = lat.at("edgeLabels").get<std::vector<std::string>>();
    if (r.lattice.edge_labels.size() != r.lattice.edges.size()) throw InvalidInput("edgeLabels length mismatch");
  }
  const auto& vd = j.at("verdict");
  r.verdict.match = vd.at("match").get<bool>();
  r.verdict.flags = vd.at("flags").get<std::vector<std::string>>();
  r.verdict.diffs = vd.at("diffs").get<std::vector<std::string>>();
  for (const auto& d : r.verdict.diffs)
    if (d.rfind(kPipelinePrefix, 0) == 0) r.pipeline_diffs.push_back(d);
  for (const auto& fl : r.verdict.flags)
    if (kPipelineFlags.count(fl)) r.pipeline_flags.push_back(fl);
  if (j.contains("timingsMs"))
    for (const auto& [k, ms] : j.at("timingsMs").items()) r.timings_ms.emplace_back(k, ms.get<double>());
  if (j.contains("properties"))
    for (const auto& pr : j.at("properties"))
      r.properties.push_back({pr.at("name").get<std::string>(), pr.at("ok").get<bool>(),
                              pr.at("detail").get<std::string>()});
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.spec.describe() << " over F_" << r.ell << " (seed " << r.seed << ")\n";
  os << "  points: |P| = " << r.nonsingular << ", |P0| = " << r.singular << "\n";
  os << "  params: v=" << r.params.v << " a=" << r.params.a << " b=" << r.params.b << " r=" << r.params.r
     << " s=" << r.params.s << "; roots " << r.roots.c << ", " << r.roots.d << "\n";
  os << "  group: order " << (r.group.order ? *r.group.order : "(skipped)") << ", formula " << r.group.formula
     << ", rank " << r.group.rank << ", suborbits";
  for (auto s : r.group.suborbits) os << " " << s;
  os << "\n  factors:";
  for (const auto& fe : r.factors) os << " " << fe.label << "(" << fe.dim << ")x" << fe.mult;
  os << "\n  socle series: ";
  for (std::size_t i = 0; i < r.socle.size(); ++i) {
    if (i) os << " - ";
    std::map<std::string, std::pair<std::size_t, int>> c;
    for (const auto& x : r.socle[i]) {
      c[x.label].first = x.dim;
      ++c[x.label].second;
    }
    std::string s;
    for (const auto& [k, dv] : c) {
      if (!s.empty()) s += "+";
      s += (dv.second > 1 ? std::to_string(dv.second) + "*" : "") + k + "(" + std::to_string(dv.first) + ")";
    }
    os << (c.size() > 1 || r.socle[i].size() > 1 ? "(" + s + ")" : s);
  }
  os << "\n  lattice: ";
  if (r.lattice.computed)
    os << r.lattice.dims.size() << " submodules, " << r.lattice.edges.size() << " covers";
  else
    os << "not computed";
  os << "\n";
  for (const auto& p : r.properties) os << "  property " << p.name << ": " << (p.ok ? "ok" : "FAILED") << " (" << p.detail << ")\n";
  os << "  verdict: " << (r.verdict.match ? "PASS" : "FAIL");
  for (const auto& f : r.verdict.flags) os << " [" << f << "]";
  os << "\n";
  for (const auto& d : r.verdict.diffs) os << "    diff: " << d << "\n";
  os << "  timings (ms):";
  for (const auto& [k, ms] : r.timings_ms) os << " " << k << "=" << static_cast<long long>(ms + 0.5);
  os << "\n";
  return os.str();
}

nlohmann::ordered_json to_json(const ExpectedStructure& e) {
  using oj = nlohmann::ordered_json;
  oj j;
  j["input"] = {{"family", family_name(e.spec.family)}, {"m", e.spec.dim}, {"n", e.spec.n()}, {"ell", e.ell}};
  j["table"] = e.table;
  j["row"] = e.row;
  j["condition"] = e.condition;
  j["shape"] = e.shape;
  j["outOfScale"] = e.out_of_scale;
  oj dims = oj::object(), printed = oj::object();
  for (const auto& [k, v] : e.dims) dims[k] = v;
  for (const auto& [k, v] : e.printed) printed[k] = v;
  j["dims"] = dims;
  j["printedDims"] = printed;
  oj typos = oj::array();
  for (const auto& t : e.typos)
    typos.push_back({{"flag", t.flag}, {"label", t.label}, {"printed", t.printed}, {"corrected", t.corrected}, {"note", t.note}});
  j["typos"] = typos;
  oj factors = oj::object();
  for (const auto& [k, v] : e.factor_counts()) factors[k] = v;
  j["factors"] = factors;
  oj layers = oj::array();
  for (const auto& l : e.socle_layers()) {
    oj x = oj::object();
    for (const auto& [k, v] : l) x[k] = v;
    layers.push_back(x);
  }
  j["socleLayers"] = layers;
  const LabelledLattice lat = e.lattice();
  oj nodes = oj::array(), edges = oj::array();
  for (std::size_t i = 0; i < lat.dims.size(); ++i) nodes.push_back({{"id", i}, {"dim", lat.dims[i]}});
  for (const auto& ed : lat.edges) edges.push_back({ed.from, ed.to, ed.label});
  j["lattice"] = {{"nodes", nodes}, {"edges", edges}};
  return j;
}

std::vector<SuiteInstance> suite_instances(bool extended) {
  std::vector<SuiteInstance> out = {
      {{Family::OPlus, 6}, 5},    {{Family::OPlus, 6}, 7},    {{Family::OPlus, 6}, 3},
      {{Family::OPlus, 8}, 3},    {{Family::OMinus, 6}, 5},   {{Family::OMinus, 6}, 7},
      {{Family::OMinus, 6}, 3},   {{Family::OMinus, 8}, 3},   {{Family::OMinus, 8}, 17},
      {{Family::Unitary, 4}, 7},  {{Family::Unitary, 4}, 5},  {{Family::Unitary, 4}, 3},
      {{Family::Unitary, 5}, 5},  {{Family::Unitary, 5}, 11}, {{Family::Unitary, 5}, 3},
      {{Family::Unitary, 6}, 3},
  };
  if (extended) out.push_back({{Family::Unitary, 7}, 3});
  return out;
}

std::vector<SkippedRow> skipped_rows() {
  return {{4, 4, "l = 3; n = 1 mod 3", "OUT_OF_SCALE",
           "smallest instance is U(9) with |P| = 43776, beyond the desk-scale guard"}};
}

}  // namespace rank3
