// ncaseed: command-line front end for the ncas library.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ncas/report.hpp"

using namespace ncas;

namespace {

// exit 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string expr, file, type, rhs_type, id = "all";
  std::vector<std::string> relations, assume, lhs, rhs;
  bool symbolic = false, json = false;
  int family = -1;
};

const std::map<std::string, std::string> kAlias{{"a", "alpha"}, {"b", "beta"}, {"g", "gamma"}};

ParseOptions parse_opts(const Options& o) { return {.declare_parameters = o.symbolic}; }

Assumptions assumptions_of(const Options& o) {
  Assumptions ctx;
  for (auto& clause : o.assume) {
    auto ne = clause.find("!=");
    auto eq = clause.find('=');
    if (ne != std::string::npos) {
      Scalar d = parse_scalar(clause.substr(0, ne), {.declare_parameters = true}) -
                 parse_scalar(clause.substr(ne + 2), {.declare_parameters = true});
      auto c = ctx.with_nonzero(d);
      if (!c) throw UsageError("contradictory assumption " + clause);
      ctx = *c;
    } else if (eq != std::string::npos) {
      Scalar d = parse_scalar(clause.substr(0, eq), {.declare_parameters = true}) -
                 parse_scalar(clause.substr(eq + 1), {.declare_parameters = true});
      auto zs = ctx.with_zero(d);
      if (zs.size() != 1) throw UsageError("assumption " + clause + " must determine one branch");
      ctx = zs[0];
    } else {
      throw UsageError("assumption must use '=' or '!=': " + clause);
    }
  }
  return ctx;
}

// a=2,b=-1/3 (rationals only)
std::map<std::string, Scalar> bindings_of(const std::vector<std::string>& items) {
  std::map<std::string, Scalar> out;
  for (auto& item : items) {
    std::stringstream ss(item);
    for (std::string part; std::getline(ss, part, ',');) {
      auto eq = part.find('=');
      if (eq == std::string::npos) throw UsageError("binding must look like name=value: " + part);
      std::string name = detail::trim(part.substr(0, eq));
      if (auto it = kAlias.find(name); it != kAlias.end()) name = it->second;
      Scalar v = parse_scalar(part.substr(eq + 1));
      if (!v.is_constant()) throw UsageError("binding " + part + " is not rational");
      out[name] = v;
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ReportRow row(const std::string& name, bool ok, std::string details) {
  auto r = detail::verdict(ok, std::move(details));
  r.row = name;
  return r;
}

VerificationReport single(const std::string& cmd, ReportRow r) {
  r.table = cmd;
  return {cmd, {r}};
}

GeometricPair pair_of_options(const Options& o) {
  if (!o.file.empty()) {
    auto E = parse_pair_spec(read_file(o.file));
    if (E.tag.empty()) E.tag = o.file;
    return E;
  }
  if (o.type.empty()) throw UsageError("give a pair-spec file (-f) or a catalog --type");
  auto fams = catalog_sigma(o.type);
  size_t k = o.family < 0 ? 0 : size_t(o.family);
  if (k >= fams.size()) throw UsageError("family index out of range");
  return fams[k];
}

VerificationReport cmd_check_tsp(const Options& o) {
  Assumptions ctx = assumptions_of(o);
  NCPoly w = parse_ncpoly(o.expr, parse_opts(o), 4);
  auto p = analyze_potential(w, ctx);
  ReportRow r = row(o.expr, p.twisting.has_value(),
                    std::string("superpotential ") + (p.is_super ? "yes" : "no") + ", twisted superpotential " +
                        (p.twisting ? "yes" : "no") + ", standard " + (p.standard ? "yes" : "no"));
  if (p.twisting) r.witnesses.push_back("theta = " + p.twisting->to_string());
  r.witnesses.push_back("d_x w = " + p.derivatives.first.to_string());
  r.witnesses.push_back("d_y w = " + p.derivatives.second.to_string());
  r.assumptions_used = ctx.describe();
  return single("check-tsp", r);
}

VerificationReport cmd_derive(const Options& o) {
  GeometricPair E = pair_of_options(o);
  Assumptions ctx = E.conditions;
  if (!o.assume.empty()) ctx = detail::merged(ctx, assumptions_of(o));
  VerificationReport rep{"derive", {}};
  for (auto& b : relations_from_pair(E, ctx)) {
    ReportRow r = row(E.tag, true, "dimension " + std::to_string(b.dimension));
    r.table = "derive";
    r.assumptions_used = b.assumptions.describe();
    r.witnesses = detail::strings(b.basis);
    rep.rows.push_back(r);
  }
  return rep;
}

VerificationReport cmd_asreg(const Options& o) {
  Assumptions ctx = assumptions_of(o);
  VerificationReport rep{"asreg", {}};
  std::vector<std::pair<NCPoly, Assumptions>> ws;
  if (!o.expr.empty()) {
    ws.push_back({parse_ncpoly(o.expr, parse_opts(o), 4), ctx});
  } else if (o.relations.size() == 2) {
    NCPoly g1 = parse_ncpoly(o.relations[0], parse_opts(o), 3), g2 = parse_ncpoly(o.relations[1], parse_opts(o), 3);
    for (auto& s : potential_from_relations(g1, g2, ctx)) ws.push_back({s.omega, s.assumptions});
  } else {
    throw UsageError("asreg needs -e potential or --relations g1 g2");
  }
  for (auto& [w, c] : ws)
    for (auto& b : as_regular_branches(w, c)) {
      std::string why;
      if (!b.value) is_as_regular(w, b.assumptions, &why);
      ReportRow r = row(w.to_string(), b.value, b.value ? "AS-regular" : why);
      r.table = "asreg";
      r.assumptions_used = b.assumptions.describe();
      rep.rows.push_back(r);
    }
  return rep;
}

VerificationReport cmd_g2(const Options& o) {
  GeometricPair E = pair_of_options(o);
  if (o.expr.empty()) throw UsageError("g2 needs -e cubic");
  NCPoly f = parse_ncpoly(o.expr, {.declare_parameters = true}, 3);
  bool in = check_g2_membership(f, E);
  return single("g2", row(o.expr, in, in ? "vanishes on the graph of sigma" : "does not vanish on the graph of sigma"));
}

AlgebraInstance instance_of(const std::string& type, const std::vector<std::string>& b, bool symbolic,
                            const std::string& suffix) {
  if (symbolic) return symbolic_instance(type, suffix);
  return make_instance(type, bindings_of(b));
}

std::string instance_name(const AlgebraInstance& a) {
  std::string s = a.type;
  if (!a.params.empty()) {
    s += "(";
    bool first = true;
    for (auto& [n, v] : a.params) s += (first ? "" : ", ") + n + "=" + v.to_string(), first = false;
    s += ")";
  }
  return s;
}

VerificationReport cmd_iso(const Options& o) {
  if (o.type.empty()) throw UsageError("iso needs --type");
  auto a = instance_of(o.type, o.lhs, o.symbolic, ""), b = instance_of(o.rhs_type.empty() ? o.type : o.rhs_type, o.rhs, o.symbolic, "1");
  auto res = iso_condition(a, b, assumptions_of(o));
  ReportRow r = row(instance_name(a) + " vs " + instance_name(b), res.isomorphic,
                    res.isomorphic ? "isomorphic" : "not isomorphic" + (res.reason.empty() ? "" : ": " + res.reason));
  for (auto& br : res.branches) {
    r.witnesses.push_back("rho = " + br.witness.to_string() + " (" + br.shape + ")");
    for (auto& z : br.assumptions.zero_log()) r.witnesses.push_back("  if " + z);
  }
  return single("iso", r);
}

VerificationReport cmd_morita(const Options& o) {
  if (o.type.empty()) throw UsageError("morita needs --type");
  auto a = instance_of(o.type, o.lhs, o.symbolic, ""), b = instance_of(o.rhs_type.empty() ? o.type : o.rhs_type, o.rhs, o.symbolic, "1");
  bool m = morita_condition(a, b, assumptions_of(o));
  return single("morita", row(instance_name(a) + " vs " + instance_name(b), m,
                              m ? "graded Morita equivalent" : "not graded Morita equivalent"));
}

VerificationReport cmd_wl(const Options& o) {
  auto c = wl_catalog();
  VerificationReport rep{"wl", {}};
  auto add = [&](ReportRow r) {
    r.table = "wl";
    rep.rows.push_back(r);
  };
  add(row("omega_B", is_superpotential(c.omega_B), c.omega_B.to_string()));
  Scalar t[4] = {Scalar::param("t11"), Scalar::param("t12"), Scalar::param("t21"), Scalar::param("t22")};
  LinearMap2 theta(t[0], t[1], t[2], t[3]);
  auto gen = *Assumptions().with_nonzero(theta.det());
  auto lam = aut_membership(c.omega_B, theta, gen);
  add(row("Aut(omega_B)", lam && !lam->is_zero(), "generic theta scales omega_B by " + (lam ? lam->to_string() : "?")));
  auto nz = *Assumptions().with_nonzero(Scalar::param("alpha"));
  auto& w1 = type_row("WL1");
  ReportRow b1 = row("B1(alpha)", same_span({c.B1.first, c.B1.second},
                                             {detail::rel(w1.relations[0]), detail::rel(w1.relations[1])}, nz),
                     "twist by diag(1,alpha)");
  b1.witnesses = detail::strings({c.B1.first, c.B1.second});
  add(b1);
  auto& w2 = type_row("WL2");
  std::vector<NCPoly> row2{detail::rel(w2.relations[0]), detail::rel(w2.relations[1])};
  bool literal = same_span({c.B2.first, c.B2.second}, row2);
  auto inv = derivation_quotient(ms_twist(c.omega_B, LinearMap2(1, -1, 0, 1)));
  bool inverse = same_span({inv.first, inv.second}, row2);
  ReportRow b2 = row("B2", literal, std::string("twist by (1 1; 0 1) ") + (literal ? "matches" : "differs") +
                                        " from the tabulated row; (1 -1; 0 1) " + (inverse ? "matches" : "differs"));
  if (!literal && inverse) b2.status = RowStatus::Discrepancy;
  b2.witnesses = detail::strings({c.B2.first, c.B2.second});
  add(b2);
  std::string why;
  bool twl = same_span({c.TWL.first, c.TWL.second}, {detail::rel(type_row("TWL").relations[0]),
                                                     detail::rel(type_row("TWL").relations[1])}) &&
             detail::regular_row(c.TWL.first, c.TWL.second, {}, why).status == RowStatus::Pass;
  ReportRow tr = row("TWL", twl, "relations regular" + why);
  tr.witnesses = detail::strings({c.TWL.first, c.TWL.second});
  add(tr);
  if (!o.lhs.empty() || !o.rhs.empty()) {
    auto l = bindings_of(o.lhs), r = bindings_of(o.rhs);
    if (!l.count("alpha") || !r.count("alpha")) throw UsageError("wl comparison needs --lhs a=.. --rhs a=..");
    bool iso = wl_isomorphic(l["alpha"], r["alpha"]);
    add(row("B1(" + l["alpha"].to_string() + ") vs B1(" + r["alpha"].to_string() + ")", iso,
            iso ? "isomorphic" : "not isomorphic"));
  }
  return rep;
}

int run(const std::string& cmd, const Options& o) {
  std::vector<VerificationReport> reps;
  if (cmd == "check-tsp") reps.push_back(cmd_check_tsp(o));
  else if (cmd == "derive") reps.push_back(cmd_derive(o));
  else if (cmd == "asreg") reps.push_back(cmd_asreg(o));
  else if (cmd == "g2") reps.push_back(cmd_g2(o));
  else if (cmd == "iso") reps.push_back(cmd_iso(o));
  else if (cmd == "morita") reps.push_back(cmd_morita(o));
  else if (cmd == "wl") reps.push_back(cmd_wl(o));
  else if (cmd == "tables") {
    std::string id = o.id;
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char ch) { return char(std::toupper(ch)); });
    if (id == "ALL") {
      for (auto& t : table_ids()) reps.push_back(reproduce_table(t));
    } else {
      if (std::find(table_ids().begin(), table_ids().end(), id) == table_ids().end())
        throw UsageError("unknown table " + o.id);
      reps.push_back(reproduce_table(id));
    }
  }
  bool ok = true;
  for (auto& r : reps) ok = ok && r.ok();
  if (o.json) {
    if (reps.size() == 1) {
      std::cout << reps[0].to_json().dump(2) << "\n";
    } else {
      auto arr = nlohmann::ordered_json::array();
      for (auto& r : reps) arr.push_back(r.to_json());
      std::cout << arr.dump(2) << "\n";
    }
  } else {
    for (auto& r : reps) std::cout << r.to_text();
  }
  return ok ? 0 : 1;
}

bool usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::InvalidSymbol:
    case ErrorKind::UnknownType:
    case ErrorKind::MixedDegree:
    case ErrorKind::WrongDegree:
    case ErrorKind::ArityMismatch:
    case ErrorKind::UnboundParameter:
    case ErrorKind::NonScalarEntry:
    case ErrorKind::AssumptionViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for cubic AS-regular algebras on two generators"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_flag("--json", o.json, "machine-readable report");
    s->add_flag("--symbolic", o.symbolic, "allow named parameters");
    s->add_option("--assume", o.assume, "clause like \"a!=0\" or \"b=2\"");
  };
  auto* tsp = app.add_subcommand("check-tsp", "twisted superpotential and standard checks");
  tsp->add_option("-e,--expr", o.expr, "degree-4 potential")->required();
  auto* der = app.add_subcommand("derive", "relations of a geometric pair");
  auto* asr = app.add_subcommand("asreg", "AS-regularity of a potential or a pair of relations");
  asr->add_option("-e,--expr", o.expr, "degree-4 potential");
  asr->add_option("--relations", o.relations, "two cubic relations")->expected(2);
  auto* g2 = app.add_subcommand("g2", "does a cubic vanish on the graph of sigma");
  g2->add_option("-e,--expr", o.expr, "cubic element")->required();
  for (auto* s : {der, g2}) {
    s->add_option("-f,--file", o.file, "pair-spec file");
    s->add_option("--type", o.type, "catalog type: S', T'1, T'2, FL");
    s->add_option("--family", o.family, "catalog family index");
  }
  auto* iso = app.add_subcommand("iso", "graded isomorphism condition");
  auto* mor = app.add_subcommand("morita", "graded Morita equivalence condition");
  for (auto* s : {iso, mor}) {
    s->add_option("--type", o.type, "type of both sides")->required();
    s->add_option("--rhs-type", o.rhs_type, "type of the right side when it differs");
    s->add_option("--lhs", o.lhs, "bindings a=.., b=..");
    s->add_option("--rhs", o.rhs, "bindings a=.., b=..");
  }
  auto* tab = app.add_subcommand("tables", "reproduce a table");
  tab->add_option("--id", o.id, "1, 2, 3, 4, ISOM, GME or all");
  auto* wl = app.add_subcommand("wl", "WL and TWL normal forms");
  wl->add_option("--lhs", o.lhs, "a=..");
  wl->add_option("--rhs", o.rhs, "a=..");
  for (auto* s : {tsp, der, asr, g2, iso, mor, tab, wl}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage_kind(e.kind()) ? 2 : 1;
  } catch (const CaseSplitRequired& e) {
    std::cerr << "error: " << e.what() << " (add --assume clauses)\n";
    return 2;
  }
}
