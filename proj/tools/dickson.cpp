#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dickson/errors.hpp"
#include "dickson/glgroup.hpp"
#include "dickson/invariants.hpp"
#include "dickson/modbasis.hpp"
#include "dickson/parser.hpp"
#include "dickson/steenrod.hpp"
#include "dickson/suite.hpp"
#include "dickson/transfer.hpp"

using namespace dickson;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "dickson-cli/1";

struct Options {
  int p = 0, n = 0;
  std::string format = "text";
  std::string expr;
  std::string family;
  std::string op;
  std::string group = "gl";
  std::string composition;
  std::string scope = "fast";
  bool transposed = false;
  bool report = false;
  bool timing = false;
  std::uint64_t seed = 1;
  int samples = 50;
  std::size_t step_cap = 1000000;
};

/// Usage errors found after CLI11 accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool json_out(const Options& o) { return o.format == "json"; }

Json header(const Options& o, const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["p"] = o.p;
  j["n"] = o.n;
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Term-by-term so large expansions are never held as one string.
void stream_poly(std::ostream& out, const SuperPoly& f) {
  if (f.is_zero()) {
    out << "0";
    return;
  }
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) out << " + ";
    first = false;
    out << SuperPoly::from_terms(f.p(), f.n(), {t}).to_string();
  }
}

GenExpr parse_input(const Options& o) { return parse_expr(o.expr, o.p, o.n); }

std::optional<GenExpr> in_dickson(const SuperPoly& f) {
  std::vector<GenExpr> gens;
  for (int i = 0; i < f.n(); ++i) gens.push_back(GenExpr::symbol(f.p(), f.n(), GenSymbol::d(f.n(), i)));
  return express_in(f, gens);
}

Json report_json(const CheckReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) items.push_back({{"name", i.name}, {"pass", i.ok}, {"detail", i.detail}});
  return items;
}

void print_report(const CheckReport& r) {
  for (const auto& i : r.items)
    std::cout << (i.ok ? "PASS  " : "FAIL  ") << i.name << (i.detail.empty() ? "" : "  [" + i.detail + "]") << "\n";
}

int cmd_expand(const Options& o) {
  SuperPoly f = parse_input(o).expand();
  if (json_out(o)) {
    Json j = header(o, "expand");
    j["input"] = o.expr;
    j["degree"] = f.degree();
    j["expanded"] = f.to_string();
    j["polynomial"] = Json::parse(to_json(f));
    emit(j);
  } else {
    stream_poly(std::cout, f);
    std::cout << "\n";
  }
  return 0;
}

std::vector<GLMatrix> named_group(const Options& o, std::string& name) {
  name = o.group + (o.transposed ? "^t" : "");
  if (o.group == "gl") return gl_generators(o.p, o.n);
  if (o.group == "un") return unipotent_generators(o.p, o.n, o.transposed);
  if (o.group == "p1n1" || o.group == "pn11") return subgroup_generators(o.p, o.n, tag_from_name(o.group), o.transposed);
  if (o.group == "borel")
    return parabolic_generators(o.p, Composition(std::vector<int>(static_cast<std::size_t>(o.n), 1)), o.transposed);
  if (o.group == "parabolic") {
    if (o.composition.empty()) throw UsageError("--group parabolic needs --composition, e.g. 2,1");
    Composition I = Composition::from_json("[" + o.composition + "]");
    if (I.n() != o.n) throw UsageError("composition " + I.to_string() + " does not sum to n");
    name = "P" + I.to_string() + (o.transposed ? "^t" : "");
    return parabolic_generators(o.p, I, o.transposed);
  }
  throw UsageError("unknown group '" + o.group + "' (gl, un, borel, p1n1, pn11, parabolic)");
}

int cmd_invariant_check(const Options& o) {
  std::string name;
  auto gens = named_group(o, name);
  SuperPoly f = parse_input(o).expand();
  bool ok = is_invariant(f, gens);
  if (json_out(o)) {
    Json j = header(o, "invariant-check");
    j["input"] = o.expr;
    j["group"] = name;
    j["invariant"] = ok;
    emit(j);
  } else {
    std::cout << o.expr << (ok ? " is invariant under " : " is not invariant under ") << name << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_steenrod(const Options& o) {
  SteenrodOp op = SteenrodOp::parse(o.op);
  GenExpr in = parse_input(o);
  SuperPoly v = apply_op(op, in.expand());
  // refactor through the input's own symbols, else Dickson and Mui classes
  std::vector<GenExpr> gens;
  for (const auto& [mono, c] : in.terms())
    for (const auto& [s, e] : mono) {
      GenExpr g = GenExpr::symbol(o.p, o.n, s);
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
  std::optional<GenExpr> refactored = v.is_zero() ? std::optional<GenExpr>(GenExpr(o.p, o.n)) : std::nullopt;
  if (!refactored && !gens.empty()) refactored = express_in(v, gens);
  if (!refactored && o.p != 2) refactored = as_gl_invariant(v);
  if (json_out(o)) {
    Json j = header(o, "steenrod");
    j["op"] = op.to_string();
    j["input"] = o.expr;
    j["expanded"] = v.to_string();
    j["expression"] = refactored ? Json(refactored->to_string()) : Json(nullptr);
    emit(j);
  } else {
    stream_poly(std::cout, v);
    std::cout << "\n";
    if (refactored) std::cout << "= " << refactored->to_string() << "\n";
  }
  return 0;
}

int cmd_basis(const Options& o) {
  BasisFamily fam = family_from_name(o.family);
  auto basis = enumerate_basis(fam, o.p, o.n);
  long long rank = family_rank(fam, o.p, o.n);
  if (json_out(o)) {
    Json j = header(o, "basis");
    j["family"] = family_name(fam);
    j["rank"] = rank;
    j["size"] = basis.size();
    Json elems = Json::array();
    for (const auto& b : basis) elems.push_back({{"element", b.to_string()}, {"degree", b.degree()}});
    j["basis"] = elems;
    emit(j);
  } else {
    for (const auto& b : basis) std::cout << b.degree() << "\t" << b.to_string() << "\n";
    std::cout << basis.size() << " elements, rank " << rank << "\n";
  }
  return 0;
}

int cmd_rewrite(const Options& o, bool only_xi) {
  BasisFamily fam = family_from_name(o.family);
  GenExpr f = parse_input(o);
  if (only_xi) {
    GenExpr c = xi(f, fam);
    if (json_out(o)) {
      Json j = header(o, "xi");
      j["family"] = family_name(fam);
      j["input"] = o.expr;
      j["xi"] = c.to_string();
      emit(j);
    } else {
      std::cout << c.to_string() << "\n";
    }
    return 0;
  }
  Decomposition dec = rewrite(f, fam, o.step_cap);
  if (json_out(o)) {
    Json j = header(o, "rewrite");
    j["family"] = family_name(fam);
    j["input"] = o.expr;
    Json terms = Json::array();
    for (const auto& [b, c] : dec.terms) terms.push_back({{"basis", b.to_string()}, {"coefficient", c.to_string()}});
    j["terms"] = terms;
    j["used_oracle"] = dec.used_oracle;
    j["steps"] = dec.steps;
    emit(j);
  } else {
    for (const auto& [b, c] : dec.terms) std::cout << b.to_string() << "\t" << c.to_string() << "\n";
    std::cout << (dec.used_oracle ? "oracle" : "rewriting") << ", " << dec.steps << " steps\n";
  }
  return 0;
}

int cmd_transfer(const Options& o) {
  CosetTag tag = tag_from_name(o.family);
  if (o.report) {
    CheckReport r;
    if (tag == CosetTag::Pn11)
      r = verify_hyperplane_transfer(o.p, o.n, o.samples, o.seed);
    else if (tag == CosetTag::P1n1)
      r = verify_line_transfer(o.p, o.n);
    else
      r = verify_exterior_transfer(o.p, o.n, std::min(o.samples, 20), o.seed);
    if (json_out(o)) {
      Json j = header(o, "transfer");
      j["family"] = tag_name(tag);
      j["seed"] = o.seed;
      j["pass"] = r.ok();
      j["items"] = report_json(r);
      emit(j);
    } else {
      print_report(r);
    }
    return r.ok() ? 0 : 1;
  }
  if (o.expr.empty()) throw UsageError("transfer needs an expression or --report");
  SuperPoly t = transfer(parse_input(o).expand(), tag);
  std::optional<GenExpr> d = in_dickson(t);
  std::optional<GenExpr> g = d ? d : (o.p != 2 ? as_gl_invariant(t) : std::nullopt);
  if (json_out(o)) {
    Json j = header(o, "transfer");
    j["family"] = tag_name(tag);
    j["input"] = o.expr;
    j["expanded"] = t.to_string();
    j["dickson"] = d ? Json(d->to_string()) : Json(nullptr);
    j["gl_invariant"] = g ? Json(g->to_string()) : Json(nullptr);
    emit(j);
  } else {
    stream_poly(std::cout, t);
    std::cout << "\n";
    if (g) std::cout << "= " << g->to_string() << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  auto entries = run_verify_suite(o.scope, o.seed, o.samples);
  bool ok = true;
  for (const auto& e : entries) ok = ok && e.report.ok();
  if (json_out(o)) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "verify";
    j["scope"] = o.scope;
    j["seed"] = o.seed;
    j["samples"] = o.samples;
    j["pass"] = ok;
    Json results = Json::array();
    for (const auto& e : entries) {
      Json r{{"tag", e.tag}, {"p", e.p}, {"n", e.n}, {"pass", e.report.ok()}, {"items", report_json(e.report)}};
      if (o.timing) r["seconds"] = e.seconds;
      results.push_back(r);
    }
    j["results"] = results;
    emit(j);
  } else {
    for (const auto& e : entries) {
      std::ostringstream line;
      line << (e.report.ok() ? "PASS  " : "FAIL  ") << e.tag << " (" << e.p << "," << e.n << ")  ";
      line.setf(std::ios::fixed);
      line.precision(3);
      line << e.seconds << "s";
      std::cout << line.str() << "\n";
      for (const auto& i : e.report.items)
        if (!i.ok) std::cout << "      " << i.name << ": " << i.detail << "\n";
    }
    std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  }
  return ok ? 0 : 1;
}

void add_ring(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "prime")->required();
  sub->add_option("--n", o.n, "number of variables")->required();
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dickson and Mui invariants, parabolic bases and transfers"};
  app.require_subcommand(1);
  Options o;

  auto* expand = app.add_subcommand("expand", "expand a generator expression in x_i, y_i");
  add_ring(expand, o);
  expand->add_option("expr", o.expr)->required();

  auto* inv = app.add_subcommand("invariant-check", "test invariance under a subgroup of GL(n, p)");
  add_ring(inv, o);
  inv->add_option("--group", o.group, "gl, un, borel, p1n1, pn11 or parabolic");
  inv->add_option("--composition", o.composition, "block sizes for --group parabolic, e.g. 2,1");
  inv->add_flag("--transposed", o.transposed, "use the transposed subgroup");
  inv->add_option("expr", o.expr)->required();

  auto* st = app.add_subcommand("steenrod", "apply P^k or beta");
  add_ring(st, o);
  st->add_option("--op", o.op, "P^k, P<k> or beta")->required();
  st->add_option("expr", o.expr)->required();

  auto* basis = app.add_subcommand("basis", "list a free basis over the Dickson algebra");
  add_ring(basis, o);
  basis->add_option("--family", o.family, "hn, p1n1, pn11, sylow, wr1, wr2")->required();

  auto* rw = app.add_subcommand("rewrite", "decompose onto a free basis");
  add_ring(rw, o);
  rw->add_option("--family", o.family)->required();
  rw->add_option("--step-cap", o.step_cap, "rewriting steps before the oracle takes over");
  rw->add_option("expr", o.expr)->required();

  auto* x = app.add_subcommand("xi", "coefficient of the basis element 1");
  add_ring(x, o);
  x->add_option("--family", o.family)->required();
  x->add_option("expr", o.expr)->required();

  auto* tr = app.add_subcommand("transfer", "transfer to the GL-invariants");
  add_ring(tr, o);
  tr->add_option("--family", o.family, "p1n1, pn11 or un")->required();
  tr->add_flag("--report", o.report, "run the transfer verification for this family");
  tr->add_option("--seed", o.seed);
  tr->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  tr->add_option("expr", o.expr);

  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("scope", o.scope, "fast, full or all")->check(CLI::IsMember({"fast", "full", "all"}));
  ver->add_option("--seed", o.seed);
  ver->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  ver->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  ver->add_flag("--timing", o.timing, "include timings in JSON output");

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
    if (*expand) return cmd_expand(o);
    if (*inv) return cmd_invariant_check(o);
    if (*st) return cmd_steenrod(o);
    if (*basis) return cmd_basis(o);
    if (*rw) return cmd_rewrite(o, false);
    if (*x) return cmd_rewrite(o, true);
    if (*tr) return cmd_transfer(o);
    if (*ver) return cmd_verify(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
