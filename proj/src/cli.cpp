#include "selfsim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "selfsim/dynamics.hpp"
#include "selfsim/error.hpp"
#include "selfsim/ktheory.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/spec_format.hpp"

namespace selfsim {

namespace {

using json = nlohmann::ordered_json;

// A bound was hit somewhere below a subcommand.
struct Inconclusive {
  std::string bound;
  std::string detail;
};

struct Options {
  std::string spec;
  bool json = false;
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> max_rounds;
  std::string elem, path, lhs, rhs, x, y, germ1, germ2;
  std::string format;
  std::string A, B, matrix, out_file;
  std::string property;
  int k = 2;
  int depth = 6;
  std::size_t level = 1;
};

std::optional<std::size_t> env_max_states() {
  const char* v = std::getenv("SELFSIM_MAX_STATES");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw Error(ErrorCode::InvalidArgument, "SELFSIM_MAX_STATES must be a positive integer");
  return static_cast<std::size_t>(n);
}

class Session {
 public:
  explicit Session(const Options& o) {
    if (o.spec.empty()) throw Error(ErrorCode::InvalidArgument, "--spec is required");
    spec_ = load_spec_file(o.spec);
    automaton_ = std::make_unique<Automaton>(build_automaton(spec_));
    if (spec_.options.max_states) nb_.max_states = eb_.max_states = *spec_.options.max_states;
    if (spec_.options.max_rounds) nb_.max_rounds = *spec_.options.max_rounds;
    if (auto env = env_max_states()) nb_.max_states = eb_.max_states = *env;
    if (o.max_states) nb_.max_states = eb_.max_states = *o.max_states;
    if (o.max_rounds) nb_.max_rounds = *o.max_rounds;
    engine_ = std::make_unique<ActionEngine>(*automaton_, eb_);
  }

  const SpecFile& spec() const { return spec_; }
  const Automaton& automaton() const { return *automaton_; }
  const Graph& graph() const { return automaton_->graph(); }
  ActionEngine& engine() { return *engine_; }

  const NucleusResult& nucleus_result() {
    if (!nucleus_) nucleus_ = compute_nucleus(*engine_, nb_);
    return *nucleus_;
  }

  Nucleus& nucleus() {
    nucleus_result();
    if (auto* f = std::get_if<NotContractingWithinBound>(&*nucleus_)) throw Inconclusive{f->bound, f->detail};
    return std::get<Nucleus>(*nucleus_);
  }

  ClassId element(const std::string& text) { return engine_->canonical(parse_element(*automaton_, text)); }

 private:
  SpecFile spec_;
  std::unique_ptr<Automaton> automaton_;
  EngineBounds eb_;
  NucleusBounds nb_;
  std::unique_ptr<ActionEngine> engine_;
  std::optional<NucleusResult> nucleus_;
};

json header(const std::string& command) { return json{{"schema", 1}, {"command", command}}; }

int emit(const Options& o, std::ostream& out, const json& doc, const std::string& text, int code) {
  if (o.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
  return code;
}

bool looks_bi(const std::string& s) {
  std::size_t count = 0;
  for (std::size_t p = s.find("^inf"); p != std::string::npos; p = s.find("^inf", p + 1)) ++count;
  return count >= 2 || s.find('@') != std::string::npos;
}

bool looks_infinite(const std::string& s) { return s.find("^inf") != std::string::npos; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntMatrix matrix_arg(const std::string& arg, const char* name) {
  if (arg.empty()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " is required");
  std::ifstream probe(arg);
  return parse_matrix(probe ? read_file(arg) : arg);
}

json group_json(const AbelianGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion) t.push_back(x.str());
  return json{{"rank", g.rank}, {"torsion", t}};
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Germ parse_germ(Session& s, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) parts.push_back(trim(item));
  if (parts.size() != 5) throw Error(ErrorCode::InvalidArgument, "germ must read 'x ; m ; g ; n ; y'");
  auto number = [](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "bad germ index '" + t + "'");
    }
    return static_cast<std::size_t>(std::stoull(t));
  };
  return make_germ(s.engine(), parse_right_path(s.graph(), parts[0]), number(parts[1]), s.element(parts[2]),
                   number(parts[3]), parse_right_path(s.graph(), parts[4]));
}

std::string state_line(ActionEngine& engine, const StateMachine& m, const MachineState& st) {
  const Graph& g = engine.graph();
  std::string out = "  " + st.name + " : " + g.vertex_name(st.dom) + " -> " + g.vertex_name(st.cod);
  for (std::size_t i = 0; i < st.edges.size(); ++i) {
    out += i ? ", " : "   ";
    out += g.edge_name(st.edges[i]) + " -> " + g.edge_name(st.images[i]) + " | " + m.states[st.next[i]].name;
  }
  return out + "\n";
}

// ---- subcommands -------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  Session s(o);
  const Graph& g = s.graph();
  const auto rep = validate_graph(g);
  json doc = header("validate");
  doc["valid"] = true;
  doc["vertices"] = g.vertex_count();
  doc["edges"] = g.edge_count();
  doc["generators"] = s.automaton().generator_count();
  doc["structure"] = {{"finite", rep.finite},
                      {"no_sources", rep.no_sources},
                      {"no_sinks", rep.no_sinks},
                      {"strongly_connected", rep.strongly_connected},
                      {"primitive", rep.primitive}};
  std::ostringstream t;
  t << "valid: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, "
    << s.automaton().generator_count() << " generators\n"
    << "no_sources " << rep.no_sources << "\nno_sinks " << rep.no_sinks << "\nstrongly_connected "
    << rep.strongly_connected << "\nprimitive " << rep.primitive << "\n";
  return emit(o, out, doc, t.str(), kExitOk);
}

int cmd_act(const Options& o, std::ostream& out) {
  Session s(o);
  const Element g = parse_element(s.automaton(), o.elem);
  std::string image;
  if (looks_infinite(o.path)) {
    image = format(s.graph(), s.engine().act_infinite(s.engine().canonical(g), parse_right_path(s.graph(), o.path)));
  } else {
    image = format_path(s.graph(), act(s.automaton(), g, parse_finite_path(s.graph(), o.path)));
  }
  json doc = header("act");
  doc["image"] = image;
  return emit(o, out, doc, image, kExitOk);
}

int cmd_restrict(const Options& o, std::ostream& out) {
  Session s(o);
  const ClassId c = s.engine().restrict(s.element(o.elem), parse_finite_path(s.graph(), o.path));
  json doc = header("restrict");
  doc["restriction"] = s.engine().name(c);
  return emit(o, out, doc, s.engine().name(c), kExitOk);
}

int cmd_eq(const Options& o, std::ostream& out) {
  Session s(o);
  const bool eq = s.element(o.lhs) == s.element(o.rhs);
  json doc = header("eq");
  doc["equal"] = eq;
  return emit(o, out, doc, eq ? "equal" : "not equal", eq ? kExitOk : kExitFails);
}

int not_contracting(const Options& o, std::ostream& out, const std::string& command,
                    const NotContractingWithinBound& f) {
  json doc = header(command);
  doc["contracting"] = nullptr;
  doc["bound"] = f.bound;
  doc["detail"] = f.detail;
  doc["rounds"] = f.rounds;
  return emit(o, out, doc, "inconclusive: not contracting within bound " + f.bound + " (" + f.detail + ")",
              kExitInconclusive);
}

int cmd_nucleus(const Options& o, std::ostream& out) {
  Session s(o);
  const auto& r = s.nucleus_result();
  if (auto* f = std::get_if<NotContractingWithinBound>(&r)) return not_contracting(o, out, "nucleus", *f);
  auto& n = s.nucleus();
  if (o.format == "dot") {
    out << nucleus_dot(s.engine(), n);
    return kExitOk;
  }
  if (o.json || o.format == "json") {
    json doc = header("nucleus");
    const json body = json::parse(nucleus_json(s.engine(), n));
    for (const auto& [k, v] : body.items())
      if (k != "schema") doc[k] = v;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  std::string t = "nucleus: " + std::to_string(n.states.size()) + " states\n";
  for (const auto& st : n.machine.states) t += state_line(s.engine(), n.machine, st);
  out << t;
  return kExitOk;
}

int cmd_rk(const Options& o, std::ostream& out) {
  Session s(o);
  auto& n = s.nucleus();
  const int r = compute_Rk(s.engine(), n, o.k);
  json doc = header("rk");
  doc["k"] = o.k;
  doc["R"] = r;
  return emit(o, out, doc, "R_" + std::to_string(o.k) + " = " + std::to_string(r), kExitOk);
}

int cmd_check(const Options& o, std::ostream& out, const std::string& property) {
  Session s(o);
  json doc = header("check");
  doc["property"] = property;
  if (property == "contracting") {
    const auto& r = s.nucleus_result();
    if (auto* f = std::get_if<NotContractingWithinBound>(&r)) return not_contracting(o, out, "check", *f);
    doc["holds"] = true;
    doc["nucleus_size"] = s.nucleus().states.size();
    return emit(o, out, doc, "contracting: nucleus has " + std::to_string(s.nucleus().states.size()) + " states",
                kExitOk);
  }
  if (property == "regular") {
    const auto rep = is_regular(s.engine(), s.nucleus());
    doc["holds"] = rep.regular;
    std::string t = rep.regular ? "regular" : "not regular";
    if (rep.witness) {
      const auto y = format(s.graph(), rep.witness->y);
      doc["witness"] = {{"g", s.engine().name(rep.witness->g)}, {"y", y}};
      t += ": " + s.engine().name(rep.witness->g) + " fixes " + y + " without strongly fixing any prefix";
    }
    return emit(o, out, doc, t, rep.regular ? kExitOk : kExitFails);
  }
  if (property == "hausdorff") {
    const auto rep = is_hausdorff(s.engine(), s.nucleus());
    doc["holds"] = rep.hausdorff;
    std::string t = rep.hausdorff ? "hausdorff" : "not hausdorff";
    if (rep.witness) {
      const auto y = format(s.graph(), rep.witness->y);
      const auto mu = format_path(s.graph(), *rep.escape);
      doc["witness"] = {{"g", s.engine().name(rep.witness->g)}, {"y", y}, {"strongly_fixed", mu}};
      t += ": " + s.engine().name(rep.witness->g) + " fixes " + y + " and strongly fixes " + mu;
    }
    return emit(o, out, doc, t, rep.hausdorff ? kExitOk : kExitFails);
  }
  if (property == "recurrent") {
    const auto rep = check_recurrent(s.engine(), o.depth);
    doc["holds"] = rep.recurrent ? json(true) : json(nullptr);
    doc["depth"] = rep.depth;
    doc["missing"] = rep.missing;
    std::string t = rep.recurrent ? "recurrent" : "inconclusive at depth " + std::to_string(rep.depth);
    for (const auto& m : rep.missing) t += "\n  missing " + m;
    return emit(o, out, doc, t, rep.recurrent ? kExitOk : kExitInconclusive);
  }
  if (property == "level-transitive") {
    bool all = true;
    json levels = json::array();
    std::string t;
    for (std::size_t n = 1; n <= o.level; ++n) {
      const bool lt = level_transitive(s.engine(), n);
      all = all && lt;
      levels.push_back(lt);
      t += "level " + std::to_string(n) + ": " + (lt ? "transitive" : "not transitive") + "\n";
    }
    doc["holds"] = all;
    doc["levels"] = levels;
    return emit(o, out, doc, t, all ? kExitOk : kExitFails);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown property '" + property + "'");
}

int cmd_ae(const Options& o, std::ostream& out) {
  Session s(o);
  auto& n = s.nucleus();
  json doc = header("ae");
  bool eq = false;
  std::string t;
  if (looks_bi(o.x) || looks_bi(o.y)) {
    eq = ae_equivalent_bi(s.engine(), n, parse_bi_path(s.graph(), o.x), parse_bi_path(s.graph(), o.y));
    t = eq ? "equivalent" : "not equivalent";
  } else {
    const auto r = ae_equivalent(s.engine(), n, parse_left_path(s.graph(), o.x), parse_left_path(s.graph(), o.y));
    eq = r.equivalent;
    t = eq ? "equivalent" : "not equivalent";
    if (r.witness) {
      json run = json::array();
      std::string names;
      for (ClassId c : r.witness->run) {
        run.push_back(s.engine().name(c));
        names += (names.empty() ? "" : ", ") + s.engine().name(c);
      }
      doc["witness"] = {{"from", r.witness->index}, {"run", run}};
      t += "\nrun from index " + std::to_string(r.witness->index) + ": " + names;
    }
  }
  doc["equivalent"] = eq;
  return emit(o, out, doc, t, eq ? kExitOk : kExitFails);
}

int cmd_class(const Options& o, std::ostream& out) {
  Session s(o);
  const auto cls = ae_class(s.engine(), s.nucleus(), parse_left_path(s.graph(), o.x));
  json doc = header("class");
  json items = json::array();
  std::string t;
  for (const auto& y : cls) {
    items.push_back(format(s.graph(), y));
    t += format(s.graph(), y) + "\n";
  }
  doc["class"] = items;
  return emit(o, out, doc, t, kExitOk);
}

int cmd_shift(const Options& o, std::ostream& out) {
  Session s(o);
  const auto y = format(s.graph(), shift_class(s.graph(), parse_left_path(s.graph(), o.x)));
  json doc = header("shift");
  doc["image"] = y;
  return emit(o, out, doc, y, kExitOk);
}

int cmd_germ_eq(const Options& o, std::ostream& out) {
  Session s(o);
  const bool eq = germ_equal(s.engine(), parse_germ(s, o.germ1), parse_germ(s, o.germ2));
  json doc = header("germ-eq");
  doc["equal"] = eq;
  return emit(o, out, doc, eq ? "equal" : "not equal", eq ? kExitOk : kExitFails);
}

int cmd_stable(const Options& o, std::ostream& out) {
  Session s(o);
  const bool eq =
      stable_equivalent(s.engine(), s.nucleus(), parse_bi_path(s.graph(), o.x), parse_bi_path(s.graph(), o.y));
  json doc = header("stable");
  doc["equivalent"] = eq;
  return emit(o, out, doc, eq ? "stably equivalent" : "not stably equivalent", eq ? kExitOk : kExitFails);
}

int cmd_unstable(const Options& o, std::ostream& out) {
  Session s(o);
  const auto w =
      unstable_equivalent(s.engine(), s.nucleus(), parse_bi_path(s.graph(), o.x), parse_bi_path(s.graph(), o.y));
  json doc = header("unstable");
  doc["equivalent"] = w.has_value();
  std::string t = w ? "unstably equivalent" : "not unstably equivalent";
  if (w) {
    doc["witness"] = {{"M", w->M}, {"g", s.engine().name(w->g)}};
    t += ": " + s.engine().name(w->g) + " at M = " + std::to_string(w->M);
  }
  return emit(o, out, doc, t, w ? kExitOk : kExitFails);
}

int cmd_schreier(const Options& o, std::ostream& out) {
  Session s(o);
  const auto& r = s.nucleus_result();
  const Nucleus* n = std::get_if<Nucleus>(&r);
  const auto labels = default_generating_set(s.engine(), n);
  const auto gamma = build_schreier(s.engine(), labels, o.level);
  if (o.json || o.format == "json") {
    out << schreier_json(s.engine(), gamma) << "\n";
  } else {
    out << schreier_dot(s.engine(), gamma);
  }
  return kExitOk;
}

int cmd_katsura(const Options& o, std::ostream& out) {
  const auto A = matrix_arg(o.A, "--A");
  const auto B = matrix_arg(o.B, "--B");
  const auto text = format_spec(katsura_spec(A, B));
  katsura_automaton(A, B);  // validates
  const auto k = katsura_ktheory(A, B);
  if (!o.out_file.empty()) {
    std::ofstream f(o.out_file);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out_file);
    f << text;
  }
  json doc = header("katsura");
  doc["spec"] = text;
  doc["K0"] = group_json(k.K0);
  doc["K1"] = group_json(k.K1);
  std::string t = o.out_file.empty() ? text + "\n" : "";
  t += "# Katsura K-theory\n# K0 = " + format_group(k.K0) + "\n# K1 = " + format_group(k.K1) + "\n";
  return emit(o, out, doc, t, kExitOk);
}

int cmd_snf(const Options& o, std::ostream& out) {
  const auto M = matrix_arg(o.matrix, "--matrix");
  const auto r = smith_normal_form(M);
  json doc = header("snf");
  doc["D"] = format_matrix(r.D);
  doc["U"] = format_matrix(r.U);
  doc["V"] = format_matrix(r.V);
  doc["cokernel"] = group_json(cokernel(M));
  doc["kernel"] = group_json(kernel(M));
  std::string t = "D = " + format_matrix(r.D) + "\nU = " + format_matrix(r.U) + "\nV = " + format_matrix(r.V) +
                  "\ncoker = " + format_group(cokernel(M)) + "\nker = " + format_group(kernel(M)) + "\n";
  return emit(o, out, doc, t, kExitOk);
}

int cmd_ktheory(const Options& o, std::ostream& out) {
  const auto k = katsura_ktheory(matrix_arg(o.A, "--A"), matrix_arg(o.B, "--B"));
  json doc = header("ktheory");
  doc["K0"] = group_json(k.K0);
  doc["K1"] = group_json(k.K1);
  return emit(o, out, doc, "K0 = " + format_group(k.K0) + "\nK1 = " + format_group(k.K1) + "\n", kExitOk);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-similar groupoid actions on finite graphs", "selfsim"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool spec = true) {
    if (spec) sub->add_option("--spec", o.spec, "automaton spec file")->required();
    sub->add_flag("--json", o.json, "JSON report");
    sub->add_option("--max-states", o.max_states, "class and candidate bound");
    sub->add_option("--max-rounds", o.max_rounds, "nucleus iteration bound");
    return sub;
  };

  std::function<int()> handler;
  auto bind = [&](CLI::App* sub, std::function<int()> h) {
    sub->callback([&handler, h] { handler = h; });
  };

  auto* validate = common(app.add_subcommand("validate", "check a spec file"));
  bind(validate, [&] { return cmd_validate(o, out); });

  auto* actc = common(app.add_subcommand("act", "g . path"));
  actc->add_option("--elem", o.elem)->required();
  actc->add_option("--path", o.path)->required();
  bind(actc, [&] { return cmd_act(o, out); });

  auto* restr = common(app.add_subcommand("restrict", "g|_path"));
  restr->add_option("--elem", o.elem)->required();
  restr->add_option("--path", o.path)->required();
  bind(restr, [&] { return cmd_restrict(o, out); });

  auto* eq = common(app.add_subcommand("eq", "equality of two elements"));
  eq->add_option("--lhs", o.lhs)->required();
  eq->add_option("--rhs", o.rhs)->required();
  bind(eq, [&] { return cmd_eq(o, out); });

  auto* nuc = common(app.add_subcommand("nucleus", "compute the nucleus"));
  nuc->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "dot"}));
  bind(nuc, [&] { return cmd_nucleus(o, out); });

  auto* rk = common(app.add_subcommand("rk", "R_k for the nucleus"));
  rk->add_option("--k", o.k)->check(CLI::PositiveNumber);
  bind(rk, [&] { return cmd_rk(o, out); });

  auto* check = common(app.add_subcommand("check", "decide a property"));
  check->add_option("property", o.property)
      ->required()
      ->check(CLI::IsMember({"regular", "hausdorff", "recurrent", "level-transitive", "contracting"}));
  check->add_option("--depth", o.depth, "recurrence search depth");
  check->add_option("--level", o.level, "levels 1..n for level-transitivity");
  bind(check, [&] { return cmd_check(o, out, o.property); });
  for (const char* p : {"regular", "hausdorff", "recurrent", "level-transitive", "contracting"}) {
    auto* sub = common(app.add_subcommand(p, std::string("same as check ") + p));
    sub->add_option("--depth", o.depth);
    sub->add_option("--level", o.level);
    const std::string prop = p;
    bind(sub, [&, prop] { return cmd_check(o, out, prop); });
  }

  auto* ae = common(app.add_subcommand("ae", "asymptotic equivalence"));
  ae->add_option("--x", o.x)->required();
  ae->add_option("--y", o.y)->required();
  bind(ae, [&] { return cmd_ae(o, out); });

  auto* cls = common(app.add_subcommand("class", "asymptotic equivalence class"));
  cls->add_option("--x", o.x)->required();
  bind(cls, [&] { return cmd_class(o, out); });

  auto* sh = common(app.add_subcommand("shift", "delete the rightmost edge"));
  sh->add_option("--x", o.x)->required();
  bind(sh, [&] { return cmd_shift(o, out); });

  auto* germ = common(app.add_subcommand("germ-eq", "germ equality, germs as 'x ; m ; g ; n ; y'"));
  germ->add_option("--germ1", o.germ1)->required();
  germ->add_option("--germ2", o.germ2)->required();
  bind(germ, [&] { return cmd_germ_eq(o, out); });

  auto* st = common(app.add_subcommand("stable", "stable equivalence of bi-infinite paths"));
  st->add_option("--x", o.x)->required();
  st->add_option("--y", o.y)->required();
  bind(st, [&] { return cmd_stable(o, out); });

  auto* un = common(app.add_subcommand("unstable", "unstable equivalence of bi-infinite paths"));
  un->add_option("--x", o.x)->required();
  un->add_option("--y", o.y)->required();
  bind(un, [&] { return cmd_unstable(o, out); });

  auto* sch = common(app.add_subcommand("schreier", "level-n Schreier graph"));
  sch->add_option("--level", o.level)->required();
  o.format = "";
  sch->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}));
  bind(sch, [&] { return cmd_schreier(o, out); });

  auto* kat = common(app.add_subcommand("katsura", "Katsura automaton and K-theory"), false);
  kat->add_option("--A", o.A)->required();
  kat->add_option("--B", o.B)->required();
  kat->add_option("--out", o.out_file, "write the spec here");
  bind(kat, [&] { return cmd_katsura(o, out); });

  auto* snf = common(app.add_subcommand("snf", "Smith normal form"), false);
  snf->add_option("--matrix", o.matrix)->required();
  bind(snf, [&] { return cmd_snf(o, out); });

  auto* kt = common(app.add_subcommand("ktheory", "Katsura K-groups"), false);
  kt->add_option("--A", o.A)->required();
  kt->add_option("--B", o.B)->required();
  bind(kt, [&] { return cmd_ktheory(o, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    return handler ? handler() : kExitInputError;
  } catch (const Inconclusive& i) {
    err << "inconclusive: bound " << i.bound << " hit (" << i.detail << ")\n";
    return kExitInconclusive;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == ErrorCode::ClosureLimitExceeded || e.code() == ErrorCode::Diverged) return kExitInconclusive;
    return kExitInputError;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace selfsim
