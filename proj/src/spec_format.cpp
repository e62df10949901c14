#include "selfsim/spec_format.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

bool is_special(char c) { return c == ':' || c == '|' || c == '#' || std::isspace(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(std::string_view line, std::size_t line_no, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == ':' || c == '|') {
      out.push_back({std::string(1, c), offset + i + 1});
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", offset + i + 1});
      i += 2;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !is_special(line[j]) && !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>')) ++j;
    if (j == i) throw SyntaxError(line_no, offset + i + 1, "unexpected character");
    out.push_back({std::string(line.substr(i, j - i)), offset + i + 1});
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::vector<Token>& toks, std::size_t at, const std::string& what,
                       std::size_t eol) {
  throw SyntaxError(line, at < toks.size() ? toks[at].column : eol, what);
}

// First token that breaks `shape`; "" stands for any name. Past the end means missing or extra tokens.
std::size_t first_mismatch(const std::vector<Token>& toks, const std::vector<std::string>& shape) {
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i >= toks.size()) return i;
    const bool punct = toks[i].text == ":" || toks[i].text == "->" || toks[i].text == "|";
    if (shape[i].empty() ? punct : toks[i].text != shape[i]) return i;
  }
  return shape.size();
}

std::size_t parse_count(std::size_t line, const Token& t) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) {
    throw SyntaxError(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
  }
  return v;
}

enum class Section { None, Graph, Generator, Options };

}  // namespace

SpecFile parse_spec(std::string_view text) {
  SpecFile spec;
  Section section = Section::None;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    const std::size_t eol = line.size() + 1;

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    if (line[first] == '[') {
      std::size_t close = line.find(']', first);
      if (close == std::string_view::npos) throw SyntaxError(line_no, eol, "missing ']'");
      auto rest = tokenize(line.substr(close + 1), line_no, close + 1);
      if (!rest.empty()) throw SyntaxError(line_no, rest.front().column, "text after section header");
      auto toks = tokenize(line.substr(first + 1, close - first - 1), line_no, first + 1);
      if (toks.size() == 1 && toks[0].text == "graph") {
        section = Section::Graph;
      } else if (toks.size() == 1 && toks[0].text == "options") {
        section = Section::Options;
      } else if (!toks.empty() && toks[0].text == "generator") {
        if (toks.size() != 6 || toks[2].text != ":" || toks[4].text != "->") {
          fail(line_no, toks, std::min<std::size_t>(toks.size(), 6), "expected [generator NAME : DOM -> COD]",
               close + 1);
        }
        spec.generators.push_back(SpecGenerator{toks[1].text, toks[3].text, toks[5].text, {}});
        section = Section::Generator;
      } else {
        throw SyntaxError(line_no, first + 2, "unknown section");
      }
      continue;
    }

    auto toks = tokenize(line, line_no);
    switch (section) {
      case Section::None:
        throw SyntaxError(line_no, toks.front().column, "statement outside any section");
      case Section::Graph:
        if (toks[0].text == "vertex") {
          if (toks.size() != 2) fail(line_no, toks, 2, "expected: vertex NAME", eol);
          spec.vertices.push_back(toks[1].text);
        } else if (toks[0].text == "edge") {
          if (toks.size() != 6 || toks[2].text != ":" || toks[4].text != "->") {
            fail(line_no, toks, first_mismatch(toks, {"", "", ":", "", "->", ""}), "expected: edge NAME : SRC -> DST",
                 eol);
          }
          spec.edges.push_back(EdgeSpec{toks[1].text, toks[3].text, toks[5].text});
        } else {
          throw SyntaxError(line_no, toks[0].column, "expected 'vertex' or 'edge'");
        }
        break;
      case Section::Generator: {
        if (toks.size() < 5 || toks[1].text != "->" || toks[3].text != "|") {
          fail(line_no, toks, first_mismatch(toks, {"", "->", "", "|", ""}), "expected: EDGE -> IMAGE | WORD", eol);
        }
        SpecRule rule{toks[0].text, toks[2].text, {}};
        for (std::size_t i = 4; i < toks.size(); ++i) {
          if (toks[i].text == ":" || toks[i].text == "|" || toks[i].text == "->") {
            throw SyntaxError(line_no, toks[i].column, "unexpected '" + toks[i].text + "' in restriction");
          }
          rule.restriction.push_back(toks[i].text);
        }
        spec.generators.back().rules.push_back(std::move(rule));
        break;
      }
      case Section::Options:
        if (toks[0].text == "max_states" || toks[0].text == "max_rounds") {
          if (toks.size() != 2) fail(line_no, toks, 2, "expected one integer", eol);
          auto v = parse_count(line_no, toks[1]);
          (toks[0].text == "max_states" ? spec.options.max_states : spec.options.max_rounds) = v;
        } else if (toks[0].text == "generating_set") {
          for (std::size_t i = 1; i < toks.size(); ++i) spec.options.generating_set.push_back(toks[i].text);
        } else {
          throw SyntaxError(line_no, toks[0].column, "unknown option '" + toks[0].text + "'");
        }
        break;
    }
  }
  return spec;
}

std::string format_spec(const SpecFile& spec) {
  std::ostringstream os;
  os << "[graph]\n";
  for (const auto& v : spec.vertices) os << "vertex " << v << "\n";
  for (const auto& e : spec.edges) os << "edge " << e.name << " : " << e.src << " -> " << e.dst << "\n";
  for (const auto& g : spec.generators) {
    os << "\n[generator " << g.name << " : " << g.dom << " -> " << g.cod << "]\n";
    for (const auto& r : g.rules) {
      os << r.edge << " -> " << r.image << " |";
      for (const auto& s : r.restriction) os << ' ' << s;
      os << "\n";
    }
  }
  const auto& o = spec.options;
  if (o.max_states || o.max_rounds || !o.generating_set.empty()) {
    os << "\n[options]\n";
    if (o.max_states) os << "max_states " << *o.max_states << "\n";
    if (o.max_rounds) os << "max_rounds " << *o.max_rounds << "\n";
    if (!o.generating_set.empty()) {
      os << "generating_set";
      for (const auto& s : o.generating_set) os << ' ' << s;
      os << "\n";
    }
  }
  return os.str();
}

namespace {

std::optional<Symbol> find_symbol(const std::vector<GeneratorDef>& gens, std::string_view tok) {
  bool inv = false;
  if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
    inv = true;
    tok.remove_suffix(3);
  }
  for (std::uint32_t i = 0; i < gens.size(); ++i) {
    if (gens[i].name == tok) return Symbol{i, inv};
  }
  return std::nullopt;
}

}  // namespace

Automaton build_automaton(const SpecFile& spec) {
  Graph graph = Graph::build(spec.vertices, spec.edges);
  std::vector<GeneratorDef> gens;
  for (const auto& sg : spec.generators) {
    auto d = graph.find_vertex(sg.dom);
    auto c = graph.find_vertex(sg.cod);
    if (!d || !c) {
      throw Error(ErrorCode::UnknownSymbol,
                  "generator '" + sg.name + "' uses unknown vertex '" + (d ? sg.cod : sg.dom) + "'");
    }
    gens.push_back(GeneratorDef{sg.name, *d, *c, {}});
  }
  for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
    for (const auto& r : spec.generators[gi].rules) {
      auto e = graph.find_edge(r.edge);
      auto f = graph.find_edge(r.image);
      if (!e || !f) {
        throw Error(ErrorCode::UnknownSymbol, "unknown edge '" + (e ? r.image : r.edge) + "' in generator '" +
                                                  spec.generators[gi].name + "'");
      }
      Rule rule;
      rule.image = *f;
      if (r.restriction.size() == 1 && graph.find_vertex(r.restriction[0])) {
        rule.unit = *graph.find_vertex(r.restriction[0]);
      } else {
        for (const auto& tok : r.restriction) {
          auto s = find_symbol(gens, tok);
          if (!s) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + tok + "'");
          rule.restriction.push_back(*s);
        }
      }
      gens[gi].rules.emplace_back(*e, std::move(rule));
    }
  }
  return Automaton::build(std::move(graph), std::move(gens));
}

SpecFile spec_of(const Automaton& a) {
  const Graph& g = a.graph();
  SpecFile spec;
  for (VertexId v = 0; v < g.vertex_count(); ++v) spec.vertices.push_back(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    spec.edges.push_back({g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))});
  }
  for (std::uint32_t i = 0; i < a.generator_count(); ++i) {
    const auto& def = a.generator(i);
    SpecGenerator sg{def.name, g.vertex_name(def.dom), g.vertex_name(def.cod), {}};
    for (const auto& [e, rule] : def.rules) {
      SpecRule r{g.edge_name(e), g.edge_name(rule.image), {}};
      if (rule.restriction.empty()) {
        r.restriction.push_back(g.vertex_name(g.source(e)));
      } else {
        for (const auto& s : rule.restriction) r.restriction.push_back(a.symbol_name(s));
      }
      sg.rules.push_back(std::move(r));
    }
    spec.generators.push_back(std::move(sg));
  }
  return spec;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

namespace {

struct Segment {
  bool cycle = false;
  std::vector<EdgeId> edges;
  std::size_t column = 1;
  std::optional<VertexId> vertex;  // a lone vertex name
};

struct PathLiteral {
  std::vector<Segment> segments;
  std::optional<std::int64_t> anchor;
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<EdgeId> read_edges(const Graph& g, std::string_view text, std::size_t column,
                               std::optional<VertexId>* lone_vertex) {
  std::vector<EdgeId> out;
  std::string body = trim(text);
  if (lone_vertex && !body.empty() && body.find('.') == std::string::npos && !g.find_edge(body)) {
    if (auto v = g.find_vertex(body)) {
      *lone_vertex = v;
      return out;
    }
  }
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t dot = body.find('.', pos);
    if (dot == std::string::npos) dot = body.size();
    std::string piece = trim(std::string_view(body).substr(pos, dot - pos));
    if (piece.empty()) throw SyntaxError(1, column + pos, "empty edge name");
    if (auto e = g.find_edge(piece)) {
      out.push_back(*e);
    } else {
      for (char c : piece) {
        auto e1 = g.find_edge(std::string(1, c));
        if (!e1) throw Error(ErrorCode::UnknownSymbol, "unknown edge '" + piece + "'");
        out.push_back(*e1);
      }
    }
    pos = dot + 1;
  }
  return out;
}

PathLiteral read_literal(const Graph& g, std::string_view text) {
  PathLiteral lit;
  std::string_view body = text;
  if (auto at = text.find('@'); at != std::string_view::npos) {
    std::string num = trim(text.substr(at + 1));
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (num.empty() || ec != std::errc() || p != num.data() + num.size()) {
      throw SyntaxError(1, at + 2, "expected an integer anchor after '@'");
    }
    lit.anchor = v;
    body = text.substr(0, at);
  }
  std::size_t pos = 0;
  auto flush_finite = [&](std::size_t from, std::size_t to) {
    std::string piece(body.substr(from, to - from));
    // Strip the '.' separators that glue segments together.
    std::string t = trim(piece);
    if (!t.empty() && t.front() == '.') t = trim(t.substr(1));
    if (!t.empty() && t.back() == '.') t = trim(t.substr(0, t.size() - 1));
    if (t.empty()) return;
    Segment s;
    s.column = from + 1;
    s.edges = read_edges(g, t, from + 1, &s.vertex);
    lit.segments.push_back(std::move(s));
  };
  std::size_t start = 0;
  while (pos < body.size()) {
    if (body[pos] == '(') {
      flush_finite(start, pos);
      std::size_t close = body.find(')', pos);
      if (close == std::string_view::npos) throw SyntaxError(1, pos + 1, "missing ')'");
      std::size_t after = close + 1;
      while (after < body.size() && body[after] == ' ') ++after;
      if (body.substr(after, 4) != "^inf") throw SyntaxError(1, after + 1, "expected '^inf' after ')'");
      Segment s;
      s.cycle = true;
      s.column = pos + 1;
      s.edges = read_edges(g, body.substr(pos + 1, close - pos - 1), pos + 2, nullptr);
      if (s.edges.empty()) throw SyntaxError(1, pos + 1, "empty cycle");
      lit.segments.push_back(std::move(s));
      pos = after + 4;
      start = pos;
    } else {
      ++pos;
    }
  }
  flush_finite(start, body.size());
  return lit;
}

std::string shape_of(const PathLiteral& lit) {
  std::string s;
  for (const auto& seg : lit.segments) s += seg.cycle ? 'C' : 'F';
  return s;
}

}  // namespace

Path parse_finite_path(const Graph& g, std::string_view text) {
  auto lit = read_literal(g, text);
  if (lit.anchor || shape_of(lit) != "F") throw SyntaxError(1, 1, "expected a finite path");
  const auto& seg = lit.segments.front();
  if (seg.vertex) return empty_path(*seg.vertex);
  if (!is_path(g, seg.edges)) {
    throw Error(ErrorCode::JunctionMismatch, "'" + std::string(text) + "' is not a path");
  }
  return make_path(g, seg.edges);
}

LeftInfinitePath parse_left_path(const Graph& g, std::string_view text) {
  auto lit = read_literal(g, text);
  auto shape = shape_of(lit);
  if (lit.anchor || (shape != "C" && shape != "CF") || (shape == "CF" && lit.segments[1].vertex)) {
    throw SyntaxError(1, 1, "expected (cycle)^inf [. tail]");
  }
  return make_left(g, lit.segments[0].edges, shape == "CF" ? lit.segments[1].edges : std::vector<EdgeId>{});
}

RightInfinitePath parse_right_path(const Graph& g, std::string_view text) {
  auto lit = read_literal(g, text);
  auto shape = shape_of(lit);
  if (lit.anchor || (shape != "C" && shape != "FC") || (shape == "FC" && lit.segments[0].vertex)) {
    throw SyntaxError(1, 1, "expected [head .] (cycle)^inf");
  }
  if (shape == "C") return make_right(g, {}, lit.segments[0].edges);
  return make_right(g, lit.segments[0].edges, lit.segments[1].edges);
}

BiInfinitePath parse_bi_path(const Graph& g, std::string_view text) {
  auto lit = read_literal(g, text);
  auto shape = shape_of(lit);
  if ((shape != "CC" && shape != "CFC") || (shape == "CFC" && lit.segments[1].vertex)) {
    throw SyntaxError(1, 1, "expected (rho)^inf [. mid] . (pi)^inf @ n0");
  }
  const auto& right = lit.segments.back().edges;
  return make_bi(g, lit.segments[0].edges, shape == "CFC" ? lit.segments[1].edges : std::vector<EdgeId>{}, right,
                 lit.anchor.value_or(0));
}

Element parse_element(const Automaton& a, std::string_view text) {
  const Graph& g = a.graph();
  std::string body = trim(text);
  if (body.empty()) throw SyntaxError(1, 1, "empty element");
  if (auto v = g.find_vertex(body)) return unit_element(*v);
  std::vector<GeneratorDef> gens;
  for (std::uint32_t i = 0; i < a.generator_count(); ++i) gens.push_back(a.generator(i));
  Word w;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    if (auto s = find_symbol(gens, tok)) {
      w.push_back(*s);
      continue;
    }
    // Juxtaposed one-letter generators, e.g. "ba".
    for (std::size_t i = 0; i < tok.size(); ++i) {
      std::string name(1, tok[i]);
      if (tok.compare(i + 1, 3, "^-1") == 0) {
        name += "^-1";
        i += 3;
      }
      auto s = find_symbol(gens, name);
      if (!s) throw Error(ErrorCode::UnknownSymbol, "unknown symbol in '" + tok + "'");
      w.push_back(*s);
    }
  }
  return make_element(a, std::move(w));
}

}  // namespace selfsim
