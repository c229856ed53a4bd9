#include "rmdf/spec_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rmdf {

std::string ParseError::str() const {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}

namespace {

struct Token {
  std::string text;
  int column = 0;
  bool quoted = false;
};

struct LineFail {
  int column;
  std::string message;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    if (line[i] == '#') break;
    int col = static_cast<int>(i) + 1;
    if (line[i] == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') { closed = true; ++i; break; }
        s.push_back(line[i++]);
      }
      if (!closed) throw LineFail{col, "unterminated quoted name"};
      out.push_back({s, col, true});
    } else {
      std::string s;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '#')
        s.push_back(line[i++]);
      out.push_back({s, col, false});
    }
  }
  return out;
}

bool looks_numeric(const std::string& s) {
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

Rational parse_rational_tok(const Token& t, const std::string& what) {
  try {
    return Rational::from_string(t.text);
  } catch (const UsageError&) {
    throw LineFail{t.column, "malformed rational " + what + " '" + t.text + "'"};
  }
}

Rational parse_suffixed(const Token& t, const std::string& suffix, const std::string& what) {
  std::string s = t.text;
  if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0)
    s.resize(s.size() - suffix.size());
  try {
    return Rational::from_string(s);
  } catch (const UsageError&) {
    throw LineFail{t.column, "malformed " + what + " '" + t.text + "'"};
  }
}

Rate parse_rate_tok(const Token& t) {
  if (looks_numeric(t.text)) return Rate::constant(parse_rational_tok(t, "rate"));
  return Rate::param(t.text);
}

struct Parser {
  Graph g;
  Rational default_bcet{3, 25};
  Rational default_wcet{1, 5};
  std::vector<std::pair<int, int>> channel_lines;  // channel index -> line no
  bool saw_header = false;
  std::string section;

  void actor_line(const std::vector<Token>& toks) {
    if (toks.empty()) return;
    Actor a;
    a.id = toks[0].text;
    if (toks.size() < 2) throw LineFail{toks[0].column, "actor '" + a.id + "' missing kind"};
    auto kind = kind_from_name(toks[1].text);
    if (!kind) throw LineFail{toks[1].column, "unknown actor kind '" + toks[1].text + "'"};
    a.kind = *kind;
    a.bcet_ms = a.routing() ? Rational(0) : default_bcet;
    a.wcet_ms = a.routing() ? Rational(0) : default_wcet;
    size_t i = 2;
    while (i < toks.size()) {
      const std::string& key = toks[i].text;
      if (i + 1 >= toks.size())
        throw LineFail{toks[i].column, "'" + key + "' needs a value"};
      const Token& val = toks[i + 1];
      if (key == "freq") a.frequency_hz = parse_suffixed(val, "Hz", "frequency");
      else if (key == "phase") a.phase_ms = parse_suffixed(val, "ms", "phase");
      else if (key == "bcet") a.bcet_ms = parse_rational_tok(val, "bcet");
      else if (key == "wcet") a.wcet_ms = parse_rational_tok(val, "wcet");
      else throw LineFail{toks[i].column, "unknown actor attribute '" + key + "'"};
      i += 2;
    }
    if (a.timed() && a.frequency_hz.is_zero())
      throw LineFail{toks[1].column, "timed actor '" + a.id + "' missing freq"};
    if (g.actor_index(a.id) >= 0)
      throw LineFail{toks[0].column, "duplicate actor id '" + a.id + "'"};
    g.actors.push_back(std::move(a));
  }

  void channel_line(const std::vector<Token>& toks, int line_no) {
    if (toks.empty()) return;
    if (toks.size() < 4 || toks[2].text != "->")
      throw LineFail{toks[0].column,
                     "expected 'id producer -> consumer prod <rate> cons <rate> ...'"};
    Channel c;
    c.id = toks[0].text;
    c.producer = toks[1].text;
    c.consumer = toks[3].text;
    bool have_prod = false, have_cons = false;
    size_t i = 4;
    while (i < toks.size()) {
      const std::string& key = toks[i].text;
      if (key == "control") {
        c.klass = ChannelClass::Control;
        ++i;
        continue;
      }
      if (i + 1 >= toks.size())
        throw LineFail{toks[i].column, "'" + key + "' needs a value"};
      const Token& val = toks[i + 1];
      if (key == "prod") { c.prod_rate = parse_rate_tok(val); have_prod = true; }
      else if (key == "cons") { c.cons_rate = parse_rate_tok(val); have_cons = true; }
      else if (key == "init") c.initial_tokens = parse_rational_tok(val, "init");
      else throw LineFail{toks[i].column, "unknown channel attribute '" + key + "'"};
      i += 2;
    }
    if (!have_prod || !have_cons)
      throw LineFail{toks[0].column, "channel '" + c.id + "' needs prod and cons rates"};
    if (g.channel_index(c.id) >= 0)
      throw LineFail{toks[0].column, "duplicate channel id '" + c.id + "'"};
    channel_lines.emplace_back(static_cast<int>(g.channels.size()), line_no);
    g.channels.push_back(std::move(c));
  }

  void mode_line(const std::vector<Token>& toks) {
    if (toks.empty()) return;
    std::string name = toks[0].text;
    if (name.empty() || name.back() != ':')
      throw LineFail{toks[0].column, "expected 'modeName: param=value ...'"};
    name.pop_back();
    if (g.mode_table.mode_index(name) >= 0)
      throw LineFail{toks[0].column, "duplicate mode '" + name + "'"};
    g.mode_table.modes.push_back(name);
    for (size_t i = 1; i < toks.size(); ++i) {
      auto eq = toks[i].text.find('=');
      if (eq == std::string::npos)
        throw LineFail{toks[i].column, "expected param=value, got '" + toks[i].text + "'"};
      std::string param = toks[i].text.substr(0, eq);
      std::string val = toks[i].text.substr(eq + 1);
      if (val != "0" && val != "1")
        throw LineFail{toks[i].column, "mode values are 0 or 1, got '" + val + "'"};
      g.mode_table.assignment[{name, param}] = val == "1" ? 1 : 0;
    }
  }

  void defaults_line(const std::vector<Token>& toks) {
    if (toks.empty()) return;
    if (toks.size() != 2)
      throw LineFail{toks[0].column, "expected 'bcet <rat>' or 'wcet <rat>'"};
    if (toks[0].text == "bcet") default_bcet = parse_rational_tok(toks[1], "bcet");
    else if (toks[0].text == "wcet") default_wcet = parse_rational_tok(toks[1], "wcet");
    else throw LineFail{toks[0].column, "unknown default '" + toks[0].text + "'"};
  }
};

}  // namespace

ParseResult parse_spec(const std::string& text) {
  Parser p;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      if (!p.saw_header) {
        if (toks.size() != 2 || toks[0].text != "rmdf")
          return {std::nullopt, ParseError{line_no, toks[0].column,
                                           "expected header 'rmdf 1'"}};
        if (toks[1].text != "1")
          return {std::nullopt, ParseError{line_no, toks[1].column,
                                           "unsupported format version '" + toks[1].text +
                                               "' (only 1)"}};
        p.saw_header = true;
        continue;
      }
      const std::string& first = toks[0].text;
      if (first.size() >= 2 && first.front() == '[' && first.back() == ']' && !toks[0].quoted) {
        p.section = first.substr(1, first.size() - 2);
        if (p.section != "actors" && p.section != "channels" && p.section != "modes" &&
            p.section != "defaults")
          return {std::nullopt, ParseError{line_no, toks[0].column,
                                           "unknown section '[" + p.section + "]'"}};
        continue;
      }
      if (p.section == "actors") p.actor_line(toks);
      else if (p.section == "channels") p.channel_line(toks, line_no);
      else if (p.section == "modes") p.mode_line(toks);
      else if (p.section == "defaults") p.defaults_line(toks);
      else
        return {std::nullopt,
                ParseError{line_no, toks[0].column, "statement outside any section"}};
    } catch (const LineFail& f) {
      return {std::nullopt, ParseError{line_no, f.column, f.message}};
    }
  }
  if (!p.saw_header)
    return {std::nullopt, ParseError{1, 1, "empty document; expected header 'rmdf 1'"}};
  // Cross-reference channels after all declarations.
  for (const auto& [ci, ln] : p.channel_lines) {
    const Channel& c = p.g.channels[ci];
    if (p.g.actor_index(c.producer) < 0)
      return {std::nullopt,
              ParseError{ln, 1,
                         "channel '" + c.id + "' references undeclared actor '" + c.producer +
                             "'"}};
    if (p.g.actor_index(c.consumer) < 0)
      return {std::nullopt,
              ParseError{ln, 1,
                         "channel '" + c.id + "' references undeclared actor '" + c.consumer +
                             "'"}};
    for (const Rate* r : {&c.prod_rate, &c.cons_rate}) {
      if (!r->parametric()) continue;
      bool bound = false;
      for (const auto& m : p.g.mode_table.modes)
        if (p.g.mode_table.value(m, r->parameter)) bound = true;
      if (!bound)
        return {std::nullopt,
                ParseError{ln, 1,
                           "channel '" + c.id + "' uses unbound mode parameter '" +
                               r->parameter + "'"}};
    }
  }
  return {std::move(p.g), std::nullopt};
}

ParseResult parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {std::nullopt, ParseError{0, 0, "cannot open '" + path + "'"}};
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace {

std::string quoted_if_needed(const std::string& id) {
  bool plain = !id.empty();
  for (char ch : id)
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '"' || ch == '#') plain = false;
  return plain ? id : "\"" + id + "\"";
}

std::string rate_str(const Rate& r) {
  return r.parametric() ? r.parameter : r.value.str();
}

}  // namespace

std::string serialize_spec(const Graph& g) {
  std::ostringstream os;
  os << "rmdf 1\n";
  os << "[actors]\n";
  for (const auto& a : g.actors) {
    os << quoted_if_needed(a.id) << " " << kind_name(a.kind);
    if (a.timed()) {
      os << " freq " << a.frequency_hz << "Hz";
      if (!a.phase_ms.is_zero()) os << " phase " << a.phase_ms << "ms";
    }
    if (!a.routing() || !a.bcet_ms.is_zero() || !a.wcet_ms.is_zero())
      os << " bcet " << a.bcet_ms << " wcet " << a.wcet_ms;
    os << "\n";
  }
  os << "[channels]\n";
  for (const auto& c : g.channels) {
    os << quoted_if_needed(c.id) << " " << quoted_if_needed(c.producer) << " -> "
       << quoted_if_needed(c.consumer) << " prod " << rate_str(c.prod_rate) << " cons "
       << rate_str(c.cons_rate) << " init " << c.initial_tokens;
    if (c.control()) os << " control";
    os << "\n";
  }
  if (!g.mode_table.empty()) {
    os << "[modes]\n";
    for (const auto& m : g.mode_table.modes) {
      os << m << ":";
      for (const auto& [key, v] : g.mode_table.assignment)
        if (key.first == m) os << " " << key.second << "=" << v;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace rmdf
