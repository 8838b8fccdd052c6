#include "toeptrace/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace toeptrace {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ConfigError(std::string("symbol record: expected '") + c + "' near \"" +
                                   s.substr(std::min(i, s.size()), 24) + "\"");
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

std::string parse_ident(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() &&
         (std::isalnum(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '_'))
    ++c.i;
  if (c.i == start) throw ConfigError("symbol record: expected an identifier");
  return c.s.substr(start, c.i - start);
}

std::string parse_string(Cursor& c) {
  c.skip_ws();
  char quote = c.s[c.i];
  ++c.i;
  size_t start = c.i;
  while (c.i < c.s.size() && c.s[c.i] != quote) ++c.i;
  if (c.i >= c.s.size()) throw ConfigError("symbol record: unterminated string");
  std::string out = c.s.substr(start, c.i - start);
  ++c.i;
  return out;
}

double parse_number(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) ||
                              std::string("+-.eE").find(c.s[c.i]) != std::string::npos))
    ++c.i;
  double v = 0;
  auto res = std::from_chars(c.s.data() + start, c.s.data() + c.i, v);
  if (res.ec != std::errc{} || res.ptr != c.s.data() + c.i)
    throw ConfigError("symbol record: bad number near \"" + c.s.substr(start, 16) + "\"");
  return v;
}

std::vector<double> parse_list(Cursor& c) {
  c.expect('[');
  std::vector<double> out;
  if (c.eat(']')) return out;
  while (true) {
    out.push_back(parse_number(c));
    if (c.eat(']')) return out;
    c.expect(',');
  }
}

Symbol parse_record(Cursor& c);

Symbol build_symbol(const std::string& kind, std::map<std::string, double>& nums,
                    std::map<std::string, std::vector<double>>& lists,
                    std::map<std::string, Symbol>& subs) {
  auto want = [&](const char* key) {
    auto it = nums.find(key);
    if (it == nums.end())
      throw ConfigError("symbol record kind \"" + kind + "\" needs field \"" + key + "\"");
    return it->second;
  };
  if (kind == "constant") return Symbol::constant(want("value"));
  if (kind == "trigpoly" || kind == "trig_polynomial") {
    auto it = lists.find("coeffs");
    if (it == lists.end()) throw ConfigError("trigpoly record needs coeffs = [..]");
    return Symbol::trig_polynomial(it->second);
  }
  if (kind == "powerlaw" || kind == "power_law") return Symbol::power_law(want("alpha"));
  if (kind == "farima") return Symbol::farima(want("sigma2"), want("alpha"));
  if (kind == "abssine" || kind == "abs_sine") return Symbol::abs_sine();
  if (kind == "cos" || kind == "cosine") return Symbol::cosine();
  if (kind == "scaled") {
    auto it = subs.find("base");
    if (it == subs.end()) throw ConfigError("scaled record needs base = { .. }");
    return Symbol::scaled(it->second, want("factor"));
  }
  if (kind == "sum") {
    auto l = subs.find("left"), r = subs.find("right");
    if (l == subs.end() || r == subs.end())
      throw ConfigError("sum record needs left = { .. } and right = { .. }");
    return Symbol::sum(l->second, r->second);
  }
  throw ConfigError("unknown symbol kind: \"" + kind + "\"");
}

Symbol parse_record(Cursor& c) {
  c.skip_ws();
  if (c.i < c.s.size() && c.s[c.i] != '{') {
    // Bare-name shorthand.
    std::string kind = parse_ident(c);
    std::map<std::string, double> nums;
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, Symbol> subs;
    return build_symbol(kind, nums, lists, subs);
  }
  c.expect('{');
  std::string kind;
  std::map<std::string, double> nums;
  std::map<std::string, std::vector<double>> lists;
  std::map<std::string, Symbol> subs;
  if (!c.eat('}')) {
    while (true) {
      std::string key = parse_ident(c);
      c.expect('=');
      c.skip_ws();
      if (c.i >= c.s.size()) throw ConfigError("symbol record: truncated");
      char ch = c.s[c.i];
      if (ch == '"' || ch == '\'') {
        std::string val = parse_string(c);
        if (key == "kind")
          kind = val;
        else
          throw ConfigError("symbol record: unexpected string field \"" + key + "\"");
      } else if (ch == '{') {
        subs.emplace(key, parse_record(c));
      } else if (ch == '[') {
        lists.emplace(key, parse_list(c));
      } else {
        nums.emplace(key, parse_number(c));
      }
      if (c.eat('}')) break;
      c.expect(',');
    }
  }
  if (kind.empty()) throw ConfigError("symbol record: missing kind = \"..\"");
  return build_symbol(kind, nums, lists, subs);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Symbol parse_symbol_record(const std::string& text) {
  Cursor c{text};
  Symbol s = parse_record(c);
  if (!c.done()) throw ConfigError("symbol record: trailing characters");
  return s;
}

std::map<std::string, std::string> parse_config_file(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside quotes.
    bool in_quote = false;
    char quote = 0;
    for (size_t i = 0; i < line.size(); ++i) {
      char ch = line[i];
      if (in_quote) {
        if (ch == quote) in_quote = false;
      } else if (ch == '"' || ch == '\'') {
        in_quote = true;
        quote = ch;
      } else if (ch == '#') {
        line = line.substr(0, i);
        break;
      }
    }
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    // Symbol records contain '=' inside braces; the key is everything before
    // the first '=' that precedes any '{'.
    size_t brace = t.find('{');
    if (eq == std::string::npos || (brace != std::string::npos && brace < eq))
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    kv[key] = val;
  }
  return kv;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && (t.front() == '[' || t.front() == '{')) t = t.substr(1);
  if (!t.empty() && (t.back() == ']' || t.back() == '}')) t.pop_back();
  std::vector<int> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    int v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size())
      throw ConfigError("bad integer in list: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

namespace {

double to_double(const std::string& key, const std::string& val) {
  double v = 0;
  std::string t = trim(val);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ConfigError("config key \"" + key + "\": bad number \"" + val + "\"");
  return v;
}

int to_int(const std::string& key, const std::string& val) {
  double v = to_double(key, val);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config key \"" + key + "\": expected an integer");
  return i;
}

std::string unquote(const std::string& s) {
  std::string t = trim(s);
  if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front())
    return t.substr(1, t.size() - 2);
  return t;
}

}  // namespace

ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv) {
  ExperimentConfig cfg;
  if (auto it = kv.find("preset"); it != kv.end()) cfg = preset(unquote(it->second));
  for (const auto& [key, val] : kv) {
    if (key == "preset") continue;
    if (key == "f")
      cfg.f = parse_symbol_record(val);
    else if (key == "g")
      cfg.g = parse_symbol_record(val);
    else if (key == "nu")
      cfg.nu = to_int(key, val);
    else if (key == "n_grid")
      cfg.n_grid = parse_int_list(val);
    else if (key == "dense_threshold")
      cfg.dense_threshold = to_int(key, val);
    else if (key == "abs_tol")
      cfg.quadrature.abs_tol = to_double(key, val);
    else if (key == "panels_per_unit")
      cfg.quadrature.panels_per_unit = to_int(key, val);
    else if (key == "grading_exponent")
      cfg.quadrature.grading_exponent = to_double(key, val);
    else if (key == "max_refinements")
      cfg.quadrature.max_refinements = to_int(key, val);
    else if (key == "theoretical_rate")
      cfg.theoretical_rate = to_double(key, val);
    else if (key == "rate_provenance")
      cfg.rate_provenance = unquote(val);
    else if (key == "drop_head")
      cfg.drop_head = to_int(key, val);
    else if (key == "slack")
      cfg.slack = to_double(key, val);
    else if (key == "workers")
      cfg.workers = to_int(key, val);
    else
      throw ConfigError("unknown config key: \"" + key + "\"");
  }
  cfg.validate();
  return cfg;
}

}  // namespace toeptrace
