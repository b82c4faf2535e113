// Copyright 2026 The proplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "proplace/errors.hpp"
#include "proplace/milp.hpp"

namespace proplace::milp {

namespace {

constexpr int kTermsPerLine = 8;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char ch : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || std::string_view("_.[]{}!#$%&()/,;?@'`|~").find(ch) != std::string_view::npos;
    out.push_back(ok ? ch : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())) || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<Term>& terms, const std::vector<std::string>& names) {
  if (terms.empty()) {
    os << " 0 " << names.front();
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) os << "\n   ";
    const double c = terms[k].coef;
    if (k == 0) {
      os << ' ' << (c < 0 ? "- " : "") << format_number(std::abs(c)) << ' ' << names[terms[k].var];
    } else {
      os << (c < 0 ? " - " : " + ") << format_number(std::abs(c)) << ' ' << names[terms[k].var];
    }
  }
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

struct Token {
  enum Kind { kNumber, kIdent, kOp, kColon } kind;
  std::string text;
  double value = 0.0;
};

bool parse_double(std::string_view s, double& out) {
  std::string lower;
  for (char ch : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity") { out = kInf; return true; }
  if (lower == "-inf" || lower == "-infinity") { out = -kInf; return true; }
  std::string_view t = s;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && !t.empty();
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
    if (ch == '<' || ch == '>' || ch == '=') {
      std::string op(1, ch);
      ++i;
      if (i < text.size() && text[i] == '=') { op.push_back('='); ++i; }
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      if (op == "<") op = "<=";
      if (op == ">") op = ">=";
      tokens.push_back({Token::kOp, op});
      continue;
    }
    if (ch == ':') { tokens.push_back({Token::kColon, ":"}); ++i; continue; }
    if (ch == '+' || ch == '-') {
      // Signed infinity is a single number token.
      std::size_t j = i + 1;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      double v;
      if (j > i + 1 && parse_double(text.substr(i, j - i), v) && std::isinf(v)) {
        tokens.push_back({Token::kNumber, text.substr(i, j - i), v});
        i = j;
        continue;
      }
      tokens.push_back({Token::kOp, std::string(1, ch)});
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                                 text[j] == 'e' || text[j] == 'E' ||
                                 ((text[j] == '+' || text[j] == '-') && (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
        ++j;
      }
      double v;
      if (!parse_double(text.substr(i, j - i), v)) throw Error(ErrorCode::kParse, "bad number '" + text.substr(i, j - i) + "'");
      tokens.push_back({Token::kNumber, text.substr(i, j - i), v});
      i = j;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ':' && text[j] != '<' &&
           text[j] != '>' && text[j] != '=' && text[j] != '+' && text[j] != '-') {
      ++j;
    }
    std::string word = text.substr(i, j - i);
    double v;
    if (parse_double(word, v) && std::isinf(v)) tokens.push_back({Token::kNumber, word, v});
    else tokens.push_back({Token::kIdent, word});
    i = j;
  }
  return tokens;
}

std::string lowercase(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

class LpParser {
 public:
  Model parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    Section section = Section::kNone;
    std::map<Section, std::string> bodies;
    std::vector<std::string> bound_lines;
    while (std::getline(in, line)) {
      if (auto c = line.find('\\'); c != std::string::npos) line.erase(c);
      std::string key = lowercase(line);
      key.erase(0, key.find_first_not_of(" \t\r"));
      key.erase(key.find_last_not_of(" \t\r") + 1);
      if (key == "minimize" || key == "minimise" || key == "minimum" || key == "min") { section = Section::kObjective; sense_ = ObjectiveSense::kMinimize; continue; }
      if (key == "maximize" || key == "maximise" || key == "maximum" || key == "max") { section = Section::kObjective; sense_ = ObjectiveSense::kMaximize; continue; }
      if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") { section = Section::kConstraints; continue; }
      if (key == "bounds" || key == "bound") { section = Section::kBounds; continue; }
      if (key == "binaries" || key == "binary" || key == "bin") { section = Section::kBinaries; continue; }
      if (key == "generals" || key == "general" || key == "gen") { section = Section::kGenerals; continue; }
      if (key == "end") { section = Section::kEnd; continue; }
      if (key.empty()) continue;
      if (section == Section::kNone || section == Section::kEnd) throw Error(ErrorCode::kParse, "text outside of an LP section: " + line);
      if (section == Section::kBounds) bound_lines.push_back(line);
      else bodies[section] += line + "\n";
    }

    parse_objective(tokenize(bodies[Section::kObjective]));
    parse_constraints(tokenize(bodies[Section::kConstraints]));
    for (const auto& l : bound_lines) parse_bound(tokenize(l));
    for (const auto& t : tokenize(bodies[Section::kBinaries])) {
      if (t.kind != Token::kIdent) throw Error(ErrorCode::kParse, "unexpected token in Binaries: " + t.text);
      const int v = var(t.text);
      vars_[v].binary = true;
      if (!bounded_[v]) { vars_[v].lower = 0.0; vars_[v].upper = 1.0; }
    }
    if (!bodies[Section::kGenerals].empty()) throw Error(ErrorCode::kParse, "general integer variables are not supported");
    return build();
  }

 private:
  int var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    vars_.push_back({name, 0.0, kInf, false});
    bounded_.push_back(false);
    bound_order_.push_back(-1);
    index_[name] = static_cast<int>(vars_.size() - 1);
    return static_cast<int>(vars_.size() - 1);
  }

  // Parses `[name:] terms` starting at `pos`; stops at a comparator or end.
  LinearExpr parse_expr(const std::vector<Token>& tk, std::size_t& pos) {
    LinearExpr expr;
    while (pos < tk.size() && !(tk[pos].kind == Token::kOp && (tk[pos].text == "<=" || tk[pos].text == ">=" || tk[pos].text == "="))) {
      double sign = 1.0;
      while (pos < tk.size() && tk[pos].kind == Token::kOp && (tk[pos].text == "+" || tk[pos].text == "-")) {
        if (tk[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= tk.size()) throw Error(ErrorCode::kParse, "dangling sign in expression");
      double coef = 1.0;
      bool has_number = false;
      if (tk[pos].kind == Token::kNumber) {
        coef = tk[pos].value;
        has_number = true;
        ++pos;
      }
      if (pos < tk.size() && tk[pos].kind == Token::kIdent && !(pos + 1 < tk.size() && tk[pos + 1].kind == Token::kColon)) {
        expr.terms.push_back({var(tk[pos].text), sign * coef});
        ++pos;
      } else if (has_number) {
        // Constraint-side constants are folded onto the right-hand side by Model.
        expr.constant += sign * coef;
      } else {
        throw Error(ErrorCode::kParse, "malformed expression near '" + (pos < tk.size() ? tk[pos].text : std::string("<end>")) + "'");
      }
    }
    return expr;
  }

  void parse_objective(const std::vector<Token>& tk) {
    std::size_t pos = 0;
    if (tk.size() >= 2 && tk[0].kind == Token::kIdent && tk[1].kind == Token::kColon) pos = 2;
    objective_ = parse_expr(tk, pos);
    if (pos != tk.size()) throw Error(ErrorCode::kParse, "unexpected token in objective: " + tk[pos].text);
  }

  void parse_constraints(const std::vector<Token>& tk) {
    std::size_t pos = 0;
    while (pos < tk.size()) {
      std::string name;
      if (pos + 1 < tk.size() && tk[pos].kind == Token::kIdent && tk[pos + 1].kind == Token::kColon) {
        name = tk[pos].text;
        pos += 2;
      }
      LinearExpr lhs = parse_expr(tk, pos);
      if (pos >= tk.size() || tk[pos].kind != Token::kOp) throw Error(ErrorCode::kParse, "constraint " + name + " lacks a comparator");
      const std::string op = tk[pos++].text;
      double sign = 1.0;
      while (pos < tk.size() && tk[pos].kind == Token::kOp && (tk[pos].text == "+" || tk[pos].text == "-")) {
        if (tk[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= tk.size() || tk[pos].kind != Token::kNumber) throw Error(ErrorCode::kParse, "constraint " + name + " lacks a right-hand side");
      const double rhs = sign * tk[pos++].value;
      const Comparator cmp = op == "<=" ? Comparator::kLessEqual : op == ">=" ? Comparator::kGreaterEqual : Comparator::kEqual;
      constraints_.push_back({name, lhs, cmp, rhs});
    }
  }

  void parse_bound(const std::vector<Token>& tk) {
    auto number = [](const Token& t) {
      if (t.kind != Token::kNumber) throw Error(ErrorCode::kParse, "expected a number in Bounds, got '" + t.text + "'");
      return t.value;
    };
    auto signed_number = [&](std::size_t& pos) {
      double sign = 1.0;
      while (pos < tk.size() && tk[pos].kind == Token::kOp && (tk[pos].text == "+" || tk[pos].text == "-")) {
        if (tk[pos].text == "-") sign = -sign;
        ++pos;
      }
      if (pos >= tk.size()) throw Error(ErrorCode::kParse, "truncated bound");
      return sign * number(tk[pos++]);
    };
    auto mark = [&](int v) {
      bounded_[v] = true;
      if (bound_order_[v] < 0) bound_order_[v] = next_bound_++;
    };
    if (tk.size() == 2 && tk[0].kind == Token::kIdent && lowercase(tk[1].text) == "free") {
      const int v = var(tk[0].text);
      vars_[v].lower = -kInf;
      vars_[v].upper = kInf;
      mark(v);
      return;
    }
    std::size_t pos = 0;
    if (tk.empty()) return;
    if (tk[0].kind == Token::kIdent) {
      const int v = var(tk[0].text);
      pos = 1;
      if (pos >= tk.size() || tk[pos].kind != Token::kOp) throw Error(ErrorCode::kParse, "malformed bound for " + tk[0].text);
      const std::string op = tk[pos++].text;
      const double value = signed_number(pos);
      if (op == "<=") vars_[v].upper = value;
      else if (op == ">=") vars_[v].lower = value;
      else vars_[v].lower = vars_[v].upper = value;
      mark(v);
      return;
    }
    const double lo = signed_number(pos);
    if (pos + 1 >= tk.size() || tk[pos].text != "<=" || tk[pos + 1].kind != Token::kIdent) {
      throw Error(ErrorCode::kParse, "malformed bound line");
    }
    const int v = var(tk[pos + 1].text);
    pos += 2;
    vars_[v].lower = lo;
    if (pos < tk.size()) {
      if (tk[pos].text != "<=") throw Error(ErrorCode::kParse, "malformed bound line");
      ++pos;
      vars_[v].upper = signed_number(pos);
    }
    mark(v);
  }

  Model build() {
    // Variables listed in Bounds keep that order; the rest follow by first use.
    std::vector<int> order(vars_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const long ka = bound_order_[a] < 0 ? 1000000000L + a : bound_order_[a];
      const long kb = bound_order_[b] < 0 ? 1000000000L + b : bound_order_[b];
      return ka < kb;
    });
    std::vector<int> remap(vars_.size());
    Model model;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& v = vars_[order[k]];
      remap[order[k]] = static_cast<int>(k);
      if (v.binary) {
        const VarId id = model.add_binary(v.name);
        model.set_bounds(id, v.lower, v.upper);
      } else {
        model.add_continuous(v.name, v.lower, v.upper);
      }
    }
    auto rename = [&](LinearExpr e) {
      for (auto& t : e.terms) t.var = remap[t.var];
      return e;
    };
    model.set_objective(rename(objective_), sense_);
    for (const auto& c : constraints_) model.add_constraint(rename(c.lhs), c.cmp, c.rhs, c.name);
    model.validate();
    return model;
  }

  struct RawConstraint {
    std::string name;
    LinearExpr lhs;
    Comparator cmp;
    double rhs;
  };

  std::vector<Variable> vars_;
  std::vector<bool> bounded_;
  std::vector<long> bound_order_;
  long next_bound_ = 0;
  std::unordered_map<std::string, int> index_;
  LinearExpr objective_;
  ObjectiveSense sense_ = ObjectiveSense::kMinimize;
  std::vector<RawConstraint> constraints_;
};

}  // namespace

std::string export_lp(const Model& model) {
  model.validate();
  std::vector<std::string> names;
  for (const auto& v : model.variables()) names.push_back(sanitize(v.name));
  if (names.empty()) names.push_back("_unused");

  std::ostringstream os;
  os << "\\ proplace MILP model\n";
  os << (model.sense() == ObjectiveSense::kMinimize ? "Minimize\n" : "Maximize\n");
  os << " obj:";
  const auto& obj = model.objective();
  if (obj.terms.empty() && obj.constant == 0.0) {
    os << " 0";
  } else {
    if (!obj.terms.empty()) write_terms(os, obj.terms, names);
    if (obj.constant != 0.0 || obj.terms.empty()) {
      os << (obj.constant < 0 ? " - " : (obj.terms.empty() ? " " : " + ")) << format_number(std::abs(obj.constant));
    }
  }
  os << "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    os << ' ' << sanitize(c.name) << ':';
    write_terms(os, c.terms, names);
    os << (c.cmp == Comparator::kLessEqual ? " <= " : c.cmp == Comparator::kGreaterEqual ? " >= " : " = ")
       << format_number(c.rhs) << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < model.variables().size(); ++j) {
    const auto& v = model.variables()[j];
    if (std::isinf(v.lower) && v.lower < 0 && std::isinf(v.upper) && v.upper > 0) {
      os << ' ' << names[j] << " free\n";
    } else {
      os << ' ' << format_number(v.lower) << " <= " << names[j] << " <= " << format_number(v.upper) << '\n';
    }
  }
  bool any_binary = false;
  for (std::size_t j = 0; j < model.variables().size(); ++j) {
    if (!model.variables()[j].binary) continue;
    if (!any_binary) os << "Binaries\n";
    any_binary = true;
    os << ' ' << names[j] << '\n';
  }
  os << "End\n";
  return os.str();
}

Model parse_lp(std::string_view text) { return LpParser().parse(text); }

}  // namespace proplace::milp
