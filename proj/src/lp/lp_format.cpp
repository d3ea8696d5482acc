#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "swc/lp_format.hpp"

namespace swc::lp {

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

bool valid_name_char(char c, bool first) {
  if (std::isalpha(static_cast<unsigned char>(c))) return true;
  if (first) return c == '_' || c == '.';
  return std::isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' ||
         c == ']' || c == '#';
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!valid_name_char(out[k], k == 0)) out[k] = '_';
  }
  return out;
}

void write_terms(std::ostream& out, std::span<const int> cols, std::span<const double> vals,
                 const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const double v = vals[k];
    const bool neg = std::signbit(v);
    if (k == 0) {
      out << (neg ? "- " : "");
    } else {
      out << (neg ? " - " : " + ");
    }
    out << format_number(std::abs(v)) << ' ' << names[cols[k]];
  }
}

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw InvalidArgument("LP parse error at line " + std::to_string(line) + ": " + msg);
}

double parse_value(const std::string& tok, int line) {
  const std::string t = lower_copy(tok);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return kInf;
  if (t == "-inf" || t == "-infinity") return -kInf;
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) parse_fail(line, "bad number '" + tok + "'");
  return v;
}

bool is_number_token(const std::string& tok) {
  if (tok.empty()) return false;
  const char c = tok[0];
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return true;
  if ((c == '+' || c == '-') && tok.size() > 1) {
    return std::isdigit(static_cast<unsigned char>(tok[1])) || tok[1] == '.' ||
           lower_copy(tok.substr(1)).rfind("inf", 0) == 0;
  }
  return lower_copy(tok).rfind("inf", 0) == 0;
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> toks;
  std::istringstream is(s);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

struct ParsedExpr {
  std::vector<std::pair<std::string, double>> terms;
};

// Parses "[-] c name [+|- c name]..." from tokens[begin, end).
ParsedExpr parse_expression(const std::vector<std::string>& toks, std::size_t begin,
                            std::size_t end, int line) {
  ParsedExpr expr;
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  for (std::size_t k = begin; k < end; ++k) {
    const std::string& t = toks[k];
    if (t == "+") {
      sign = 1.0;
      continue;
    }
    if (t == "-") {
      sign = -1.0;
      continue;
    }
    if (is_number_token(t) && !have_coef) {
      coef = parse_value(t, line);
      have_coef = true;
      continue;
    }
    expr.terms.emplace_back(t, sign * coef);
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  if (have_coef) parse_fail(line, "dangling coefficient");
  return expr;
}

}  // namespace

std::string column_name(const LpInstance& lp, int j) {
  const std::string& n = lp.var_name(j);
  return n.empty() ? "x" + std::to_string(j) : sanitize(n);
}

std::string row_label(const LpInstance& lp, int i) {
  const std::string& n = lp.row_name(i);
  return n.empty() ? "c" + std::to_string(i) : sanitize(n);
}

void write_interchange(const LpInstance& lp, std::ostream& out) {
  std::vector<std::string> names(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) names[j] = column_name(lp, j);

  out << "\\ generated by swc\n";
  out << "Minimize\n obj: ";
  std::vector<int> all(lp.num_vars());
  std::vector<double> costs(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) {
    all[j] = j;
    costs[j] = lp.cost(j);
  }
  write_terms(out, all, costs, names);
  out << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const RowView r = lp.row(i);
    out << ' ' << row_label(lp, i) << ": ";
    if (r.cols.empty()) {
      out << "0 " << names.front();
    } else {
      write_terms(out, r.cols, r.values, names);
    }
    out << ' ' << to_string(r.sense) << ' ' << format_number(r.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower(j);
    const double up = lp.upper(j);
    if (lo == 0.0 && up == kInf) continue;
    out << ' ';
    if (lo == -kInf && up == kInf) {
      out << names[j] << " free";
    } else if (lo == up) {
      out << names[j] << " = " << format_number(lo);
    } else if (up == kInf) {
      out << names[j] << " >= " << format_number(lo);
    } else {
      out << format_number(lo) << " <= " << names[j] << " <= " << format_number(up);
    }
    out << '\n';
  }
  out << "End\n";
}

std::string write_interchange(const LpInstance& lp) {
  std::ostringstream os;
  write_interchange(lp, os);
  return os.str();
}

LpInstance parse_interchange(std::istream& in) {
  enum class Section { None, Objective, Constraints, Bounds, Done };
  Section section = Section::None;
  LpInstance lp;
  std::unordered_map<std::string, int> index;
  auto var = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int j = lp.add_variable(0.0, kInf, 0.0, name);
    index.emplace(name, j);
    return j;
  };

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '\\') continue;
    const std::string low = lower_copy(s);
    if (low == "minimize" || low == "minimise" || low == "min") {
      section = Section::Objective;
      continue;
    }
    if (low == "maximize" || low == "maximise" || low == "max") {
      parse_fail(line, "maximization is outside the supported subset");
    }
    if (low == "subject to" || low == "such that" || low == "st" || low == "s.t.") {
      section = Section::Constraints;
      continue;
    }
    if (low == "bounds") {
      section = Section::Bounds;
      continue;
    }
    if (low == "end") {
      section = Section::Done;
      continue;
    }

    switch (section) {
      case Section::None:
      case Section::Done:
        parse_fail(line, "content outside a section");
      case Section::Objective: {
        const auto colon = s.find(':');
        const std::string body = colon == std::string::npos ? s : s.substr(colon + 1);
        const auto toks = tokenize(body);
        const ParsedExpr e = parse_expression(toks, 0, toks.size(), line);
        for (const auto& [name, v] : e.terms) {
          const int j = var(name);
          lp.set_cost(j, lp.cost(j) + v);
        }
        break;
      }
      case Section::Constraints: {
        const auto colon = s.find(':');
        if (colon == std::string::npos) parse_fail(line, "constraint without a name");
        const std::string name = trim(s.substr(0, colon));
        const auto toks = tokenize(s.substr(colon + 1));
        std::size_t op = toks.size();
        for (std::size_t k = 0; k < toks.size(); ++k) {
          if (toks[k] == "<=" || toks[k] == ">=" || toks[k] == "=" || toks[k] == "<" ||
              toks[k] == ">" || toks[k] == "=<" || toks[k] == "=>") {
            op = k;
            break;
          }
        }
        if (op + 2 != toks.size()) parse_fail(line, "expected '<expr> <sense> <rhs>'");
        const std::string& o = toks[op];
        const RowSense sense = (o == "<=" || o == "<" || o == "=<")   ? RowSense::LessEqual
                               : (o == ">=" || o == ">" || o == "=>") ? RowSense::GreaterEqual
                                                                      : RowSense::Equal;
        const ParsedExpr e = parse_expression(toks, 0, op, line);
        std::vector<int> cols;
        std::vector<double> vals;
        for (const auto& [vn, v] : e.terms) {
          cols.push_back(var(vn));
          vals.push_back(v);
        }
        lp.add_row(cols, vals, sense, parse_value(toks.back(), line), name);
        break;
      }
      case Section::Bounds: {
        const auto toks = tokenize(s);
        if (toks.size() == 2 && lower_copy(toks[1]) == "free") {
          const int j = var(toks[0]);
          lp.set_bounds(j, -kInf, kInf);
        } else if (toks.size() == 3) {
          const int j = var(toks[0]);
          const double v = parse_value(toks[2], line);
          if (toks[1] == ">=") {
            lp.set_bounds(j, v, lp.upper(j));
          } else if (toks[1] == "<=") {
            lp.set_bounds(j, lp.lower(j), v);
          } else if (toks[1] == "=") {
            lp.set_bounds(j, v, v);
          } else {
            parse_fail(line, "unknown bound operator '" + toks[1] + "'");
          }
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          const int j = var(toks[2]);
          lp.set_bounds(j, parse_value(toks[0], line), parse_value(toks[4], line));
        } else {
          parse_fail(line, "unsupported bound declaration");
        }
        break;
      }
    }
  }
  if (section != Section::Done) throw InvalidArgument("LP parse error: missing End");
  return lp;
}

LpInstance parse_interchange(const std::string& text) {
  std::istringstream is(text);
  return parse_interchange(is);
}

}  // namespace swc::lp
