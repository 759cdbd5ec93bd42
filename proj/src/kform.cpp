#include "nkmm/kform.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace nkmm {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

Mask indices_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << i;
  return m;
}

RealForm to_real(const ExactForm& f) {
  RealForm r(f.dim(), f.degree());
  for (const auto& [m, c] : f.terms()) r.accumulate(m, c.to_double());
  return r;
}

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

std::string tuple_text(Mask m, int base) {
  std::string out = "(";
  bool first = true;
  for (int i : mask_indices(m)) {
    if (!first) out += ',';
    out += std::to_string(i + base);
    first = false;
  }
  return out + ")";
}

template <class S, class F>
std::string dump_impl(const BasicForm<S>& f, int base, F fmt) {
  std::vector<std::pair<std::vector<int>, Mask>> keys;
  for (const auto& [m, c] : f.terms()) keys.emplace_back(mask_indices(m), m);
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& [idx, m] : keys) {
    out += fmt(f.terms().at(m));
    out += ' ';
    out += tuple_text(m, base);
    out += '\n';
  }
  return out;
}

}  // namespace

ExactForm parse_terms(std::string_view s, int dim, int base, int degree) {
  struct Term {
    std::vector<int> idx;
    QuadScalar c;
  };
  std::vector<Term> terms;
  std::size_t i = 0;
  skip_ws(s, i);
  if (i == s.size() || s.substr(i) == "0") {
    if (degree < 0) throw ArgumentError("parse_terms: empty form needs an explicit degree");
    return ExactForm(dim, degree);
  }
  while (i < s.size()) {
    skip_ws(s, i);
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip_ws(s, i);
    } else if (!terms.empty()) {
      throw ArgumentError("parse_terms: expected sign at " + std::string(s.substr(i)));
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    QuadScalar c(1);
    if (i > start) {
      mpq_class q;
      if (q.set_str(std::string(s.substr(start, i - start)), 10) != 0)
        throw ArgumentError("parse_terms: bad coefficient");
      q.canonicalize();
      c = QuadScalar(q);
    }
    skip_ws(s, i);
    if (i >= s.size() || s[i] != 'e') throw ArgumentError("parse_terms: expected 'e' in " + std::string(s));
    ++i;
    bool braced = false;
    if (i + 1 < s.size() && s[i] == '^' && s[i + 1] == '{') {
      braced = true;
      i += 2;
    }
    Term t;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      int k = s[i] - '0' - base;
      if (k < 0 || k >= dim) throw ArgumentError("parse_terms: index out of range");
      t.idx.push_back(k);
      ++i;
    }
    if (braced) {
      if (i >= s.size() || s[i] != '}') throw ArgumentError("parse_terms: missing '}'");
      ++i;
    }
    if (t.idx.empty()) throw ArgumentError("parse_terms: term without indices");
    t.c = sign > 0 ? c : -c;
    terms.push_back(std::move(t));
    skip_ws(s, i);
  }
  int deg = static_cast<int>(terms.front().idx.size());
  if (degree >= 0 && degree != deg) throw ArgumentError("parse_terms: degree mismatch");
  ExactForm f(dim, deg);
  for (const auto& t : terms) f.add_term(t.idx, t.c);
  return f;
}

std::string dump(const ExactForm& f, int base) {
  return dump_impl(f, base, [](const QuadScalar& c) { return c.str(); });
}

std::string dump(const RealForm& f, int base) {
  return dump_impl(f, base, [](double c) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return std::string(buf);
  });
}

ExactForm parse_dump(std::string_view text, int dim, int degree, int base) {
  ExactForm f(dim, degree);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw ArgumentError("parse_dump: malformed line: " + line);
    QuadScalar c = QuadScalar::parse(std::string_view(line).substr(0, sp));
    std::string tup = line.substr(sp + 1);
    if (tup.size() < 2 || tup.front() != '(' || tup.back() != ')')
      throw ArgumentError("parse_dump: malformed tuple: " + tup);
    std::vector<int> idx;
    std::string body = tup.substr(1, tup.size() - 2);
    std::istringstream parts(body);
    std::string tok;
    while (std::getline(parts, tok, ',')) idx.push_back(std::stoi(tok) - base);
    f.add_term(idx, c);
  }
  return f;
}

}  // namespace nkmm
