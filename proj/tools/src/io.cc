// Copyright 2026 The qlswalk Authors
//
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

#include "io.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace qlswalk::cli {

ParseError::ParseError(const std::string& source, int line, int column,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

// A whitespace-separated token with its 1-based column.
struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> split(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::vector<Token>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (skippable(line)) continue;
      tokens = split(line);
      text_ = line;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(int column, const std::string& message) const {
    throw ParseError(source_, line_no_, column, message);
  }

  int line() const { return line_no_; }
  const std::string& text() const { return text_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string text_;
  int line_no_ = 0;
};

double to_double(const LineReader& r, const Token& t) {
  const char* begin = t.text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') r.fail(t.column, "expected a number, got '" + t.text + "'");
  if (errno == ERANGE || !std::isfinite(v)) r.fail(t.column, "number out of range");
  return v;
}

long to_index(const LineReader& r, const Token& t) {
  const char* begin = t.text.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    r.fail(t.column, "expected an integer, got '" + t.text + "'");
  }
  if (errno == ERANGE) r.fail(t.column, "integer out of range");
  return v;
}

void expect_count(const LineReader& r, const std::vector<Token>& tokens, std::size_t n,
                  const char* what) {
  if (tokens.size() < n) {
    const int col = static_cast<int>(r.text().size()) + 1;
    r.fail(col, std::string("expected ") + what);
  }
  if (tokens.size() > n) r.fail(tokens[n].column, "unexpected trailing token");
}

// Scanner over one polynomial line.
class PolyScanner {
 public:
  PolyScanner(const LineReader& reader, const std::string& text)
      : reader_(reader), text_(text) {}

  std::map<Monomial, double> parse(int& max_var) {
    std::map<Monomial, double> terms;
    parse_side(terms, 1.0, max_var);
    skip_space();
    if (peek() != '=') fail("expected '=' or an operator");
    ++pos_;
    parse_side(terms, -1.0, max_var);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] != '#') fail("unexpected character");
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    reader_.fail(static_cast<int>(pos_) + 1, message);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void parse_side(std::map<Monomial, double>& terms, double side, int& max_var) {
    skip_space();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    for (;;) {
      parse_term(terms, side * sign, max_var);
      skip_space();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        continue;
      }
      return;
    }
  }

  void parse_term(std::map<Monomial, double>& terms, double sign, int& max_var) {
    skip_space();
    double coeff = 1.0;
    Monomial mono = 0;
    bool have_factor = false;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == 'x') {
        ++pos_;
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a variable index after 'x'");
        const long idx = std::strtol(text_.substr(start, pos_ - start).c_str(), nullptr, 10);
        if (idx < 1 || idx > kMaxVariables) {
          pos_ = start;
          fail("variable index must lie in [1, " + std::to_string(kMaxVariables) + "]");
        }
        max_var = std::max(max_var, static_cast<int>(idx));
        mono |= Monomial{1} << (idx - 1);
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || !std::isfinite(v)) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        coeff *= v;
      } else {
        fail(have_factor ? "expected a factor after '*'" : "expected a term");
      }
      have_factor = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (std::popcount(mono) > 2) fail("term degree exceeds 2");
    terms[mono] += sign * coeff;
  }

  const LineReader& reader_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return in;
}

}  // namespace

Matrix parse_matrix(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Token> tok;
  if (!r.next(tok)) throw ParseError(source, r.line() + 1, 1, "missing header 'M N'");
  expect_count(r, tok, 2, "header 'M N'");
  const long m = to_index(r, tok[0]);
  const long n = to_index(r, tok[1]);
  if (m < 1) r.fail(tok[0].column, "row count must be positive");
  if (n < 1) r.fail(tok[1].column, "column count must be positive");
  if (m * n > (1L << 26)) r.fail(tok[0].column, "matrix too large for dense storage");
  Matrix a = Matrix::Zero(m, n);
  std::set<std::pair<long, long>> seen;
  while (r.next(tok)) {
    expect_count(r, tok, 3, "triplet 'i j value'");
    const long i = to_index(r, tok[0]);
    const long j = to_index(r, tok[1]);
    if (i < 0 || i >= m) r.fail(tok[0].column, "row index out of range");
    if (j < 0 || j >= n) r.fail(tok[1].column, "column index out of range");
    if (!seen.insert({i, j}).second) r.fail(tok[0].column, "duplicate entry");
    a(i, j) = to_double(r, tok[2]);
  }
  return a;
}

Vector parse_vector(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Token> tok;
  std::vector<double> values;
  while (r.next(tok)) {
    expect_count(r, tok, 1, "one value");
    values.push_back(to_double(r, tok[0]));
  }
  if (values.empty()) throw ParseError(source, r.line() + 1, 1, "vector is empty");
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

PolynomialSystem parse_polynomials(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Token> tok;
  PolynomialSystem f;
  int max_var = 0;
  while (r.next(tok)) {
    const std::string line = r.text();
    PolyScanner scanner(r, line);
    Polynomial p;
    for (const auto& [mono, coeff] : scanner.parse(max_var)) {
      if (coeff != 0.0) p.push_back({coeff, mono});
    }
    f.polynomials.push_back(std::move(p));
  }
  if (f.polynomials.empty()) throw ParseError(source, r.line() + 1, 1, "no polynomials");
  if (max_var == 0) throw ParseError(source, 1, 1, "system has no variables");
  f.num_vars = max_var;
  return f;
}

Graph parse_graph(std::istream& in, const std::string& source) {
  LineReader r(in, source);
  std::vector<Token> tok;
  if (!r.next(tok)) throw ParseError(source, r.line() + 1, 1, "missing vertex count");
  expect_count(r, tok, 1, "vertex count");
  const long n = to_index(r, tok[0]);
  if (n < 1 || n > kMaxVariables) {
    r.fail(tok[0].column, "vertex count must lie in [1, " + std::to_string(kMaxVariables) + "]");
  }
  std::vector<std::pair<int, int>> edges;
  while (r.next(tok)) {
    expect_count(r, tok, 2, "edge 'u v'");
    const long u = to_index(r, tok[0]);
    const long v = to_index(r, tok[1]);
    if (u < 0 || u >= n) r.fail(tok[0].column, "vertex out of range");
    if (v < 0 || v >= n) r.fail(tok[1].column, "vertex out of range");
    if (u == v) r.fail(tok[1].column, "self-loop");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return make_graph(static_cast<int>(n), std::move(edges));
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_matrix(in, path);
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_vector(in, path);
}

PolynomialSystem read_polynomial_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_polynomials(in, path);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return parse_graph(in, path);
}

}  // namespace qlswalk::cli
