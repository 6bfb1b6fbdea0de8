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

#include <gtest/gtest.h>

#include <sstream>

namespace qlswalk::cli {
namespace {

template <typename F>
ParseError expect_parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ParseError";
  return ParseError("", 0, 0, "");
}

TEST(ParseMatrix, TripletsWithComments) {
  std::istringstream in("# comment\n2 3\n\n0 0 1.5\n1 2 -2e-1\n");
  const Matrix a = parse_matrix(in);
  EXPECT_EQ(a.rows(), 2);
  EXPECT_EQ(a.cols(), 3);
  EXPECT_DOUBLE_EQ(a(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(a(1, 2), -0.2);
  EXPECT_DOUBLE_EQ(a(0, 1), 0.0);
}

TEST(ParseMatrix, ErrorsCarryLocation) {
  {
    std::istringstream in("2 2\n0 0 1\n1 5 1\n");
    const ParseError e = expect_parse_error([&] { parse_matrix(in, "m.txt"); });
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
    EXPECT_NE(std::string(e.what()).find("m.txt:3:3"), std::string::npos);
  }
  {
    std::istringstream in("2 2\n0 0 abc\n");
    EXPECT_EQ(expect_parse_error([&] { parse_matrix(in); }).column(), 5);
  }
  {
    std::istringstream in("2 2\n0 0 1\n0 0 2\n");
    EXPECT_EQ(expect_parse_error([&] { parse_matrix(in); }).line(), 3);
  }
  {
    std::istringstream in("2 2\n0 0\n");
    EXPECT_EQ(expect_parse_error([&] { parse_matrix(in); }).line(), 2);
  }
  {
    std::istringstream in("");
    expect_parse_error([&] { parse_matrix(in); });
  }
}

TEST(ParseVector, OneValuePerLine) {
  std::istringstream in("1\n-2.5\n# skip\n3e2\n");
  const Vector v = parse_vector(in);
  EXPECT_EQ(v, (Vector{{1.0, -2.5, 300.0}}));
  std::istringstream bad("1 2\n");
  EXPECT_EQ(expect_parse_error([&] { parse_vector(bad); }).column(), 3);
}

TEST(ParsePolynomials, TermsAndRightHandSide) {
  std::istringstream in("x1 + 2*x2*x3 - 0.5 = 1\n-x2 + x2 + x4 = 0 # note\n");
  const PolynomialSystem f = parse_polynomials(in);
  EXPECT_EQ(f.num_vars, 4);
  ASSERT_EQ(f.polynomials.size(), 2U);
  // Merged by monomial: constant -1.5, x1, x2*x3.
  const Polynomial& p = f.polynomials[0];
  ASSERT_EQ(p.size(), 3U);
  EXPECT_EQ(p[0].monomial, 0U);
  EXPECT_DOUBLE_EQ(p[0].coefficient, -1.5);
  EXPECT_EQ(p[1].monomial, 0b1U);
  EXPECT_EQ(p[2].monomial, 0b110U);
  EXPECT_DOUBLE_EQ(p[2].coefficient, 2.0);
  // x2 cancels.
  ASSERT_EQ(f.polynomials[1].size(), 1U);
  EXPECT_EQ(f.polynomials[1][0].monomial, 0b1000U);
}

TEST(ParsePolynomials, BooleanReductionAndErrors) {
  std::istringstream sq("x1*x1 = 1\n");
  EXPECT_EQ(parse_polynomials(sq).polynomials[0][1].monomial, 0b1U);
  std::istringstream cubic("x1*x2*x3 = 0\n");
  EXPECT_EQ(expect_parse_error([&] { parse_polynomials(cubic); }).line(), 1);
  std::istringstream zero("x0 = 1\n");
  EXPECT_EQ(expect_parse_error([&] { parse_polynomials(zero); }).column(), 2);
  std::istringstream noeq("x1 + x2\n");
  EXPECT_EQ(expect_parse_error([&] { parse_polynomials(noeq); }).column(), 8);
  std::istringstream dangling("x1 + x2 = 1\nx1 * x2 + = 0\n");
  const ParseError e = expect_parse_error([&] { parse_polynomials(dangling); });
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 11);
}

TEST(ParseGraph, EdgesAndErrors) {
  std::istringstream in("4\n0 1\n2 3\n");
  const Graph g = parse_graph(in);
  EXPECT_EQ(g.num_vertices, 4);
  EXPECT_EQ(g.edges.size(), 2U);
  std::istringstream loop("3\n1 1\n");
  EXPECT_EQ(expect_parse_error([&] { parse_graph(loop); }).line(), 2);
  std::istringstream range("3\n0 3\n");
  EXPECT_EQ(expect_parse_error([&] { parse_graph(range); }).column(), 3);
}

TEST(ReadFile, MissingFile) {
  EXPECT_THROW(read_matrix_file("/nonexistent/matrix.txt"), ParseError);
}

}  // namespace
}  // namespace qlswalk::cli
