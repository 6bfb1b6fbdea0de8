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

#ifndef QLSWALK_TOOLS_IO_H_
#define QLSWALK_TOOLS_IO_H_

#include <istream>
#include <stdexcept>
#include <string>

#include "qlswalk/macaulay.h"
#include "qlswalk/mis.h"
#include "qlswalk/numerics.h"

namespace qlswalk::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Header "M N", then "i j value" triplets with 0-based indices. Blank lines
// and lines starting with '#' are skipped.
Matrix parse_matrix(std::istream& in, const std::string& source = "<matrix>");
// One value per line.
Vector parse_vector(std::istream& in, const std::string& source = "<vector>");
// One polynomial per line: "coeff*term + coeff*term ... = value" with terms
// x<i> (1-based), x<i>*x<j> or 1. Coefficients may be omitted.
PolynomialSystem parse_polynomials(std::istream& in, const std::string& source = "<system>");
// First line "n", then one edge "u v" per line with 0-based vertices.
Graph parse_graph(std::istream& in, const std::string& source = "<graph>");

Matrix read_matrix_file(const std::string& path);
Vector read_vector_file(const std::string& path);
PolynomialSystem read_polynomial_file(const std::string& path);
Graph read_graph_file(const std::string& path);

}  // namespace qlswalk::cli

#endif  // QLSWALK_TOOLS_IO_H_
