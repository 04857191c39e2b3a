#pragma once

#include "regsing/opalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace regsing {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_),
          col(col_) {}
};

struct ParseOptions {
    int t_order = 10;
    int x_order = 6;
    int min_walls = 0;  // lower bounds on the inferred variable counts
    int min_flat = 0;
};

// grammar: integers, p/q, i, z, t1.., x1.., th1.., Dx1.., + - * / ^,
// parentheses, square matrices [[..],[..]], catalog:name(args); division and
// ^ exponents are scalar-valued, catalog arguments are scalar expressions.
// Inverse of to_string: parse(to_string(p)) == p whenever every declared
// variable index is visible in some term of p.
OpMatrix parse_expression(const std::string& text, const ParseOptions& opts = {});

// scalar-only expression, and a comma separated list of them
Scalar parse_scalar(const std::string& text);
std::vector<Scalar> parse_scalar_list(const std::string& text);

// expression that must reduce to a polynomial in the flat variables alone
MPoly parse_x_polynomial(const std::string& text, int nvars, const ParseOptions& opts = {});

}  // namespace regsing
