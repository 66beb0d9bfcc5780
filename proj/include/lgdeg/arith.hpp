#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lgdeg {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
IntVector primitive(const IntVector& v);
Integer floor_div(const Integer& a, const Integer& b);

IntMatrix identity(std::size_t n);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector row_times(const IntVector& row, const IntMatrix& m);
Integer dot(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Integer& s);

// Bareiss fraction-free determinant of a square matrix.
Integer det(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

struct HnfResult {
    IntMatrix h;  // row echelon, positive pivots, entries above a pivot reduced into [0, pivot)
    IntMatrix u;  // unimodular, u * m = h
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntVector diagonal;  // nonzero invariant factors d_1 | d_2 | ...
    IntMatrix left;      // unimodular, left * m * right = diag
    IntMatrix right;
};
SnfResult snf(const IntMatrix& m, std::size_t cols);

// Integer kernel {x : m x = 0} as an HNF row basis.
IntMatrix kernel(const IntMatrix& m, std::size_t cols);

// Solves x * a = b for a square nonsingular rational matrix a (row vector x).
std::optional<RatVector> solve_left(const RatMatrix& a, const RatVector& b);
RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

std::string to_string(const IntVector& v);

}  // namespace lgdeg
