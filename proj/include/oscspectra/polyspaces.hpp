#pragma once

// Polynomial spans of degree-m eigenfunction generators, written in the
// monomial basis of degree <= m:
//   V_m   = lin{ H_alpha(x) : |alpha| = m }                 (physicists' H_k)
//   V~_m  = lin{ L_k^{n/2-1+m-2k}(|x|^2) Y_{m-2k,j}(x) }
// Monomials are ordered graded lexicographically: ascending total degree,
// and within one degree descending in the exponent of x1, then x2, ...

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oscspectra/special_functions.hpp"

namespace oscspectra {

inline constexpr int kPolyspaceMaxDim = 3;
inline constexpr int kPolyspaceMaxDegree = 12;

/// Monomial exponents of total degree <= m in graded-lex order.
std::vector<MultiIndex> graded_monomials(int n, int m);

struct PolySpan {
    int n = 1;
    int m = 0;
    std::vector<MultiIndex> monomials;  // column labels
    std::vector<std::string> labels;    // one per generator
    Eigen::MatrixXd generators;         // rows = generators, columns = monomials

    std::size_t rows() const { return static_cast<std::size_t>(generators.rows()); }
    /// Row r as (monomial, coefficient) pairs with nonzero coefficients.
    std::vector<std::pair<MultiIndex, double>> row_terms(std::size_t r) const;
};

/// Throws std::invalid_argument for n < 1 or m < 0 and ResourceError beyond
/// n <= 3, m <= 12.
PolySpan hermite_span(int n, int m);
PolySpan laguerre_harmonic_span(int n, int m);

/// Coefficients of the degree-s solid harmonic j of sph_basis(n, s) in the
/// homogeneous degree-s monomials, by a least-squares fit on sample points.
std::vector<std::pair<MultiIndex, double>> solid_harmonic_polynomial(int n, int s, int j);

/// Coefficients of L_k^beta(t) in powers of t, constant term first.
std::vector<double> laguerre_poly_coefficients(int k, double beta);

/// Coefficients of H_k(x) in powers of x, constant term first.
std::vector<double> hermite_poly_coefficients(int k);

struct SpanComparison {
    bool equal;
    int rank_a;
    int rank_b;
    int rank_joint;
};

/// Row spaces compared by singular-value ranks at tol * sigma_max, rows scaled
/// to unit norm first. Throws ContractError when (n, m) differ.
SpanComparison spans_equal(PolySpan const& a, PolySpan const& b, double tol = 1e-10);

/// Numerical rank at tol * sigma_max after scaling rows to unit norm.
int span_rank(Eigen::MatrixXd const& rows, double tol = 1e-10);

/// Largest relative least-squares residual of a row of `inner` against the row space of `outer`.
double inclusion_residual(PolySpan const& inner, PolySpan const& outer);

/// Copy of `span` with generator `row` replaced by x1^m.
PolySpan plant_monomial(PolySpan const& span, std::size_t row = 0);

/// (sum_k dim_harmonic(n, m - 2k), C(n - 1 + m, n - 1)).
std::pair<std::int64_t, std::int64_t> dimension_identity(int n, int m);

/// Generator matrix as CSV with a monomial-ordering header comment.
void write_span_csv(std::ostream& os, PolySpan const& span);

}  // namespace oscspectra
