#pragma once

// Spectral projections of the oscillator -Delta + |x|^2 on L2(R^n).
//
// Two orthonormal eigenbases are supported:
//   hermite  h_alpha,              eigenvalue n + 2|alpha|
//   polar    phi_{k,s,j}(x) = ell_k^{n/2-1+s}(|x|) Y_{s,j}(x),
//                                  eigenvalue n + 2(s + 2k)
// Level m collects everything with eigenvalue n + 2m. Polar-basis routines
// need explicit spherical harmonics and therefore n <= 3.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oscspectra/field.hpp"
#include "oscspectra/quadrature.hpp"
#include "oscspectra/special_functions.hpp"

namespace oscspectra {

enum class BasisTag { hermite, polar };

std::string to_string(BasisTag tag);

/// (k, s, j) with 1 <= j <= d_s; for n = 1 only s in {0, 1}.
struct PolarIndex {
    int k = 0;
    int s = 0;
    int j = 1;
    double eigenvalue = 0.0;

    PolarIndex() = default;
    /// Validates the triple against n; throws std::invalid_argument when it names no basis element.
    PolarIndex(int n, int k, int s, int j);

    int level() const { return s + 2 * k; }
    friend bool operator==(PolarIndex const& a, PolarIndex const& b) { return a.k == b.k && a.s == b.s && a.j == b.j; }
};

struct SpectralCoefficients {
    BasisTag basis = BasisTag::hermite;
    int n = 1;
    int m_max = 0;
    std::vector<std::pair<MultiIndex, double>> hermite;
    std::vector<std::pair<PolarIndex, double>> polar;

    std::size_t size() const { return basis == BasisTag::hermite ? hermite.size() : polar.size(); }
    /// Sum of squared coefficients over levels <= through (all levels by default).
    double sum_squares(std::optional<int> through = std::nullopt) const;
    std::optional<double> at(MultiIndex const& alpha) const;
    std::optional<double> at(PolarIndex const& idx) const;
};

/// phi_{k,s,j}(x).
double polar_basis_fn(int n, PolarIndex const& idx, std::span<double const> x);
ScalarField polar_basis_field(int n, PolarIndex const& idx);
ScalarField hermite_field(MultiIndex const& alpha);

/// Every phi of level <= m_max at x, in polar_indices(n, m_max) order.
std::vector<double> polar_basis_all(int n, int m_max, std::span<double const> x);

/// Every polar index of level <= m_max, ordered by level, then k, then j.
std::vector<PolarIndex> polar_indices(int n, int m_max);

/// <f, h_alpha> for |alpha| <= m_max by the given Gauss-Hermite (tensor) rule.
SpectralCoefficients hermite_coeffs(ScalarField const& f, int m_max, QuadratureRule const& rule);

/// <f, phi_{k,s,j}> for s + 2k <= m_max. The sphere rule produces
/// F_{s,j}(r) = <f(r .), Y_{s,j}> at every radial node; the radial rule must
/// carry the measure r^{n-1} dr (beta = n/2 - 1) and the factor r^s is kept in
/// the integrand.
SpectralCoefficients polar_coeffs(ScalarField const& f, int m_max, QuadratureRule const& sphere,
                                  QuadratureRule const& radial);

/// Default rules: sphere degree 2 m_max + 2, 80-node radial rule.
SpectralCoefficients polar_coeffs(ScalarField const& f, int m_max);

/// Evaluator of the level-m projection built from coefficients.
/// Throws ContractError when coeffs do not cover level m or dimensions/tags disagree.
ScalarField project(ScalarField const& f, int m, BasisTag basis, SpectralCoefficients const& coeffs);
ScalarField project(SpectralCoefficients const& coeffs, int m);

/// Level-m projection in one dimension through the two-branch formula:
/// m = 2k uses phi_{k,0,1} = 2^{-1/2} ell_k^{-1/2}(|x|), m = 2k+1 uses
/// phi_{k,1,1} = 2^{-1/2} ell_k^{1/2}(|x|) x. Independent of HarmonicBasis.
struct OneDimProjection {
    int k;
    int s;
    double eigenvalue;
    double coefficient;
    ScalarField field;
};
OneDimProjection project_one_dim(ScalarField const& f, int m, int radial_nodes = kDefaultRadialNodes);

struct HeckeBochnerResult {
    double coefficient;  // <f0, ell_K^{n/2-1+M}> in L2(r^{n-1+2M} dr)
    ScalarField field;   // coefficient * ell_K(|x|) Y(x)
};

/// Closed-form projection of f0(|x|) Y(x) onto level M + 2K. Throws
/// IntegrabilityError when the radial integrand does not decay across the
/// last quadrature nodes.
HeckeBochnerResult hecke_bochner(RadialFunction const& f0, SolidHarmonic const& Y, int K,
                                 int radial_nodes = kDefaultRadialNodes);

/// Linear combination of the explicit degree-s basis (n <= 3) as a solid harmonic.
SolidHarmonic solid_harmonic_combination(int n, int s, std::vector<double> const& weights);

/// f0(|x|) Y(x) as a field.
ScalarField radial_times_harmonic(RadialFunction const& f0, SolidHarmonic const& Y);

/// T_g f(x) = f(g x).
ScalarField rotate(ScalarField const& f, Eigen::MatrixXd const& g);

/// Uniform sample of O(n) by QR of a Gaussian matrix with sign correction.
/// With reflection = true the result has determinant -1.
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng, bool reflection);

struct CommutationOptions {
    int line_nodes = 24;
    int samples = 30;
    double box = 2.5;
    std::uint64_t seed = 1;
};

/// max |Pi_m(T_g f) - T_g(Pi_m f)| over seeded sample points, Pi_m taken in the
/// Hermite basis. Throws ContractError unless g^T g = I within 1e-12.
double rotation_commutes(ScalarField const& f, Eigen::MatrixXd const& g, int m, CommutationOptions const& opts = {});

struct DecayRow {
    double eigenvalue;
    double max_abs_coefficient;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    double slope;            // least-squares slope of log max|c| vs log lambda
    std::size_t fitted_rows; // rows entering the fit
    double noise_floor;      // rows at or below this magnitude are left out of the fit
};

/// Coefficient decay of a field supported in the ball of radius `radius`.
/// Levels 0 .. levels-1; the slope is fitted over the upper half of the
/// eigenvalue range.
DecayTable coefficient_decay_probe(ScalarField const& phi, int levels, double radius, int radial_nodes = 400);

/// norm_sq - sum |c|^2.
double parseval_check(ScalarField const& f, SpectralCoefficients const& coeffs, double norm_sq);

/// ||f||^2 by a Gaussian-weighted rule (tensor) or a polar product of rules.
double l2_norm_sq(ScalarField const& f, QuadratureRule const& rule);
double l2_norm_sq_polar(ScalarField const& f, QuadratureRule const& sphere, QuadratureRule const& radial);

/// (-Delta + |x|^2) f at x by a fourth-order central stencil of step h per axis.
double oscillator_fd(ScalarField const& f, std::span<double const> x, double h);

/// CSV rows basis,index,eigenvalue,value; the index is a|b|c for Hermite and k/s/j for polar.
void write_coefficients_csv(std::ostream& os, SpectralCoefficients const& coeffs);
/// CSV rows eigenvalue,max_abs_coefficient with the fitted slope in a header comment.
void write_decay_csv(std::ostream& os, DecayTable const& table);

}  // namespace oscspectra
