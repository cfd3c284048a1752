#pragma once

// Spherical harmonics on the unit sphere of R^n.
//
// Degrees s index the spaces H_(s) of homogeneous harmonic polynomials. For
// n = 1 the "sphere" is the two-point set {-1, 1} with counting measure, and
// only s in {0, 1} carry a nonzero space.
//
// Zonal harmonics are available for every n; explicit orthonormal bases only
// for n <= 3. All harmonics here are real-valued, so conjugations act trivially.

#include <functional>
#include <span>
#include <vector>

namespace oscspectra {

struct SphereDescriptor {
    int n;
    explicit SphereDescriptor(int dim);
    /// Total surface measure omega_{n-1}: 2 pi^{n/2} / Gamma(n/2), or 2 for n = 1.
    double surface_measure_total() const;
};

/// d_s = dim P_s - dim P_{s-2}.
int dim_harmonic(int n, int s);

/// Z_s^{x'}(y') as a function of t = x'.y'. Throws std::domain_error for n = 1, s >= 2.
double zonal(int n, int s, double t);

using PointEvaluator = std::function<double(std::span<double const>)>;

/// Orthonormal basis of H_(s) restricted to the sphere (n <= 3).
///
/// Ordering of the d_s elements:
///   n = 1: the single element.
///   n = 2: s = 0 constant; otherwise cos(s theta), sin(s theta).
///   n = 3: m = 0, then (cos m phi, sin m phi) pairs for m = 1..s; associated
///          Legendre factors carry no Condon-Shortley sign.
class HarmonicBasis {
public:
    HarmonicBasis(int n, int s);

    int n() const { return n_; }
    int degree() const { return s_; }
    int size() const { return d_; }

    /// Value of element j (0-based) at a unit vector.
    double evaluate(int j, std::span<double const> unit) const;

    /// All d_s values at a unit vector, written into out[0..d_s).
    void evaluate_all(std::span<double const> unit, std::span<double> out) const;
    std::vector<double> evaluate_all(std::span<double const> unit) const;

    /// Homogeneous extension r^s * Y(x/r) of element j to R^n; x = 0 maps to
    /// the constant for s = 0 and to 0 otherwise.
    double solid(int j, std::span<double const> x) const;

    PointEvaluator evaluator(int j) const;
    PointEvaluator solid_evaluator(int j) const;

private:
    int n_;
    int s_;
    int d_;
};

/// Explicit basis. Throws std::invalid_argument for n > 3 (or n < 1), and
/// std::domain_error for n = 1, s >= 2.
HarmonicBasis sph_basis(int n, int s);

/// Extension of a basis element to R^n, Y(r x') = r^s Y(x').
double solid_harmonic(HarmonicBasis const& basis, int j, std::span<double const> x);

/// Every real spherical harmonic of degree <= s_max at one unit vector,
/// laid out degree by degree in HarmonicBasis order. n <= 3.
class HarmonicTable {
public:
    HarmonicTable(int n, int s_max);

    int n() const { return n_; }
    int max_degree() const { return s_max_; }
    /// Offset of degree s within the flat layout.
    int offset(int s) const { return offsets_[s]; }
    int total() const { return offsets_.back(); }

    void evaluate(std::span<double const> unit, std::span<double> out) const;

private:
    int n_;
    int s_max_;
    std::vector<int> offsets_;
};

}  // namespace oscspectra
