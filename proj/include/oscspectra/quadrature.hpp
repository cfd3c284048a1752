#pragma once

// Gauss-type rules. Every rule carries two weight vectors:
//
//   weights          integrate p * w against the rule's weight function w
//                    (e^{-x^2}, r^{2b+1} e^{-r^2}, surface measure, ...);
//   measure_weights  integrate an integrand that already contains the Gaussian
//                    against the bare measure (dx, r^{2b+1} dr, d sigma).
//
// Library code uses measure_weights: integrands are supplied with their
// Gaussian factor included and the rule divides it out.

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace oscspectra {

enum class RuleDomain { gauss_hermite_line, radial, sphere, tensor, interval };

std::string to_string(RuleDomain d);

struct QuadratureRule {
    RuleDomain domain = RuleDomain::interval;
    int dim = 1;
    double beta = 0.0;          // radial rules: measure r^{2 beta + 1} dr
    int exactness_degree = 0;
    std::vector<double> nodes;  // size() * dim, node-major
    std::vector<double> weights;
    std::vector<double> measure_weights;

    std::size_t size() const { return weights.size(); }
    std::span<double const> node(std::size_t i) const {
        return {nodes.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }

    /// sum_i measure_weights[i] f(node_i)
    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < size(); ++i) acc += measure_weights[i] * f(node(i));
        return acc;
    }

    /// sum_i weights[i] p(node_i)
    template <class F>
    double integrate_weighted(F&& p) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < size(); ++i) acc += weights[i] * p(node(i));
        return acc;
    }
};

/// N-point rule for p(x) e^{-x^2} on R, exact for deg p <= 2N - 1.
QuadratureRule gauss_hermite(int N);

/// Rule for int_0^inf g(r) r^{2 beta+1} e^{-r^2} dr via t = r^2 and generalized
/// Gauss-Laguerre of parameter beta. Exact when g is a polynomial in r^2 of degree <= 2N - 1.
QuadratureRule gauss_radial(int N, double beta);

/// N-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int N);

/// Gauss-Legendre rule on [0, R] carrying the measure r^{2 beta + 1} dr, for
/// integrands supported in the ball of radius R. No Gaussian weight.
QuadratureRule compact_radial_rule(int N, double beta, double R);

/// n = 1: the counting rule on {-1, 1}; n = 2: uniform circle rule with degree+1
/// points; n = 3: Gauss-Legendre in cos(theta) times uniform azimuth. Exact for
/// spherical polynomials of degree <= degree.
QuadratureRule sphere_rule(int n, int degree);

/// n-fold product of a Gauss-Hermite line rule. Throws ResourceError past 1e7 nodes.
QuadratureRule tensor_rule(QuadratureRule const& line, int n);

/// Default sizes used across the library.
inline constexpr int kDefaultRadialNodes = 80;
inline constexpr int kDefaultLineNodes = 64;
inline constexpr std::size_t kTensorNodeCap = 10'000'000;
inline int default_sphere_degree(int max_harmonic_degree) { return 2 * max_harmonic_degree + 2; }

/// CSV: comment header with domain metadata, then x1..xn,weight,measure_weight.
void write_rule_csv(std::ostream& os, QuadratureRule const& rule);

}  // namespace oscspectra
