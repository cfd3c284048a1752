#pragma once

// Three-term-recurrence evaluation of the one-dimensional building blocks:
// Laguerre polynomials and normalized Laguerre functions, L2-normalized
// Hermite functions, and Gegenbauer polynomials.

#include <cstdint>
#include <span>
#include <vector>

namespace oscspectra {

/// Order beta of a Laguerre family; construction enforces beta > -1.
class LaguerreOrder {
public:
    explicit LaguerreOrder(double beta);
    double beta() const { return beta_; }

private:
    double beta_;
};

/// alpha in N^n. Indexes tensor Hermite functions.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> entries);

    std::size_t dim() const { return entries_.size(); }
    int length() const { return length_; }
    int operator[](std::size_t i) const { return entries_[i]; }
    std::vector<int> const& entries() const { return entries_; }

    friend bool operator==(MultiIndex const&, MultiIndex const&) = default;
    friend auto operator<=>(MultiIndex const&, MultiIndex const&) = default;

private:
    std::vector<int> entries_;
    int length_;
};

/// L_k^beta(t) with L_k^beta(0) = C(k+beta, k).
double laguerre_poly(int k, LaguerreOrder order, double t);

/// A value represented as mantissa * exp(log_scale). Lets callers combine
/// several Laguerre factors before exponentiating.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;
    double value() const;
};

/// ell_k^beta(r) = (2 k! / Gamma(k+beta+1))^{1/2} L_k^beta(r^2) exp(-r^2/2),
/// orthonormal in L2((0,inf), r^{2beta+1} dr).
double laguerre_fn(int k, LaguerreOrder order, double r);

/// Same function with the Gaussian and normalization kept in log form.
ScaledValue laguerre_fn_scaled(int k, LaguerreOrder order, double r);

/// ell_0^beta(r) .. ell_kmax^beta(r) in one recurrence pass.
std::vector<double> laguerre_fn_all(int kmax, LaguerreOrder order, double r);

/// L2(R)-orthonormal Hermite function h_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}.
double hermite_fn(int k, double x);

/// h_0(x) .. h_kmax(x).
std::vector<double> hermite_fn_all(int kmax, double x);

/// Tensor product prod_i h_{alpha_i}(x_i). Throws std::invalid_argument on dimension mismatch.
double hermite_fn_multi(MultiIndex const& alpha, std::span<double const> x);

/// Gegenbauer C_s^lambda(t), generating function (1 - 2tz + z^2)^{-lambda}.
double gegenbauer(int s, double lambda, double t);

/// Binomial coefficient for integer arguments; zero outside 0 <= b <= a.
std::uint64_t binomial(std::int64_t a, std::int64_t b);

}  // namespace oscspectra
