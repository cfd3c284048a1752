#include "oscspectra/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oscspectra {

namespace {

constexpr double kRescaleAt = 1e150;

}  // namespace

LaguerreOrder::LaguerreOrder(double beta) : beta_(beta) {
    if (!(beta > -1.0)) throw std::invalid_argument("Laguerre order must exceed -1, got " + std::to_string(beta));
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)), length_(0) {
    if (entries_.empty()) throw std::invalid_argument("multi-index needs at least one entry");
    for (int a : entries_) {
        if (a < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
        length_ += a;
    }
}

double laguerre_poly(int k, LaguerreOrder order, double t) {
    if (k < 0) throw std::invalid_argument("laguerre_poly: negative degree");
    if (t < 0.0) throw std::domain_error("laguerre_poly: argument must be nonnegative");
    double const beta = order.beta();
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + beta - t;
    for (int i = 1; i < k; ++i) {
        double const next = ((2.0 * i + beta + 1.0 - t) * cur - (i + beta) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double ScaledValue::value() const {
    if (mantissa == 0.0) return 0.0;
    return mantissa * std::exp(log_scale);
}

namespace {

// Normalized recurrence q_{i+1} = ((2i+b+1-t) q_i - sqrt(i(i+b)) q_{i-1}) / sqrt((i+1)(i+b+1)),
// q_0 = 1; the true ell_i is q_i * exp(log_scale).
template <class Sink>
double laguerre_normalized_run(int kmax, double beta, double r, Sink&& sink) {
    double const t = r * r;
    double log_scale = 0.5 * (std::numbers::ln2 - std::lgamma(beta + 1.0)) - 0.5 * t;
    double prev = 0.0;
    double cur = 1.0;
    sink(0, cur, log_scale);
    for (int i = 0; i < kmax; ++i) {
        double const next = ((2.0 * i + beta + 1.0 - t) * cur - std::sqrt(i * (i + beta)) * prev) /
                            std::sqrt((i + 1.0) * (i + beta + 1.0));
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAt) {
            cur /= kRescaleAt;
            prev /= kRescaleAt;
            log_scale += std::log(kRescaleAt);
        }
        sink(i + 1, cur, log_scale);
    }
    return log_scale;
}

}  // namespace

ScaledValue laguerre_fn_scaled(int k, LaguerreOrder order, double r) {
    if (k < 0) throw std::invalid_argument("laguerre_fn: negative degree");
    ScaledValue out;
    laguerre_normalized_run(k, order.beta(), r, [&](int i, double q, double ls) {
        if (i == k) out = ScaledValue{q, ls};
    });
    return out;
}

double laguerre_fn(int k, LaguerreOrder order, double r) { return laguerre_fn_scaled(k, order, r).value(); }

std::vector<double> laguerre_fn_all(int kmax, LaguerreOrder order, double r) {
    if (kmax < 0) return {};
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    laguerre_normalized_run(kmax, order.beta(), r, [&](int i, double q, double ls) {
        out[static_cast<std::size_t>(i)] = ScaledValue{q, ls}.value();
    });
    return out;
}

std::vector<double> hermite_fn_all(int kmax, double x) {
    if (kmax < 0) return {};
    std::vector<double> h(static_cast<std::size_t>(kmax) + 1);
    h[0] = std::exp(-0.25 * std::log(std::numbers::pi) - 0.5 * x * x);
    if (kmax >= 1) h[1] = std::numbers::sqrt2 * x * h[0];
    for (int k = 1; k < kmax; ++k) {
        h[k + 1] = x * std::sqrt(2.0 / (k + 1.0)) * h[k] - std::sqrt(k / (k + 1.0)) * h[k - 1];
    }
    return h;
}

double hermite_fn(int k, double x) {
    if (k < 0) throw std::invalid_argument("hermite_fn: negative degree");
    double prev = 0.0;
    double cur = std::exp(-0.25 * std::log(std::numbers::pi) - 0.5 * x * x);
    for (int i = 0; i < k; ++i) {
        double const next = x * std::sqrt(2.0 / (i + 1.0)) * cur - std::sqrt(i / (i + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hermite_fn_multi(MultiIndex const& alpha, std::span<double const> x) {
    if (x.size() != alpha.dim()) {
        throw std::invalid_argument("hermite_fn_multi: point has dimension " + std::to_string(x.size()) +
                                    ", multi-index has " + std::to_string(alpha.dim()));
    }
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) prod *= hermite_fn(alpha[i], x[i]);
    return prod;
}

double gegenbauer(int s, double lambda, double t) {
    if (s < 0) throw std::invalid_argument("gegenbauer: negative degree");
    if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: lambda must be positive");
    if (std::abs(t) > 1.0 + 1e-12) throw std::domain_error("gegenbauer: |t| must not exceed 1");
    double prev = 1.0;
    if (s == 0) return prev;
    double cur = 2.0 * lambda * t;
    for (int k = 1; k < s; ++k) {
        double const next = (2.0 * (k + lambda) * t * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::uint64_t binomial(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    std::uint64_t out = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        // out * (a-b+i) / i stays integral at every step
        std::uint64_t const num = static_cast<std::uint64_t>(a - b + i);
        std::uint64_t const g = std::gcd(out, static_cast<std::uint64_t>(i));
        out = (out / g) * (num / (static_cast<std::uint64_t>(i) / g));
    }
    return out;
}

}  // namespace oscspectra
