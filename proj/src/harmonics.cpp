#include "oscspectra/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oscspectra/special_functions.hpp"

namespace oscspectra {

namespace {

void require_dimension(int n) {
    if (n < 1) throw std::invalid_argument("sphere dimension must satisfy n >= 1, got " + std::to_string(n));
}

void require_explicit(int n, int s) {
    require_dimension(n);
    if (n > 3) throw std::invalid_argument("explicit harmonic bases exist only for n <= 3, got n = " + std::to_string(n));
    if (s < 0) throw std::invalid_argument("harmonic degree must be nonnegative");
    if (n == 1 && s >= 2) throw std::domain_error("n = 1 carries no harmonics of degree " + std::to_string(s));
}

// Fully normalized associated Legendre functions Pbar_l^m(z), 0 <= m <= l <= lmax,
// packed at l(l+1)/2 + m, with int_S |Pbar_l^m cos(m phi)|^2 = 1/2 for m > 0.
// No Condon-Shortley phase.
void legendre_table(int lmax, double z, double sin_theta, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>((lmax + 1) * (lmax + 2) / 2), 0.0);
    auto at = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
    double diag = 0.5 / std::sqrt(std::numbers::pi);
    for (int m = 0; m <= lmax; ++m) {
        if (m > 0) diag *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_theta;
        out[at(m, m)] = diag;
        if (m + 1 <= lmax) out[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * z * diag;
        for (int l = m + 2; l <= lmax; ++l) {
            double const a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
            double const b = std::sqrt(((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                                       (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            out[at(l, m)] = a * (z * out[at(l - 1, m)] - b * out[at(l - 2, m)]);
        }
    }
}

// Degree-s block of the real basis at a unit vector.
void fill_degree(int n, int s, std::span<double const> u, std::span<double> out,
                 std::vector<double> const* legendre, std::vector<double>& scratch) {
    switch (n) {
        case 1:
            out[0] = (s == 0 ? 1.0 : u[0]) / std::numbers::sqrt2;
            return;
        case 2: {
            if (s == 0) {
                out[0] = 1.0 / std::sqrt(2.0 * std::numbers::pi);
                return;
            }
            double const theta = std::atan2(u[1], u[0]);
            double const norm = 1.0 / std::sqrt(std::numbers::pi);
            out[0] = norm * std::cos(s * theta);
            out[1] = norm * std::sin(s * theta);
            return;
        }
        case 3: {
            double const z = std::clamp(u[2], -1.0, 1.0);
            double const rho = std::hypot(u[0], u[1]);
            double const phi = std::atan2(u[1], u[0]);
            if (legendre == nullptr) {
                legendre_table(s, z, rho, scratch);
                legendre = &scratch;
            }
            auto const base = static_cast<std::size_t>(s * (s + 1) / 2);
            out[0] = (*legendre)[base];
            for (int m = 1; m <= s; ++m) {
                double const p = std::numbers::sqrt2 * (*legendre)[base + static_cast<std::size_t>(m)];
                out[static_cast<std::size_t>(2 * m - 1)] = p * std::cos(m * phi);
                out[static_cast<std::size_t>(2 * m)] = p * std::sin(m * phi);
            }
            return;
        }
        default:
            throw std::invalid_argument("explicit harmonic bases exist only for n <= 3");
    }
}

}  // namespace

SphereDescriptor::SphereDescriptor(int dim) : n(dim) { require_dimension(dim); }

double SphereDescriptor::surface_measure_total() const {
    if (n == 1) return 2.0;
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

int dim_harmonic(int n, int s) {
    require_dimension(n);
    if (s < 0) return 0;
    auto const top = binomial(s + n - 1, n - 1);
    auto const low = s >= 2 ? binomial(s - 2 + n - 1, n - 1) : 0;
    return static_cast<int>(top - low);
}

double zonal(int n, int s, double t) {
    require_dimension(n);
    if (s < 0) throw std::invalid_argument("zonal: negative degree");
    t = std::clamp(t, -1.0, 1.0);
    if (n == 1) {
        if (s >= 2) throw std::domain_error("n = 1 carries no harmonics of degree " + std::to_string(s));
        return s == 0 ? 0.5 : 0.5 * t;
    }
    if (n == 2) {
        if (s == 0) return 0.5 / std::numbers::pi;
        return std::cos(s * std::acos(t)) / std::numbers::pi;
    }
    double const lambda = 0.5 * (n - 2);
    double const omega = SphereDescriptor(n).surface_measure_total();
    return (2.0 * s + n - 2.0) / (n - 2.0) * gegenbauer(s, lambda, t) / omega;
}

HarmonicBasis::HarmonicBasis(int n, int s) : n_(n), s_(s), d_(0) {
    require_explicit(n, s);
    d_ = dim_harmonic(n, s);
}

void HarmonicBasis::evaluate_all(std::span<double const> unit, std::span<double> out) const {
    if (unit.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("harmonic evaluation: dimension mismatch");
    std::vector<double> scratch;
    fill_degree(n_, s_, unit, out.first(static_cast<std::size_t>(d_)), nullptr, scratch);
}

std::vector<double> HarmonicBasis::evaluate_all(std::span<double const> unit) const {
    std::vector<double> out(static_cast<std::size_t>(d_));
    evaluate_all(unit, out);
    return out;
}

double HarmonicBasis::evaluate(int j, std::span<double const> unit) const {
    if (j < 0 || j >= d_) throw std::out_of_range("harmonic basis index out of range");
    return evaluate_all(unit)[static_cast<std::size_t>(j)];
}

double HarmonicBasis::solid(int j, std::span<double const> x) const {
    if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("solid harmonic: dimension mismatch");
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    double const r = std::sqrt(r2);
    if (r == 0.0) {
        if (s_ != 0) return 0.0;
        std::vector<double> pole(static_cast<std::size_t>(n_), 0.0);
        pole[0] = 1.0;
        return evaluate(j, pole);
    }
    std::vector<double> unit(x.begin(), x.end());
    for (double& v : unit) v /= r;
    return std::pow(r, s_) * evaluate(j, unit);
}

PointEvaluator HarmonicBasis::evaluator(int j) const {
    HarmonicBasis self = *this;
    return [self, j](std::span<double const> u) { return self.evaluate(j, u); };
}

PointEvaluator HarmonicBasis::solid_evaluator(int j) const {
    HarmonicBasis self = *this;
    return [self, j](std::span<double const> x) { return self.solid(j, x); };
}

HarmonicBasis sph_basis(int n, int s) { return HarmonicBasis(n, s); }

double solid_harmonic(HarmonicBasis const& basis, int j, std::span<double const> x) { return basis.solid(j, x); }

HarmonicTable::HarmonicTable(int n, int s_max) : n_(n), s_max_(s_max) {
    require_explicit(n, 0);
    if (s_max < 0) throw std::invalid_argument("harmonic table: negative degree");
    offsets_.assign(static_cast<std::size_t>(s_max) + 2, 0);
    for (int s = 0; s <= s_max; ++s) offsets_[s + 1] = offsets_[s] + dim_harmonic(n, s);
}

void HarmonicTable::evaluate(std::span<double const> unit, std::span<double> out) const {
    if (unit.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("harmonic table: dimension mismatch");
    std::vector<double> legendre;
    std::vector<double> scratch;
    if (n_ == 3) {
        legendre_table(s_max_, std::clamp(unit[2], -1.0, 1.0), std::hypot(unit[0], unit[1]), legendre);
    }
    for (int s = 0; s <= s_max_; ++s) {
        int const d = offsets_[s + 1] - offsets_[s];
        if (d == 0) continue;
        fill_degree(n_, s, unit, out.subspan(static_cast<std::size_t>(offsets_[s]), static_cast<std::size_t>(d)),
                    n_ == 3 ? &legendre : nullptr, scratch);
    }
}

}  // namespace oscspectra
