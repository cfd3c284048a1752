#include "doctest.h"
#include "oscspectra/harmonics.hpp"
#include "oscspectra/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace oscspectra;

namespace {

std::vector<double> random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0;
    for (double& a : v) {
        a = g(rng);
        s += a * a;
    }
    for (double& a : v) a /= std::sqrt(s);
    return v;
}

double dot(std::vector<double> const& a, std::vector<double> const& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Pascal triangle, exact integers
long long pascal(int a, int b) {
    if (a < 0 || b < 0 || b > a) return 0;
    std::vector<std::vector<long long>> t(static_cast<std::size_t>(a) + 1);
    for (int i = 0; i <= a; ++i) {
        t[i].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t[a][b];
}

}  // namespace

TEST_CASE("sphere surface measure") {
    CHECK(SphereDescriptor(1).surface_measure_total() == 2.0);
    CHECK(SphereDescriptor(2).surface_measure_total() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
    CHECK(SphereDescriptor(3).surface_measure_total() == doctest::Approx(4 * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(SphereDescriptor(0), std::invalid_argument);
}

TEST_CASE("dim_harmonic") {
    CHECK(dim_harmonic(1, 0) == 1);
    CHECK(dim_harmonic(1, 1) == 1);
    CHECK(dim_harmonic(1, 5) == 0);
    for (int s = 0; s <= 30; ++s) CHECK(dim_harmonic(3, s) == 2 * s + 1);
    for (int n = 1; n <= 8; ++n) CHECK(dim_harmonic(n, 0) == 1);
    for (int n = 2; n <= 8; ++n)
        for (int s = 2; s <= 30; ++s) CHECK(dim_harmonic(n, s) == pascal(s + n - 1, n - 1) - pascal(s + n - 3, n - 1));
}

TEST_CASE("zonal constants at the pole") {
    for (int n = 1; n <= 7; ++n) {
        double const omega = SphereDescriptor(n).surface_measure_total();
        CHECK(zonal(n, 0, 0.3) == doctest::Approx(1.0 / omega).epsilon(1e-14));
        int const smax = n == 1 ? 1 : 10;
        for (int s = 0; s <= smax; ++s) CHECK(zonal(n, s, 1.0) == doctest::Approx(dim_harmonic(n, s) / omega).epsilon(1e-12));
    }
    CHECK_THROWS_AS(zonal(1, 2, 0.0), std::domain_error);
}

TEST_CASE("addition theorem against explicit bases") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3}) {
        int const smax = n == 1 ? 1 : 10;
        double worst = 0.0;
        for (int s = 0; s <= smax; ++s) {
            HarmonicBasis const basis = sph_basis(n, s);
            for (int pair = 0; pair < 100; ++pair) {
                auto const x = random_unit(n, rng), y = random_unit(n, rng);
                auto const yx = basis.evaluate_all(x), yy = basis.evaluate_all(y);
                double sum = 0.0;
                for (int j = 0; j < basis.size(); ++j) sum += yx[j] * yy[j];
                worst = std::max(worst, std::abs(sum - zonal(n, s, dot(x, y))));
            }
        }
        INFO("n = " << n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("zonal reproduces every basis element") {
    std::mt19937_64 rng(5);
    for (int n : {1, 2, 3}) {
        int const smax = n == 1 ? 1 : 8;
        QuadratureRule const rule = sphere_rule(n, default_sphere_degree(smax));
        double worst = 0.0;
        for (int s = 0; s <= smax; ++s) {
            HarmonicBasis const basis = sph_basis(n, s);
            auto const x = random_unit(n, rng);
            auto const at_x = basis.evaluate_all(x);
            for (int j = 0; j < basis.size(); ++j) {
                double const q = rule.integrate([&](auto y) {
                    double t = 0;
                    for (int i = 0; i < n; ++i) t += x[i] * y[i];
                    return basis.evaluate(j, y) * zonal(n, s, t);
                });
                worst = std::max(worst, std::abs(q - at_x[j]));
            }
        }
        INFO("n = " << n);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("bases are orthonormal and degrees are orthogonal") {
    for (int n : {1, 2, 3}) {
        int const smax = n == 1 ? 1 : 6;
        QuadratureRule const rule = sphere_rule(n, default_sphere_degree(smax));
        std::vector<HarmonicBasis> bases;
        for (int s = 0; s <= smax; ++s) bases.push_back(sph_basis(n, s));
        double worst = 0.0;
        for (auto const& a : bases)
            for (auto const& b : bases)
                for (int i = 0; i < a.size(); ++i)
                    for (int j = 0; j < b.size(); ++j) {
                        double const g = rule.integrate([&](auto u) { return a.evaluate(i, u) * b.evaluate(j, u); });
                        bool const same = a.degree() == b.degree() && i == j;
                        worst = std::max(worst, std::abs(g - (same ? 1.0 : 0.0)));
                    }
        INFO("n = " << n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("sph_basis examples") {
    HarmonicBasis const b10 = sph_basis(1, 0);
    CHECK(b10.evaluate(0, std::vector<double>{1.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(b10.evaluate(0, std::vector<double>{-1.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    HarmonicBasis const b11 = sph_basis(1, 1);
    CHECK(b11.evaluate(0, std::vector<double>{-1.0}) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));

    // 16-point trapezoid circle rule is exact for trig degree <= 15
    HarmonicBasis const b23 = sph_basis(2, 3);
    QuadratureRule const circle = sphere_rule(2, 15);
    CHECK(circle.size() == 16);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double const g = circle.integrate([&](auto u) { return b23.evaluate(i, u) * b23.evaluate(j, u); });
            CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
        }

    // degree-1 harmonics in 3-D span the coordinate functions
    HarmonicBasis const b31 = sph_basis(3, 1);
    CHECK(b31.size() == 3);
    std::mt19937_64 rng(3);
    Eigen::MatrixXd samples(6, 20);
    for (int c = 0; c < 20; ++c) {
        auto const u = random_unit(3, rng);
        auto const v = b31.evaluate_all(u);
        for (int j = 0; j < 3; ++j) samples(j, c) = v[j];
        for (int j = 0; j < 3; ++j) samples(3 + j, c) = u[j];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(samples);
    lu.setThreshold(1e-12);
    CHECK(lu.rank() == 3);

    CHECK_THROWS_AS(sph_basis(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(sph_basis(1, 2), std::domain_error);
}

TEST_CASE("solid harmonics are homogeneous and harmonic") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    CHECK(solid_harmonic(sph_basis(3, 0), 0, std::vector<double>{0.3, -2.0, 4.0}) ==
          doctest::Approx(0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(solid_harmonic(sph_basis(3, 2), 1, std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
    for (int n : {1, 2, 3}) {
        int const smax = n == 1 ? 1 : 6;
        for (int s = 0; s <= smax; ++s) {
            HarmonicBasis const basis = sph_basis(n, s);
            for (int j = 0; j < basis.size(); ++j) {
                std::vector<double> x(static_cast<std::size_t>(n));
                for (double& v : x) v = coord(rng);
                std::vector<double> x2 = x;
                for (double& v : x2) v *= 2.0;
                CHECK(basis.solid(j, x2) == doctest::Approx(std::pow(2.0, s) * basis.solid(j, x)).epsilon(1e-12));

                // fourth-order FD Laplacian
                double const h = 1e-2;
                double lap = 0.0;
                for (int d = 0; d < n; ++d) {
                    auto shifted = [&](double off) {
                        auto y = x;
                        y[d] += off;
                        return basis.solid(j, y);
                    };
                    lap += (-shifted(2 * h) + 16 * shifted(h) - 30 * shifted(0) + 16 * shifted(-h) - shifted(-2 * h)) / (12 * h * h);
                }
                INFO("n = " << n << " s = " << s << " j = " << j);
                CHECK(std::abs(lap) < 1e-6);
            }
        }
    }
}

TEST_CASE("harmonic table matches per-degree bases") {
    std::mt19937_64 rng(23);
    for (int n : {1, 2, 3}) {
        HarmonicTable const table(n, 9);
        std::vector<double> flat(static_cast<std::size_t>(table.total()));
        auto const u = random_unit(n, rng);
        table.evaluate(u, flat);
        for (int s = 0; s <= 9; ++s) {
            if (dim_harmonic(n, s) == 0) continue;
            auto const direct = sph_basis(n, s).evaluate_all(u);
            for (std::size_t j = 0; j < direct.size(); ++j) CHECK(flat[table.offset(s) + j] == doctest::Approx(direct[j]).epsilon(1e-14));
        }
    }
}
