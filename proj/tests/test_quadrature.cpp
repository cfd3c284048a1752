#include "doctest.h"
#include "oracles.hpp"
#include "oscspectra/errors.hpp"
#include "oscspectra/harmonics.hpp"
#include "oscspectra/quadrature.hpp"
#include "oscspectra/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace oscspectra;

TEST_CASE("gauss_hermite basics") {
    double const sqrt_pi = std::sqrt(std::numbers::pi);
    for (int N : {1, 2, 3, 8, 33, 64, 128}) {
        QuadratureRule const rule = gauss_hermite(N);
        INFO("N = " << N);
        CHECK(rule.size() == static_cast<std::size_t>(N));
        CHECK(rule.exactness_degree == 2 * N - 1);
        CHECK(std::abs(rule.integrate_weighted([](auto) { return 1.0; }) - sqrt_pi) < 1e-14);
        if (N >= 2) CHECK(std::abs(rule.integrate_weighted([](auto x) { return x[0] * x[0]; }) - sqrt_pi / 2) < 1e-14);
        for (double w : rule.weights) CHECK(w > 0.0);
        for (int i = 0; i < N; ++i) CHECK(rule.nodes[i] == -rule.nodes[N - 1 - i]);
    }
    QuadratureRule const one = gauss_hermite(1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == doctest::Approx(sqrt_pi).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("gauss_hermite reproduces its moments") {
    for (int N : {4, 10, 20}) {
        QuadratureRule const rule = gauss_hermite(N);
        for (int p = 0; p <= 2 * N - 1; ++p) {
            double const q = rule.integrate_weighted([p](auto x) { return std::pow(x[0], p); });
            double const ref = oracle::hermite_moment(p);
            // odd moments vanish; measure them against the |x|^p moment
            double const scale = std::tgamma(0.5 * (p + 1));
            INFO("N = " << N << " p = " << p);
            CHECK(std::abs(q - ref) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("gauss_radial moments and Laguerre orthonormality") {
    for (double beta : {-0.5, 0.0, 0.5, 1.5, 3.0}) {
        for (int N : {5, 12, 25}) {
            QuadratureRule const rule = gauss_radial(N, beta);
            INFO("beta = " << beta << " N = " << N);
            CHECK(std::abs(rule.integrate_weighted([](auto) { return 1.0; }) - oracle::radial_moment(beta)) < 1e-13);
            for (int j = 0; j <= 2 * N - 1; ++j) {
                double const q = rule.integrate_weighted([j](auto r) { return std::pow(r[0] * r[0], j); });
                double const ref = oracle::radial_moment(beta + j);
                CHECK(std::abs(q - ref) <= 1e-12 * ref);
            }
            LaguerreOrder const o(beta);
            double const g00 = rule.integrate([&](auto r) { return std::pow(laguerre_fn(0, o, r[0]), 2); });
            double const g01 = rule.integrate([&](auto r) { return laguerre_fn(0, o, r[0]) * laguerre_fn(1, o, r[0]); });
            CHECK(std::abs(g00 - 1.0) < 1e-13);
            CHECK(std::abs(g01) < 1e-13);
        }
    }
    CHECK_THROWS_AS(gauss_radial(10, -1.0), std::invalid_argument);
}

TEST_CASE("gauss_legendre integrates polynomials") {
    QuadratureRule const rule = gauss_legendre(7);
    for (int p = 0; p <= 13; ++p) {
        double const q = rule.integrate([p](auto x) { return std::pow(x[0], p); });
        CHECK(q == doctest::Approx(p % 2 ? 0.0 : 2.0 / (p + 1)).epsilon(1e-14));
    }
}

TEST_CASE("compact radial rule carries its measure") {
    QuadratureRule const rule = compact_radial_rule(40, 0.5, 2.0);
    // int_0^2 r^2 dr = 8/3
    CHECK(rule.integrate([](auto) { return 1.0; }) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("sphere rules") {
    CHECK(sphere_rule(1, 0).integrate([](auto) { return 1.0; }) == 2.0);
    CHECK(std::abs(sphere_rule(2, 10).integrate([](auto) { return 1.0; }) - 2 * std::numbers::pi) < 1e-14);
    CHECK(std::abs(sphere_rule(3, 10).integrate([](auto) { return 1.0; }) - 4 * std::numbers::pi) < 1e-14);
    for (int n : {1, 2, 3}) {
        int const smax = n == 1 ? 1 : 6;
        QuadratureRule const rule = sphere_rule(n, default_sphere_degree(smax));
        for (int s = 1; s <= smax; ++s) {
            HarmonicBasis const b = sph_basis(n, s);
            for (int j = 0; j < b.size(); ++j) CHECK(std::abs(rule.integrate([&](auto u) { return b.evaluate(j, u); })) < 1e-12);
        }
    }
    HarmonicBasis const b34 = sph_basis(3, 4);
    QuadratureRule const rule = sphere_rule(3, 8);
    double worst = 0.0;
    for (int i = 0; i < b34.size(); ++i)
        for (int j = 0; j < b34.size(); ++j) {
            double const g = rule.integrate([&](auto u) { return b34.evaluate(i, u) * b34.evaluate(j, u); });
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(sphere_rule(4, 4), std::invalid_argument);
}

TEST_CASE("tensor rules") {
    QuadratureRule const line = gauss_hermite(32);
    QuadratureRule const plane = tensor_rule(line, 2);
    CHECK(plane.size() == 32u * 32u);
    std::vector<MultiIndex> idx;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b) idx.emplace_back(std::vector<int>{a, b});
    double worst = 0.0;
    for (auto const& a : idx)
        for (auto const& c : idx) {
            double const g = plane.integrate([&](auto p) { return hermite_fn_multi(a, p) * hermite_fn_multi(c, p); });
            worst = std::max(worst, std::abs(g - (a == c ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-12);
    for (int n = 1; n <= 3; ++n) {
        QuadratureRule const rule = tensor_rule(gauss_hermite(12), n);
        CHECK(std::abs(rule.integrate_weighted([](auto) { return 1.0; }) - std::pow(std::numbers::pi, 0.5 * n)) < 1e-13);
    }
    QuadratureRule const same = tensor_rule(line, 1);
    CHECK(same.nodes == line.nodes);
    CHECK(same.weights == line.weights);
    CHECK_THROWS_AS(tensor_rule(gauss_hermite(216), 3), ResourceError);
    CHECK_THROWS_AS(tensor_rule(gauss_legendre(4), 2), ContractError);
}

TEST_CASE("polar factorization of a separable integral") {
    // F(x) = Y(x)^2 q(|x|^2) e^{-|x|^2}; tensor integral == radial * sphere
    for (int n : {1, 2, 3}) {
        int const s = n == 1 ? 1 : 3;
        HarmonicBasis const b = sph_basis(n, s);
        auto q = [](double t) { return 1.0 + 0.5 * t - 0.1 * t * t; };
        QuadratureRule const tensor = tensor_rule(gauss_hermite(16), n);
        double const full = tensor.integrate([&](auto x) {
            double r2 = 0;
            for (double v : x) r2 += v * v;
            double const y = b.solid(0, x);
            return y * y * q(r2) * std::exp(-r2);
        });
        QuadratureRule const radial = gauss_radial(20, 0.5 * n - 1.0);
        double const rad = radial.integrate([&](auto r) { return std::pow(r[0], 2 * s) * q(r[0] * r[0]) * std::exp(-r[0] * r[0]); });
        QuadratureRule const sphere = sphere_rule(n, 2 * s + 2);
        double const ang = sphere.integrate([&](auto u) { return std::pow(b.evaluate(0, u), 2); });
        INFO("n = " << n);
        CHECK(std::abs(full - rad * ang) < 1e-10);
    }
}

TEST_CASE("rule CSV dump") {
    std::ostringstream os;
    write_rule_csv(os, sphere_rule(2, 3));
    std::string const text = os.str();
    CHECK(text.rfind("# domain=sphere dim=2", 0) == 0);
    CHECK(text.find("x1,x2,weight,measure_weight\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}
