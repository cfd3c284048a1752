#include "doctest.h"
#include "oracles.hpp"
#include "oscspectra/errors.hpp"
#include "oscspectra/harmonics.hpp"
#include "oscspectra/projections.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace oscspectra;

namespace {

double norm2(std::span<double const> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

std::vector<double> random_point(int n, std::mt19937_64& rng, double box = 2.5) {
    std::uniform_real_distribution<double> c(-box, box);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = c(rng);
    return x;
}

// (1 + x1 - 0.5 x1 x2 + 0.3 x3^2 + 0.2 x1^3) e^{-|x|^2/2}, truncated to the given dimension
ScalarField poly_gauss(int n) {
    return {n, [n](std::span<double const> x) {
                double const a = x[0];
                double const b = n > 1 ? x[1] : 0.7;
                double const c = n > 2 ? x[2] : -0.4;
                return (1 + a - 0.5 * a * b + 0.3 * c * c + 0.2 * a * a * a) * std::exp(-0.5 * norm2(x));
            }};
}

QuadratureRule tensor(int n, int nodes = 24) { return tensor_rule(gauss_hermite(nodes), n); }

}  // namespace

TEST_CASE("polar index validation") {
    PolarIndex const p(3, 2, 1, 3);
    CHECK(p.eigenvalue == 3 + 2 * (1 + 4));
    CHECK(p.level() == 5);
    CHECK_THROWS_AS(PolarIndex(3, 0, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(PolarIndex(1, 0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(PolarIndex(2, -1, 0, 1), std::invalid_argument);
    auto const idx = polar_indices(2, 4);
    // level m has m + 1 entries for n = 2
    CHECK(idx.size() == 1 + 2 + 3 + 4 + 5);
}

TEST_CASE("batched polar basis matches single evaluation") {
    std::mt19937_64 rng(13);
    for (int n = 1; n <= 3; ++n) {
        auto const idx = polar_indices(n, 7);
        for (int t = 0; t < 5; ++t) {
            auto const x = random_point(n, rng);
            auto const all = polar_basis_all(n, 7, x);
            REQUIRE(all.size() == idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) CHECK(all[i] == doctest::Approx(polar_basis_fn(n, idx[i], x)).epsilon(1e-13).scale(1.0));
        }
        auto const origin = polar_basis_all(n, 4, std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (std::size_t i = 0; i < origin.size(); ++i)
            if (idx[i].s > 0) CHECK(origin[i] == 0.0);
    }
}

TEST_CASE("hermite coefficients of basis functions and sums") {
    auto const rule = tensor(2);
    MultiIndex const g({2, 1}), d({0, 3});
    auto const c = hermite_coeffs(hermite_field(g), 5, rule);
    CHECK(c.size() == 21);
    for (auto const& [a, v] : c.hermite) CHECK(std::abs(v - (a == g ? 1.0 : 0.0)) < 1e-11);

    ScalarField const sum{2, [&](std::span<double const> x) { return hermite_fn_multi(g, x) + 2 * hermite_fn_multi(d, x); }};
    auto const c2 = hermite_coeffs(sum, 4, rule);
    CHECK(*c2.at(g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*c2.at(d) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(*c2.at(MultiIndex({1, 2}))) < 1e-11);
}

TEST_CASE("hermite coefficients of the Gaussian") {
    for (int n = 1; n <= 3; ++n) {
        ScalarField const gauss{n, [](std::span<double const> x) { return std::exp(-0.5 * norm2(x)); }};
        auto const c = hermite_coeffs(gauss, 5, tensor(n, 20));
        CHECK(*c.at(MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0))) ==
              doctest::Approx(std::pow(std::numbers::pi, n / 4.0)).epsilon(1e-13));
        for (auto const& [a, v] : c.hermite)
            if (a.length() % 2 == 1) CHECK(std::abs(v) < 1e-14);
    }
}

TEST_CASE("hermite coefficients reject the wrong rule") {
    ScalarField const f{2, [](std::span<double const>) { return 0.0; }};
    CHECK_THROWS_AS(hermite_coeffs(f, 2, sphere_rule(2, 4)), ContractError);
    CHECK_THROWS_AS(hermite_coeffs(f, 2, tensor(3, 4)), ContractError);
}

TEST_CASE("polar coefficients of basis functions") {
    for (int n = 1; n <= 3; ++n) {
        int const m_max = 6;
        for (auto const& target : polar_indices(n, m_max)) {
            if (target.level() % 3 != 1 && target.level() != 0) continue;
            auto const c = polar_coeffs(polar_basis_field(n, target), m_max);
            for (auto const& [p, v] : c.polar) {
                CAPTURE(n);
                CAPTURE(p.k);
                CAPTURE(p.s);
                CAPTURE(p.j);
                CHECK(std::abs(v - (p == target ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
}

TEST_CASE("polar coefficients need the matching radial rule") {
    ScalarField const f{2, [](std::span<double const>) { return 0.0; }};
    CHECK_THROWS_AS(polar_coeffs(f, 2, sphere_rule(2, 6), gauss_radial(20, 0.5)), ContractError);
    CHECK_THROWS_AS(polar_coeffs(f, 2, sphere_rule(3, 6), gauss_radial(20, 0.0)), ContractError);
    ScalarField const g{4, [](std::span<double const>) { return 0.0; }};
    CHECK_THROWS_AS(polar_coeffs(g, 2), std::invalid_argument);
}

TEST_CASE("even functions on the line have no odd polar coefficients") {
    ScalarField const f{1, [](std::span<double const> x) { return (1 + x[0] * x[0]) * std::exp(-0.7 * x[0] * x[0]) * std::cos(x[0]); }};
    auto const c = polar_coeffs(f, 9);
    double even = 0;
    for (auto const& [p, v] : c.polar) {
        if (p.s == 1) CHECK(std::abs(v) < 1e-15);
        else even = std::max(even, std::abs(v));
    }
    CHECK(even > 0.1);
}

TEST_CASE("factorized polar coefficients match full tensor quadrature") {
    for (int n = 1; n <= 3; ++n) {
        auto const f = poly_gauss(n);
        auto const c = polar_coeffs(f, 6);
        auto const rule = tensor(n, 28);
        for (auto const& [p, v] : c.polar) {
            auto const phi = polar_basis_field(n, p);
            double const direct = rule.integrate([&](std::span<double const> x) { return f(x) * phi(x); });
            CHECK(std::abs(direct - v) < 1e-9);
        }
    }
}

TEST_CASE("projection reproduces eigenfunctions and annihilates other levels") {
    MultiIndex const g({1, 2});
    auto const f = hermite_field(g);
    auto const c = hermite_coeffs(f, 5, tensor(2));
    auto const p3 = project(f, 3, BasisTag::hermite, c);
    auto const p2 = project(c, 2);
    auto const p4 = project(c, 4);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto const x = random_point(2, rng);
        CHECK(std::abs(p3(x) - f(x)) < 1e-10);
        CHECK(std::abs(p2(x)) < 1e-10);
        CHECK(std::abs(p4(x)) < 1e-10);
    }
    CHECK_THROWS_AS(project(c, 6), ContractError);
    CHECK_THROWS_AS(project(f, 2, BasisTag::polar, c), ContractError);
}

TEST_CASE("hermite and polar projections agree") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        auto const f = poly_gauss(n);
        auto const ch = hermite_coeffs(f, 6, tensor(n));
        auto const cp = polar_coeffs(f, 6);
        for (int m = 0; m <= 6; ++m) {
            auto const ph = project(ch, m);
            auto const pp = project(cp, m);
            for (int i = 0; i < 8; ++i) {
                auto const x = random_point(n, rng);
                CHECK(std::abs(ph(x) - pp(x)) < 1e-8);
            }
        }
    }
}

TEST_CASE("projection is idempotent and levels annihilate each other") {
    int const n = 2;
    auto const f = poly_gauss(n);
    auto const rule = tensor(n);
    auto const c = hermite_coeffs(f, 6, rule);
    std::mt19937_64 rng(3);
    for (int m = 0; m <= 4; ++m) {
        auto const pm = project(c, m);
        auto const again = hermite_coeffs(pm, 6, rule);
        auto const ppm = project(again, m);
        for (int i = 0; i < 6; ++i) {
            auto const x = random_point(n, rng);
            CHECK(std::abs(ppm(x) - pm(x)) < 2e-10);
        }
        for (int mp = 0; mp <= 6; ++mp) {
            if (mp == m) continue;
            auto const cross = project(again, mp);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(cross(random_point(n, rng))) < 2e-10);
        }
    }
}

TEST_CASE("one-dimensional projections follow the two-branch formula") {
    ScalarField const f{1, [](std::span<double const> x) { return (1 + x[0] - 0.4 * x[0] * x[0] * x[0]) * std::exp(-0.6 * x[0] * x[0]); }};
    auto const c = polar_coeffs(f, 11);
    std::mt19937_64 rng(5);
    for (int m = 0; m <= 11; ++m) {
        auto const one = project_one_dim(f, m);
        CHECK(one.s == m % 2);
        CHECK(one.k == m / 2);
        CHECK(one.eigenvalue == (m % 2 == 0 ? 1 + 4 * one.k : 3 + 4 * one.k));
        CHECK(std::abs(one.coefficient - *c.at(PolarIndex(1, one.k, one.s, 1))) < 1e-12);
        auto const generic = project(c, m);
        for (int i = 0; i < 10; ++i) {
            auto const x = random_point(1, rng, 3.0);
            CHECK(std::abs(one.field(x) - generic(x)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(project_one_dim(poly_gauss(2), 1), ContractError);
}

TEST_CASE("Hecke-Bochner on basis profiles") {
    for (int n = 1; n <= 3; ++n) {
        for (int M = 0; M <= (n == 1 ? 1 : 3); ++M) {
            std::vector<double> w(static_cast<std::size_t>(dim_harmonic(n, M)), 0.0);
            w[0] = 1.0;
            auto const Y = solid_harmonic_combination(n, M, w);
            LaguerreOrder const order(0.5 * n - 1 + M);
            for (int K = 0; K <= 3; ++K) {
                RadialFunction const f0 = [order, K](double r) { return laguerre_fn(K, order, r); };
                CHECK(hecke_bochner(f0, Y, K).coefficient == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(std::abs(hecke_bochner(f0, Y, (K + 1) % 4).coefficient) < 1e-12);
            }
        }
    }
}

TEST_CASE("Hecke-Bochner matches the generic polar projector") {
    std::mt19937_64 rng(17);
    RadialFunction const f0 = [](double r) { return (1 + 0.5 * r * r) * std::exp(-0.8 * r * r); };
    for (int n = 1; n <= 3; ++n) {
        for (int M = 0; M <= (n == 1 ? 1 : 3); ++M) {
            std::vector<double> w(static_cast<std::size_t>(dim_harmonic(n, M)));
            std::normal_distribution<double> g;
            for (double& v : w) v = g(rng);
            auto const Y = solid_harmonic_combination(n, M, w);
            auto const f = radial_times_harmonic(f0, Y);
            int const m_max = M + 6;
            auto const c = polar_coeffs(f, m_max);
            for (int m = 0; m <= m_max; ++m) {
                auto const pm = project(c, m);
                bool const on_pattern = m >= M && (m - M) % 2 == 0;
                auto const hb = on_pattern ? std::optional(hecke_bochner(f0, Y, (m - M) / 2)) : std::nullopt;
                for (int i = 0; i < 6; ++i) {
                    auto const x = random_point(n, rng, 2.0);
                    if (hb) CHECK(std::abs(hb->field(x) - pm(x)) < 1e-8);
                    else CHECK(std::abs(pm(x)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("Hecke-Bochner flags a divergent radial integral") {
    auto const Y = solid_harmonic_combination(2, 1, {1.0, 0.0});
    RadialFunction const grows = [](double r) { return std::exp(0.5 * r * r); };
    CHECK_THROWS_AS(hecke_bochner(grows, Y, 1), IntegrabilityError);
}

TEST_CASE("rotations commute with the projections") {
    auto const f = poly_gauss(3);
    CHECK(rotation_commutes(f, Eigen::MatrixXd::Identity(3, 3), 3) == 0.0);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 6; ++t) {
        auto const g = random_orthogonal(3, rng, t % 2 == 1);
        CHECK((g.transpose() * g - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(g.determinant() == doctest::Approx(t % 2 == 1 ? -1.0 : 1.0));
        for (int m = 0; m <= 6; m += 3) CHECK(rotation_commutes(f, g, m) < 1e-8);
    }

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
    bad(0, 1) = 1e-9;
    CHECK_THROWS_AS(rotation_commutes(f, bad, 2), ContractError);
}

TEST_CASE("quarter turn maps h_(1,0) to -h_(0,1)") {
    Eigen::MatrixXd g(2, 2);
    g << 0, 1, -1, 0;  // g(x, y) = (y, -x)
    auto const f = hermite_field(MultiIndex({1, 0}));
    auto const tf = rotate(f, g);
    auto const c = hermite_coeffs(tf, 1, tensor(2, 8));
    CHECK(*c.at(MultiIndex({0, 1})) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(*c.at(MultiIndex({1, 0}))) < 1e-14);
    auto const lhs = project(c, 1);
    auto const rhs = rotate(project(hermite_coeffs(f, 1, tensor(2, 8)), 1), g);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
        auto const x = random_point(2, rng);
        double const expected = hermite_fn_multi(MultiIndex({0, 1}), x);
        CHECK(std::abs(lhs(x) - expected) < 1e-13);
        CHECK(std::abs(rhs(x) - expected) < 1e-13);
    }
    CHECK(rotation_commutes(f, g, 1) < 1e-13);
}

TEST_CASE("finite Parseval and Bessel monotonicity") {
    // combination of polar basis functions
    int const n = 3;
    ScalarField const comb{n, [](std::span<double const> x) {
                               return 0.5 * polar_basis_fn(3, PolarIndex(3, 1, 2, 4), x) - 1.5 * polar_basis_fn(3, PolarIndex(3, 0, 1, 2), x) +
                                      0.25 * polar_basis_fn(3, PolarIndex(3, 2, 0, 1), x);
                           }};
    auto const sphere = sphere_rule(n, default_sphere_degree(8));
    auto const radial = gauss_radial(kDefaultRadialNodes, 0.5);
    double const norm_sq = l2_norm_sq_polar(comb, sphere, radial);
    CHECK(norm_sq == doctest::Approx(0.25 + 2.25 + 0.0625).epsilon(1e-12));
    CHECK(std::abs(parseval_check(comb, polar_coeffs(comb, 8, sphere, radial), norm_sq)) < 1e-10);

    // a Hermite function expanded in the polar basis
    auto const h = hermite_field(MultiIndex({2, 0, 1}));
    CHECK(std::abs(parseval_check(h, polar_coeffs(h, 3), 1.0)) < 1e-9);
    CHECK(parseval_check(h, polar_coeffs(h, 2), 1.0) == doctest::Approx(1.0).epsilon(1e-9));

    ScalarField const bump{2, [](std::span<double const> x) {
                               double const r2 = norm2(x);
                               return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
                           }};
    auto const s2 = sphere_rule(2, default_sphere_degree(12));
    auto const rad = compact_radial_rule(200, 0.0, 1.0);
    double const bn = l2_norm_sq_polar(bump, s2, rad);
    auto const cb = polar_coeffs(bump, 12, s2, rad);
    double prev = bn;
    for (int m = 0; m <= 12; ++m) {
        double const defect = bn - cb.sum_squares(m);
        CHECK(defect <= prev + 1e-15);
        CHECK(defect > -1e-12);
        prev = defect;
    }
}

TEST_CASE("inner products of radial times harmonic factorize") {
    int const n = 3;
    RadialFunction const f0 = [](double r) { return std::exp(-0.6 * r * r); };
    RadialFunction const g0 = [](double r) { return (1 + r * r) * std::exp(-0.9 * r * r); };
    auto const rule = tensor(n, 30);
    auto const Y1 = solid_harmonic_combination(3, 1, {0.3, -1.0, 0.5});
    auto const Y2 = solid_harmonic_combination(3, 2, {1.0, 0.2, 0.0, -0.7, 0.4});
    auto const Y2b = solid_harmonic_combination(3, 2, {0.5, 0.0, 1.0, 0.3, 0.0});
    auto const f = radial_times_harmonic(f0, Y1);
    auto const g = radial_times_harmonic(g0, Y2);
    auto const gb = radial_times_harmonic(g0, Y2b);
    auto const f2 = radial_times_harmonic(f0, Y2);
    auto const weighted = [&](ScalarField const& a, ScalarField const& b) {
        // the tensor rule carries e^{|x|^2}; both factors already decay
        return rule.integrate([&](std::span<double const> x) { return a(x) * b(x); });
    };
    CHECK(std::abs(weighted(f, g)) < 1e-10);

    // radial integral against r^{n-1+2s} times the sphere inner product of the harmonics
    auto const rad = gauss_radial(60, 0.5 * n - 1 + 2);
    double radial_part = 0;
    for (std::size_t i = 0; i < rad.size(); ++i) radial_part += rad.measure_weights[i] * f0(rad.nodes[i]) * g0(rad.nodes[i]);
    auto const sph = sphere_rule(3, 6);
    double sphere_part = 0;
    for (std::size_t q = 0; q < sph.size(); ++q) sphere_part += sph.weights[q] * Y2.eval(sph.node(q)) * Y2b.eval(sph.node(q));
    CHECK(std::abs(weighted(f2, gb) - radial_part * sphere_part) < 1e-9);
}

TEST_CASE("oscillator eigen-relation by finite differences") {
    std::mt19937_64 rng(29);
    for (int n = 1; n <= 3; ++n) {
        for (auto const& idx : polar_indices(n, 8)) {
            if (idx.j != 1) continue;
            auto const phi = polar_basis_field(n, idx);
            for (int i = 0; i < 20; ++i) {
                auto const x = random_point(n, rng, 2.0);
                double const residual = oscillator_fd(phi, x, 1e-2) - idx.eigenvalue * phi(x);
                CHECK(std::abs(residual) < 1e-6 * (1 + idx.eigenvalue));
            }
        }
    }
    // fourth-order convergence on one element
    auto const phi = polar_basis_field(2, PolarIndex(2, 2, 3, 2));
    std::vector<double> const x{0.7, -0.4};
    double const exact = PolarIndex(2, 2, 3, 2).eigenvalue * phi(x);
    double const e1 = std::abs(oscillator_fd(phi, x, 0.2) - exact);
    double const e2 = std::abs(oscillator_fd(phi, x, 0.1) - exact);
    double const e3 = std::abs(oscillator_fd(phi, x, 0.05) - exact);
    CHECK(std::log2(e1 / e2) > 3.5);
    CHECK(std::log2(e2 / e3) > 3.5);
}

TEST_CASE("decay probe") {
    ScalarField const bump{2, [](std::span<double const> x) {
                               double const r2 = norm2(x);
                               return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
                           }};
    auto const table = coefficient_decay_probe(bump, 40, 1.0);
    REQUIRE(table.rows.size() == 40);
    CHECK(table.rows.front().eigenvalue == 2.0);
    CHECK(table.rows.back().eigenvalue == 80.0);
    CHECK(table.fitted_rows >= 5);
    // values from adaptive scipy quadrature of the radial integral
    CHECK(table.rows[0].max_abs_coefficient == doctest::Approx(0.23192694272766562).epsilon(1e-12));
    CHECK(table.rows[28].max_abs_coefficient == doctest::Approx(0.016114882743350673).epsilon(1e-11));
    CHECK(table.rows[38].max_abs_coefficient == doctest::Approx(0.007033424210915296).epsilon(1e-11));
    CHECK(table.slope < 0.0);
    // radial bump: only even levels carry mass
    for (std::size_t m = 1; m < table.rows.size(); m += 2) CHECK(table.rows[m].max_abs_coefficient <= table.noise_floor);

    ScalarField const trunc{2, [](std::span<double const> x) {
                                double const r2 = norm2(x);
                                return r2 < 1 ? std::exp(-r2) : 0.0;
                            }};
    auto const slow = coefficient_decay_probe(trunc, 40, 1.0);
    CHECK(slow.slope > table.slope);

    ScalarField const zero{2, [](std::span<double const>) { return 0.0; }};
    auto const z = coefficient_decay_probe(zero, 6, 1.0);
    for (auto const& row : z.rows) CHECK(row.max_abs_coefficient == 0.0);
    CHECK(z.fitted_rows == 0);
    CHECK(std::isnan(z.slope));

    std::ostringstream os;
    write_decay_csv(os, table);
    CHECK(os.str().rfind("# slope=", 0) == 0);
}

TEST_CASE("coefficient table CSV") {
    auto const c = hermite_coeffs(hermite_field(MultiIndex({1, 0})), 1, tensor(2, 6));
    std::ostringstream os;
    write_coefficients_csv(os, c);
    CHECK(os.str().find("basis,index,eigenvalue,value\nhermite,0|0,2,") == 0);
    CHECK(os.str().find("hermite,1|0,4,") != std::string::npos);
}
