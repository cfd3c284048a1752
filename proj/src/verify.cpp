#include "oscspectra/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "oscspectra/harmonics.hpp"
#include "oscspectra/kernels.hpp"
#include "oscspectra/parallel.hpp"
#include "oscspectra/polyspaces.hpp"

namespace oscspectra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> uniform_point(int n, std::mt19937_64& rng, double box) {
    std::uniform_real_distribution<double> c(-box, box);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = c(rng);
    return x;
}

std::vector<double> unit_point(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> x(static_cast<std::size_t>(n));
    double r = 0;
    do {
        r = 0;
        for (double& v : x) {
            v = g(rng);
            r += v * v;
        }
    } while (r < 1e-12);
    r = std::sqrt(r);
    for (double& v : x) v /= r;
    return x;
}

double sq_norm(std::span<double const> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

// values of every eigenfunction of level <= m_max at x, and their eigenvalues
struct EigenFamily {
    int n;
    int m_max;
    std::vector<MultiIndex> hermite;  // used when n > 3
    std::vector<double> eigenvalues;

    EigenFamily(int n_, int m_max_) : n(n_), m_max(m_max_) {
        if (n <= 3) {
            for (auto const& p : polar_indices(n, m_max)) eigenvalues.push_back(p.eigenvalue);
        } else {
            for (int m = 0; m <= m_max; ++m)
                for (auto const& a : multi_indices(n, m)) {
                    hermite.push_back(a);
                    eigenvalues.push_back(n + 2.0 * m);
                }
        }
    }

    std::vector<double> values(std::span<double const> x) const {
        if (n <= 3) return polar_basis_all(n, m_max, x);
        std::vector<std::vector<double>> tables;
        for (int d = 0; d < n; ++d) tables.push_back(hermite_fn_all(m_max, x[static_cast<std::size_t>(d)]));
        std::vector<double> out;
        out.reserve(hermite.size());
        for (auto const& a : hermite) {
            double p = 1.0;
            for (int d = 0; d < n; ++d) p *= tables[static_cast<std::size_t>(d)][static_cast<std::size_t>(a[static_cast<std::size_t>(d)])];
            out.push_back(p);
        }
        return out;
    }
};

void add_row(std::vector<VerifyRow>& rows, std::string tag, std::string check, int n, int m, double value,
             double threshold, Relation rel) {
    rows.push_back({std::move(tag), std::move(check), n, m, value, threshold, rel, satisfies(value, rel, threshold)});
}

}  // namespace

ToleranceTable ToleranceTable::defaults() {
    ToleranceTable t;
    t.entries_ = {
        {"kernel_eq", "eq", 1e-8, "relative kernel difference |Phi - Phi~| / (1 + |Phi|)"},
        {"zonal", "zon", 1e-11, "addition theorem / zonal pole value"},
        {"span_svd", "eq", 1e-10, "relative singular-value threshold for span ranks"},
        {"span_inclusion", "eq", 1e-10, "least-squares residual of Laguerre-harmonic generators against the Hermite span"},
        {"gram", "bb", 1e-10, "entrywise polar-basis Gram defect"},
        {"fd_order", "bb", 3.5, "minimum observed finite-difference order of the eigen-relation"},
        {"parseval", "aa", 1e-9, "Parseval defect for band-limited functions"},
        {"bessel_slack", "aa", 0.0, "allowed increase of the Bessel defect under growing truncation"},
        {"rotation", "com", 1e-8, "rotation-commutation discrepancy"},
        {"hecke", "Th", 1e-8, "closed form vs generic polar projection"},
        {"hecke_zero", "Th", 1e-10, "off-pattern projection magnitude"},
        {"oone", "oone", 1e-12, "two-branch vs generic projection on the line"},
        {"est_slope", "est", -3.0, "maximum fitted log-log decay slope of the bump coefficients"},
    };
    return t;
}

double ToleranceTable::operator[](std::string const& id) const {
    for (auto const& e : entries_)
        if (e.id == id) return e.value;
    throw std::invalid_argument("unknown tolerance id '" + id + "'");
}

void ToleranceTable::set(std::string const& id, double value) {
    for (auto& e : entries_)
        if (e.id == id) {
            e.value = value;
            return;
        }
    throw std::invalid_argument("unknown tolerance id '" + id + "'");
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::below: return "<";
        case Relation::at_most: return "<=";
        case Relation::at_least: return ">=";
    }
    return "?";
}

bool satisfies(double value, Relation r, double threshold) {
    if (std::isnan(value)) return false;
    switch (r) {
        case Relation::below: return value < threshold;
        case Relation::at_most: return value <= threshold;
        case Relation::at_least: return value >= threshold;
    }
    return false;
}

bool all_pass(std::vector<VerifyRow> const& rows) {
    return std::all_of(rows.begin(), rows.end(), [](VerifyRow const& r) { return r.pass; });
}

double kernel_equality_defect(int n, int m, int pairs, std::mt19937_64& rng, double box) {
    double worst = 0;
    for (int i = 0; i < pairs; ++i) {
        KernelQuery q{n, m, uniform_point(n, rng, box), uniform_point(n, rng, box)};
        worst = std::max(worst, kernel_rel_diff(phi_direct(q).value, phi_polar(q).value));
    }
    return worst;
}

double addition_theorem_defect(int n, int s, int pairs, std::mt19937_64& rng) {
    HarmonicBasis const basis = sph_basis(n, s);
    double worst = 0;
    for (int i = 0; i < pairs; ++i) {
        auto const x = unit_point(n, rng), y = unit_point(n, rng);
        auto const yx = basis.evaluate_all(x), yy = basis.evaluate_all(y);
        double sum = 0, t = 0;
        for (std::size_t j = 0; j < yx.size(); ++j) sum += yx[j] * yy[j];
        for (int d = 0; d < n; ++d) t += x[static_cast<std::size_t>(d)] * y[static_cast<std::size_t>(d)];
        worst = std::max(worst, std::abs(sum - zonal(n, s, std::clamp(t, -1.0, 1.0))));
    }
    return worst;
}

double zonal_pole_defect(int n, int s) {
    double const expected = dim_harmonic(n, s) / SphereDescriptor(n).surface_measure_total();
    return std::abs(zonal(n, s, 1.0) - expected) / expected;
}

double polar_gram_defect(int n, int m_max, int line_nodes) {
    QuadratureRule const rule = tensor_rule(gauss_hermite(line_nodes), n);
    auto const count = static_cast<Eigen::Index>(polar_indices(n, m_max).size());
    Eigen::MatrixXd V(static_cast<Eigen::Index>(rule.size()), count);
    parallel_for(rule.size(), [&](std::size_t i) {
        auto const v = polar_basis_all(n, m_max, rule.node(i));
        double const w = std::sqrt(rule.measure_weights[i]);
        for (Eigen::Index c = 0; c < count; ++c) V(static_cast<Eigen::Index>(i), c) = w * v[static_cast<std::size_t>(c)];
    });
    Eigen::MatrixXd const G = V.transpose() * V;
    return (G - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
}

double fd_min_order(int n, int m_max, int points, std::mt19937_64& rng, double h) {
    EigenFamily const family(n, m_max);
    std::size_t const count = family.eigenvalues.size();
    std::vector<std::vector<double>> xs;
    for (int p = 0; p < points; ++p) xs.push_back(uniform_point(n, rng, 2.0));

    std::vector<std::vector<double>> err(3, std::vector<double>(count, 0.0));
    for (int level = 0; level < 3; ++level) {
        double const step = h / (1 << level);
        for (auto const& x : xs) {
            auto const center = family.values(x);
            std::vector<double> op(count, 0.0);
            std::vector<double> y = x;
            for (int d = 0; d < n; ++d) {
                auto const du = static_cast<std::size_t>(d);
                auto at = [&](double off) {
                    y[du] = x[du] + off;
                    auto v = family.values(y);
                    y[du] = x[du];
                    return v;
                };
                auto const p2 = at(2 * step), p1 = at(step), m1 = at(-step), m2 = at(-2 * step);
                for (std::size_t c = 0; c < count; ++c)
                    op[c] -= (-p2[c] + 16 * p1[c] - 30 * center[c] + 16 * m1[c] - m2[c]) / (12 * step * step);
            }
            double const r2 = sq_norm(x);
            for (std::size_t c = 0; c < count; ++c) {
                double const residual = op[c] + r2 * center[c] - family.eigenvalues[c] * center[c];
                err[static_cast<std::size_t>(level)][c] += residual * residual;
            }
        }
    }
    double worst = kInf;
    for (std::size_t c = 0; c < count; ++c) {
        double const o1 = std::log2(std::sqrt(err[0][c] / err[1][c]));
        double const o2 = std::log2(std::sqrt(err[1][c] / err[2][c]));
        worst = std::min({worst, o1, o2});
    }
    return worst;
}

HeckeDefects hecke_defects(int n, int M_max, int K_max, int m_max, int points, std::mt19937_64& rng) {
    RadialFunction const f0 = [](double r) { return (1 + 0.5 * r * r) * std::exp(-0.8 * r * r); };
    HeckeDefects out{0.0, 0.0};
    std::normal_distribution<double> gauss;
    int const top = std::min(M_max, n == 1 ? 1 : M_max);
    for (int M = 0; M <= std::min(top, m_max); ++M) {
        int const d = dim_harmonic(n, M);
        if (d == 0) continue;
        std::vector<double> w(static_cast<std::size_t>(d));
        for (double& v : w) v = gauss(rng);
        auto const Y = solid_harmonic_combination(n, M, w);
        auto const f = radial_times_harmonic(f0, Y);
        auto const coeffs = polar_coeffs(f, m_max);
        for (int m = 0; m <= m_max; ++m) {
            bool const on_pattern = m >= M && (m - M) % 2 == 0;
            int const K = (m - M) / 2;
            if (on_pattern && K > K_max) continue;
            auto const pm = project(coeffs, m);
            std::optional<HeckeBochnerResult> closed;
            if (on_pattern) closed = hecke_bochner(f0, Y, K);
            for (int p = 0; p < points; ++p) {
                auto const x = uniform_point(n, rng, 2.0);
                if (closed) out.closed_form = std::max(out.closed_form, std::abs(closed->field(x) - pm(x)));
                else out.off_pattern = std::max(out.off_pattern, std::abs(pm(x)));
            }
        }
    }
    return out;
}

double one_dim_defect(int m_max, int points, std::mt19937_64& rng) {
    ScalarField const f{1, [](std::span<double const> x) {
                            double const t = x[0];
                            return (1 + t - 0.4 * t * t * t + 0.3 * std::sin(2 * t)) * std::exp(-0.6 * t * t);
                        }};
    auto const indices = polar_indices(1, m_max);
    for (int m = 0; m <= m_max; ++m) {
        int carried = 0;
        for (auto const& p : indices) {
            if (p.level() != m) continue;
            ++carried;
            double const expected = m % 2 == 0 ? 1 + 4 * p.k : 3 + 4 * p.k;
            if (p.s != m % 2 || p.eigenvalue != expected) return kInf;
        }
        if (carried != 1) return kInf;
    }
    auto const coeffs = polar_coeffs(f, m_max);
    double worst = 0;
    for (int m = 0; m <= m_max; ++m) {
        auto const one = project_one_dim(f, m);
        auto const generic = project(coeffs, m);
        worst = std::max(worst, std::abs(one.coefficient - *coeffs.at(PolarIndex(1, one.k, one.s, 1))));
        for (int p = 0; p < points; ++p) {
            auto const x = uniform_point(1, rng, 3.0);
            worst = std::max(worst, std::abs(one.field(x) - generic(x)));
        }
    }
    return worst;
}

double rotation_defect(int n, int m_max, int band, int rotations, int reflections, std::mt19937_64& rng) {
    std::vector<std::pair<MultiIndex, double>> terms;
    std::normal_distribution<double> gauss;
    for (int m = 0; m <= band; ++m)
        for (auto const& a : multi_indices(n, m)) terms.emplace_back(a, gauss(rng));
    ScalarField const f{n, [terms, n, band](std::span<double const> x) {
                            std::vector<std::vector<double>> tables;
                            for (int d = 0; d < n; ++d) tables.push_back(hermite_fn_all(band, x[static_cast<std::size_t>(d)]));
                            double acc = 0;
                            for (auto const& [a, c] : terms) {
                                double p = c;
                                for (int d = 0; d < n; ++d) p *= tables[static_cast<std::size_t>(d)][static_cast<std::size_t>(a[static_cast<std::size_t>(d)])];
                                acc += p;
                            }
                            return acc;
                        }};
    CommutationOptions opts;
    opts.line_nodes = std::max(12, (band + m_max) / 2 + 4);
    opts.samples = 20;
    double worst = 0;
    for (int t = 0; t < rotations; ++t) {
        auto const g = random_orthogonal(n, rng, t < reflections);
        for (int m = 0; m <= m_max; ++m) {
            opts.seed = rng();
            worst = std::max(worst, rotation_commutes(f, g, m, opts));
        }
    }
    return worst;
}

ParsevalDefects parseval_defects(int n, int m_max, std::mt19937_64& rng) {
    ParsevalDefects out{};
    auto const sphere = sphere_rule(n, default_sphere_degree(m_max));
    auto const radial = gauss_radial(kDefaultRadialNodes, 0.5 * n - 1.0);

    int const band = std::min(m_max, 6);
    std::normal_distribution<double> gauss;
    std::vector<double> weights(polar_indices(n, band).size());
    for (double& w : weights) w = gauss(rng) / std::sqrt(static_cast<double>(weights.size()));
    ScalarField const comb{n, [n, band, weights](std::span<double const> x) {
                               auto const v = polar_basis_all(n, band, x);
                               double acc = 0;
                               for (std::size_t i = 0; i < v.size(); ++i) acc += weights[i] * v[i];
                               return acc;
                           }};
    out.band_limited = std::abs(parseval_check(comb, polar_coeffs(comb, m_max, sphere, radial), l2_norm_sq_polar(comb, sphere, radial)));

    auto const family = multi_indices(n, std::min(m_max, 4));
    auto const h = hermite_field(family[family.size() / 2]);
    out.cross_basis = std::abs(parseval_check(h, polar_coeffs(h, m_max, sphere, radial), l2_norm_sq_polar(h, sphere, radial)));

    ScalarField const bump{n, [](std::span<double const> x) {
                               double const r2 = sq_norm(x);
                               return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
                           }};
    auto const ball = compact_radial_rule(200, 0.5 * n - 1.0, 1.0);
    double const norm_sq = l2_norm_sq_polar(bump, sphere, ball);
    auto const cb = polar_coeffs(bump, m_max, sphere, ball);
    double prev = norm_sq;
    out.bessel_increase = -kInf;
    for (int m = 0; m <= m_max; ++m) {
        double const defect = parseval_check(bump, cb, norm_sq) + cb.sum_squares() - cb.sum_squares(m);
        out.bessel_increase = std::max(out.bessel_increase, defect - prev);
        prev = defect;
    }
    return out;
}

DecayContrast decay_contrast(int n, int levels) {
    ScalarField const bump{n, [](std::span<double const> x) {
                               double const r2 = sq_norm(x);
                               return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
                           }};
    ScalarField const trunc{n, [](std::span<double const> x) {
                                double const r2 = sq_norm(x);
                                return r2 < 1 ? std::exp(-r2) : 0.0;
                            }};
    return {coefficient_decay_probe(bump, levels, 1.0), coefficient_decay_probe(trunc, levels, 1.0)};
}

SpanDefects span_defects(int n, int m, double svd_tol) {
    auto const V = hermite_span(n, m);
    auto const W = laguerre_harmonic_span(n, m);
    auto const cmp = spans_equal(V, W, svd_tol);
    SpanDefects out{};
    out.rank_mismatch = std::abs(cmp.rank_a - cmp.rank_b) + std::abs(cmp.rank_joint - cmp.rank_a);
    out.inclusion = inclusion_residual(W, V);
    out.planted_rank_gain = -1;
    if (n >= 2 && m >= 2) {
        auto const planted = spans_equal(V, plant_monomial(W, 0), svd_tol);
        out.planted_rank_gain = planted.rank_joint - planted.rank_a;
    }
    return out;
}

std::vector<VerifyRow> run_verify(VerifyConfig const& cfg) {
    int const n = cfg.n, m_max = cfg.m_max;
    if (n < 1) throw std::invalid_argument("verify: n must be >= 1");
    if (m_max < 0) throw std::invalid_argument("verify: m-max must be >= 0");
    auto const& tol = cfg.tol;
    auto stream = [&](std::uint64_t salt) { return std::mt19937_64(cfg.seed * 0x9E3779B97F4A7C15ULL + salt); };
    std::vector<VerifyRow> rows;
    bool const polar = n <= 3;

    {
        auto rng = stream(1);
        double worst = 0;
        if (polar) {
            for (int s = 0; s <= (n == 1 ? std::min(m_max, 1) : m_max); ++s) worst = std::max(worst, addition_theorem_defect(n, s, 20, rng));
            add_row(rows, "zon", "addition theorem", n, m_max, worst, tol["zonal"], Relation::below);
        } else {
            for (int s = 0; s <= m_max; ++s) worst = std::max(worst, zonal_pole_defect(n, s));
            add_row(rows, "zon", "zonal pole value", n, m_max, worst, tol["zonal"], Relation::below);
        }
    }

    {
        auto rng = stream(2);
        for (int m = 0; m <= m_max; ++m)
            add_row(rows, "eq", "kernel equality", n, m, kernel_equality_defect(n, m, 50, rng), tol["kernel_eq"], Relation::below);
        std::int64_t worst = 0;
        for (int m = 0; m <= m_max; ++m) {
            auto const [lhs, rhs] = dimension_identity(n, m);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        add_row(rows, "eq", "dimension identity", n, m_max, static_cast<double>(worst), 0.0, Relation::at_most);
    }

    if (polar) {
        int const top = std::min(m_max, kPolyspaceMaxDegree);
        int mismatch = 0, gain = std::numeric_limits<int>::max();
        double inclusion = 0;
        for (int m = 0; m <= top; ++m) {
            auto const d = span_defects(n, m, tol["span_svd"]);
            mismatch = std::max(mismatch, d.rank_mismatch);
            inclusion = std::max(inclusion, d.inclusion);
            if (d.planted_rank_gain >= 0) gain = std::min(gain, d.planted_rank_gain);
        }
        add_row(rows, "eq", "span rank mismatch", n, top, mismatch, 0.0, Relation::at_most);
        add_row(rows, "eq", "span inclusion residual", n, top, inclusion, tol["span_inclusion"], Relation::below);
        if (gain != std::numeric_limits<int>::max()) add_row(rows, "eq", "planted monomial rank gain", n, top, gain, 1.0, Relation::at_least);
    }

    {
        auto rng = stream(3);
        int const top = std::min(m_max, 8);
        if (polar) add_row(rows, "bb", "polar Gram", n, top, polar_gram_defect(n, top), tol["gram"], Relation::below);
        add_row(rows, "bb", polar ? "finite-difference order (polar)" : "finite-difference order (Hermite)", n, top,
                fd_min_order(n, top, 20, rng, 0.1), tol["fd_order"], Relation::at_least);
    }

    if (polar) {
        auto rng = stream(4);
        auto const p = parseval_defects(n, m_max, rng);
        add_row(rows, "aa", "band-limited Parseval", n, m_max, p.band_limited, tol["parseval"], Relation::below);
        add_row(rows, "aa", "cross-basis Parseval", n, m_max, p.cross_basis, tol["parseval"], Relation::below);
        add_row(rows, "aa", "Bessel defect increase (bump)", n, m_max, p.bessel_increase, tol["bessel_slack"], Relation::at_most);
    }

    if (polar) {
        auto rng = stream(5);
        int const top = std::min(m_max, 6);
        add_row(rows, "com", "rotation commutation", n, top, rotation_defect(n, top, top, 10, 3, rng), tol["rotation"], Relation::below);
    }

    if (polar) {
        auto rng = stream(6);
        auto const h = hecke_defects(n, 4, 3, m_max, 20, rng);
        add_row(rows, "Th", "closed form vs polar projection", n, m_max, h.closed_form, tol["hecke"], Relation::below);
        add_row(rows, "Th", "off-pattern levels vanish", n, m_max, h.off_pattern, tol["hecke_zero"], Relation::below);
    }

    if (n == 1) {
        auto rng = stream(7);
        add_row(rows, "oone", "two-branch reduction", n, m_max, one_dim_defect(m_max, 20, rng), tol["oone"], Relation::below);
    }

    if (n == 2) {
        auto const dc = decay_contrast(n, 40);
        add_row(rows, "est", "bump decay slope (lambda <= 80)", n, 39, dc.bump.slope, tol["est_slope"], Relation::at_most);
        add_row(rows, "est", "bump slope minus truncated-Gaussian slope", n, 39, dc.bump.slope - dc.truncated.slope, 0.0,
                Relation::below);
    }
    return rows;
}

}  // namespace oscspectra
