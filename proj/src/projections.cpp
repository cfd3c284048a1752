#include "oscspectra/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "oscspectra/errors.hpp"
#include "oscspectra/format.hpp"
#include "oscspectra/harmonics.hpp"
#include "oscspectra/kernels.hpp"
#include "oscspectra/parallel.hpp"

namespace oscspectra {

namespace {

double norm_of(std::span<double const> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// unit vector of x, or the first axis when x = 0
std::vector<double> direction(std::span<double const> x, double r) {
    std::vector<double> u(x.begin(), x.end());
    if (r == 0.0) {
        std::fill(u.begin(), u.end(), 0.0);
        u[0] = 1.0;
    } else {
        for (double& v : u) v /= r;
    }
    return u;
}

void require_polar_dimension(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("polar-basis routines need 1 <= n <= 3, got " + std::to_string(n));
}

std::vector<double> evaluate_at_nodes(ScalarField const& f, QuadratureRule const& rule) {
    std::vector<double> values(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) { values[i] = f(rule.node(i)); });
    return values;
}

}  // namespace

std::string to_string(BasisTag tag) { return tag == BasisTag::hermite ? "hermite" : "polar"; }

PolarIndex::PolarIndex(int n, int k_, int s_, int j_) : k(k_), s(s_), j(j_), eigenvalue(n + 2.0 * (s_ + 2 * k_)) {
    if (n < 1) throw std::invalid_argument("polar index: n must be >= 1");
    if (k < 0 || s < 0) throw std::invalid_argument("polar index: k and s must be nonnegative");
    int const d = dim_harmonic(n, s);
    if (j < 1 || j > d) {
        throw std::invalid_argument("polar index: j = " + std::to_string(j) + " outside 1.." + std::to_string(d) +
                                    " for n = " + std::to_string(n) + ", s = " + std::to_string(s));
    }
}

double SpectralCoefficients::sum_squares(std::optional<int> through) const {
    double acc = 0.0;
    int const top = through.value_or(std::numeric_limits<int>::max());
    for (auto const& [a, c] : hermite)
        if (a.length() <= top) acc += c * c;
    for (auto const& [p, c] : polar)
        if (p.level() <= top) acc += c * c;
    return acc;
}

std::optional<double> SpectralCoefficients::at(MultiIndex const& alpha) const {
    for (auto const& [a, c] : hermite)
        if (a == alpha) return c;
    return std::nullopt;
}

std::optional<double> SpectralCoefficients::at(PolarIndex const& idx) const {
    for (auto const& [p, c] : polar)
        if (p == idx) return c;
    return std::nullopt;
}

double polar_basis_fn(int n, PolarIndex const& idx, std::span<double const> x) {
    require_polar_dimension(n);
    if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("polar_basis_fn: dimension mismatch");
    HarmonicBasis const basis(n, idx.s);
    return laguerre_fn(idx.k, LaguerreOrder(0.5 * n - 1.0 + idx.s), norm_of(x)) * basis.solid(idx.j - 1, x);
}

ScalarField polar_basis_field(int n, PolarIndex const& idx) {
    require_polar_dimension(n);
    return {n, [n, idx](std::span<double const> x) { return polar_basis_fn(n, idx, x); }};
}

ScalarField hermite_field(MultiIndex const& alpha) {
    return {static_cast<int>(alpha.dim()), [alpha](std::span<double const> x) { return hermite_fn_multi(alpha, x); }};
}

std::vector<double> polar_basis_all(int n, int m_max, std::span<double const> x) {
    require_polar_dimension(n);
    if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("polar_basis_all: dimension mismatch");
    HarmonicTable const table(n, m_max);
    double const r = norm_of(x);
    auto const u = direction(x, r);
    std::vector<double> y(static_cast<std::size_t>(table.total()));
    table.evaluate(u, y);
    std::vector<std::vector<double>> ell(static_cast<std::size_t>(m_max) + 1);
    for (int s = 0; s <= m_max; ++s) ell[static_cast<std::size_t>(s)] = laguerre_fn_all((m_max - s) / 2, LaguerreOrder(0.5 * n - 1.0 + s), r);
    std::vector<double> out;
    for (int m = 0; m <= m_max; ++m)
        for (int k = 0; k <= m / 2; ++k) {
            int const s = m - 2 * k;
            int const d = dim_harmonic(n, s);
            double const radial = ell[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] * (s == 0 ? 1.0 : std::pow(r, s));
            for (int j = 0; j < d; ++j) out.push_back(radial * y[static_cast<std::size_t>(table.offset(s) + j)]);
        }
    return out;
}

std::vector<PolarIndex> polar_indices(int n, int m_max) {
    std::vector<PolarIndex> out;
    for (int m = 0; m <= m_max; ++m)
        for (int k = 0; k <= m / 2; ++k) {
            int const s = m - 2 * k;
            int const d = dim_harmonic(n, s);
            for (int j = 1; j <= d; ++j) out.emplace_back(n, k, s, j);
        }
    return out;
}

SpectralCoefficients hermite_coeffs(ScalarField const& f, int m_max, QuadratureRule const& rule) {
    if (rule.domain != RuleDomain::tensor && rule.domain != RuleDomain::gauss_hermite_line) {
        throw ContractError("hermite_coeffs: needs a Gauss-Hermite tensor rule");
    }
    if (rule.dim != f.n) throw ContractError("hermite_coeffs: rule and field dimensions differ");
    if (m_max < 0) throw std::invalid_argument("hermite_coeffs: m_max must be >= 0");
    int const n = f.n;

    std::vector<MultiIndex> indices;
    for (int m = 0; m <= m_max; ++m) {
        auto level = multi_indices(n, m);
        indices.insert(indices.end(), level.begin(), level.end());
    }
    std::vector<double> const values = evaluate_at_nodes(f, rule);
    auto const stride = static_cast<std::size_t>(m_max) + 1;

    std::vector<double> const sums = chunked_accumulate(rule.size(), indices.size(), [&](std::size_t i, std::span<double> acc) {
        double const wf = rule.measure_weights[i] * values[i];
        if (wf == 0.0) return;
        auto const x = rule.node(i);
        std::vector<double> table(stride * static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            auto const h = hermite_fn_all(m_max, x[static_cast<std::size_t>(d)]);
            std::copy(h.begin(), h.end(), table.begin() + static_cast<std::ptrdiff_t>(stride * static_cast<std::size_t>(d)));
        }
        for (std::size_t a = 0; a < indices.size(); ++a) {
            double prod = wf;
            for (int d = 0; d < n; ++d) prod *= table[stride * static_cast<std::size_t>(d) + static_cast<std::size_t>(indices[a][d])];
            acc[a] += prod;
        }
    });

    SpectralCoefficients out;
    out.basis = BasisTag::hermite;
    out.n = n;
    out.m_max = m_max;
    out.hermite.reserve(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) out.hermite.emplace_back(indices[a], sums[a]);
    return out;
}

SpectralCoefficients polar_coeffs(ScalarField const& f, int m_max, QuadratureRule const& sphere,
                                  QuadratureRule const& radial) {
    int const n = f.n;
    require_polar_dimension(n);
    if (m_max < 0) throw std::invalid_argument("polar_coeffs: m_max must be >= 0");
    if (sphere.domain != RuleDomain::sphere || sphere.dim != n) throw ContractError("polar_coeffs: sphere rule must match n");
    if (radial.domain != RuleDomain::radial || std::abs(radial.beta - (0.5 * n - 1.0)) > 1e-12) {
        throw ContractError("polar_coeffs: radial rule must carry the measure r^{n-1} dr");
    }

    HarmonicTable const table(n, m_max);
    auto const T = static_cast<std::size_t>(table.total());
    std::size_t const Q = sphere.size();
    std::size_t const R = radial.size();

    // weighted harmonics w_q Y_t(x_q)
    std::vector<double> wy(Q * T);
    for (std::size_t q = 0; q < Q; ++q) {
        table.evaluate(sphere.node(q), std::span<double>(wy.data() + q * T, T));
        for (std::size_t t = 0; t < T; ++t) wy[q * T + t] *= sphere.weights[q];
    }

    // F_{s,j}(r_i) = <f(r_i .), Y_{s,j}>
    std::vector<double> F(R * T, 0.0);
    parallel_for(R, [&](std::size_t i) {
        double const r = radial.nodes[i];
        std::vector<double> point(static_cast<std::size_t>(n));
        for (std::size_t q = 0; q < Q; ++q) {
            auto const u = sphere.node(q);
            for (int d = 0; d < n; ++d) point[static_cast<std::size_t>(d)] = r * u[static_cast<std::size_t>(d)];
            double const v = f(point);
            if (v == 0.0) continue;
            for (std::size_t t = 0; t < T; ++t) F[i * T + t] += v * wy[q * T + t];
        }
    });

    std::vector<PolarIndex> const indices = polar_indices(n, m_max);
    std::map<std::tuple<int, int, int>, std::size_t> position;
    for (std::size_t p = 0; p < indices.size(); ++p) position[{indices[p].k, indices[p].s, indices[p].j}] = p;

    std::vector<double> sums(indices.size(), 0.0);
    for (int s = 0; s <= m_max; ++s) {
        int const d = dim_harmonic(n, s);
        if (d == 0) continue;
        int const kmax = (m_max - s) / 2;
        LaguerreOrder const order(0.5 * n - 1.0 + s);
        auto const off = static_cast<std::size_t>(table.offset(s));
        std::vector<std::size_t> slot(static_cast<std::size_t>((kmax + 1) * d));
        for (int k = 0; k <= kmax; ++k)
            for (int j = 0; j < d; ++j) slot[static_cast<std::size_t>(k * d + j)] = position.at({k, s, j + 1});
        for (std::size_t i = 0; i < R; ++i) {
            double const r = radial.nodes[i];
            auto const ell = laguerre_fn_all(kmax, order, r);
            double const w = radial.measure_weights[i] * std::pow(r, s);
            for (int k = 0; k <= kmax; ++k) {
                double const wl = w * ell[static_cast<std::size_t>(k)];
                for (int j = 0; j < d; ++j) sums[slot[static_cast<std::size_t>(k * d + j)]] += wl * F[i * T + off + static_cast<std::size_t>(j)];
            }
        }
    }

    SpectralCoefficients out;
    out.basis = BasisTag::polar;
    out.n = n;
    out.m_max = m_max;
    out.polar.reserve(indices.size());
    for (std::size_t p = 0; p < indices.size(); ++p) out.polar.emplace_back(indices[p], sums[p]);
    return out;
}

SpectralCoefficients polar_coeffs(ScalarField const& f, int m_max) {
    require_polar_dimension(f.n);
    return polar_coeffs(f, m_max, sphere_rule(f.n, default_sphere_degree(m_max)),
                        gauss_radial(kDefaultRadialNodes, 0.5 * f.n - 1.0));
}

ScalarField project(SpectralCoefficients const& coeffs, int m) {
    if (m < 0) throw std::invalid_argument("project: m must be >= 0");
    if (m > coeffs.m_max) {
        throw ContractError("project: coefficients are truncated at level " + std::to_string(coeffs.m_max) +
                            ", level " + std::to_string(m) + " requested");
    }
    int const n = coeffs.n;
    if (coeffs.basis == BasisTag::hermite) {
        auto terms = std::make_shared<std::vector<std::pair<MultiIndex, double>>>();
        for (auto const& [a, c] : coeffs.hermite)
            if (a.length() == m) terms->emplace_back(a, c);
        return {n, [terms, n, m](std::span<double const> x) {
                    std::vector<std::vector<double>> tables;
                    for (int d = 0; d < n; ++d) tables.push_back(hermite_fn_all(m, x[static_cast<std::size_t>(d)]));
                    double acc = 0.0;
                    for (auto const& [a, c] : *terms) {
                        double prod = c;
                        for (int d = 0; d < n; ++d) prod *= tables[static_cast<std::size_t>(d)][static_cast<std::size_t>(a[d])];
                        acc += prod;
                    }
                    return acc;
                }};
    }
    require_polar_dimension(n);
    // group by radial index k; degree s = m - 2k
    struct Group {
        int k;
        int s;
        std::vector<double> weights;  // by j
    };
    auto groups = std::make_shared<std::vector<Group>>();
    for (int k = 0; k <= m / 2; ++k) {
        int const s = m - 2 * k;
        int const d = dim_harmonic(n, s);
        if (d == 0) continue;
        Group g{k, s, std::vector<double>(static_cast<std::size_t>(d), 0.0)};
        for (auto const& [p, c] : coeffs.polar)
            if (p.k == k && p.s == s) g.weights[static_cast<std::size_t>(p.j - 1)] = c;
        groups->push_back(std::move(g));
    }
    return {n, [groups, n](std::span<double const> x) {
                double const r = norm_of(x);
                auto const u = direction(x, r);
                double acc = 0.0;
                for (auto const& g : *groups) {
                    if (r == 0.0 && g.s > 0) continue;
                    auto const y = HarmonicBasis(n, g.s).evaluate_all(u);
                    double ang = 0.0;
                    for (std::size_t j = 0; j < y.size(); ++j) ang += g.weights[j] * y[j];
                    acc += laguerre_fn(g.k, LaguerreOrder(0.5 * n - 1.0 + g.s), r) * std::pow(r, g.s) * ang;
                }
                return acc;
            }};
}

ScalarField project(ScalarField const& f, int m, BasisTag basis, SpectralCoefficients const& coeffs) {
    if (f.n != coeffs.n) throw ContractError("project: field and coefficient dimensions differ");
    if (basis != coeffs.basis) throw ContractError("project: coefficients belong to the " + to_string(coeffs.basis) + " basis");
    return project(coeffs, m);
}

OneDimProjection project_one_dim(ScalarField const& f, int m, int radial_nodes) {
    if (f.n != 1) throw ContractError("project_one_dim: field must live on R");
    if (m < 0) throw std::invalid_argument("project_one_dim: m must be >= 0");
    int const k = m / 2;
    int const s = m % 2;
    LaguerreOrder const order(s - 0.5);
    auto phi = [k, s, order](double x) {
        double const v = laguerre_fn(k, order, std::abs(x)) / std::numbers::sqrt2;
        return s == 0 ? v : v * x;
    };
    // int_R g dx = int_0^inf (g(r) + g(-r)) dr, radial measure r^0 dr
    QuadratureRule const rule = gauss_radial(radial_nodes, -0.5);
    double c = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double const r = rule.nodes[i];
        double const a = r, b = -r;
        c += rule.measure_weights[i] * (f(std::vector<double>{a}) * phi(a) + f(std::vector<double>{b}) * phi(b));
    }
    ScalarField field{1, [c, phi](std::span<double const> x) { return c * phi(x[0]); }};
    return {k, s, 1.0 + 2.0 * m, c, std::move(field)};
}

SolidHarmonic solid_harmonic_combination(int n, int s, std::vector<double> const& weights) {
    HarmonicBasis const basis = sph_basis(n, s);
    if (weights.size() != static_cast<std::size_t>(basis.size())) {
        throw std::invalid_argument("solid_harmonic_combination: need " + std::to_string(basis.size()) + " weights");
    }
    return {n, s, [basis, weights](std::span<double const> x) {
                double acc = 0.0;
                for (int j = 0; j < basis.size(); ++j) acc += weights[static_cast<std::size_t>(j)] * basis.solid(j, x);
                return acc;
            }};
}

ScalarField radial_times_harmonic(RadialFunction const& f0, SolidHarmonic const& Y) {
    return {Y.n, [f0, Y](std::span<double const> x) { return f0(norm_of(x)) * Y.eval(x); }};
}

HeckeBochnerResult hecke_bochner(RadialFunction const& f0, SolidHarmonic const& Y, int K, int radial_nodes) {
    if (K < 0) throw std::invalid_argument("hecke_bochner: K must be >= 0");
    if (Y.n < 1 || Y.degree < 0) throw std::invalid_argument("hecke_bochner: invalid solid harmonic");
    LaguerreOrder const order(0.5 * Y.n - 1.0 + Y.degree);
    QuadratureRule const rule = gauss_radial(radial_nodes, order.beta());
    std::vector<double> terms(rule.size());
    double total = 0.0, magnitude = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double const r = rule.nodes[i];
        terms[i] = rule.measure_weights[i] * f0(r) * laguerre_fn(K, order, r);
        total += terms[i];
        magnitude += std::abs(terms[i]);
    }
    // the outermost nodes must contribute nothing measurable
    double tail = 0.0;
    for (std::size_t i = rule.size() - std::min<std::size_t>(3, rule.size()); i < rule.size(); ++i) tail = std::max(tail, std::abs(terms[i]));
    if (!std::isfinite(total) || !std::isfinite(magnitude) || tail > 1e-8 * std::max(magnitude, 1e-300)) {
        throw IntegrabilityError("hecke_bochner: radial integrand does not decay at the quadrature tail");
    }
    int const K_ = K;
    ScalarField field{Y.n, [total, order, K_, Y](std::span<double const> x) {
                          return total * laguerre_fn(K_, order, norm_of(x)) * Y.eval(x);
                      }};
    return {total, std::move(field)};
}

ScalarField rotate(ScalarField const& f, Eigen::MatrixXd const& g) {
    if (g.rows() != f.n || g.cols() != f.n) throw ContractError("rotate: matrix must be n x n");
    return {f.n, [f, g](std::span<double const> x) {
                Eigen::Map<Eigen::VectorXd const> v(x.data(), static_cast<Eigen::Index>(x.size()));
                Eigen::VectorXd const gx = g * v;
                return f(std::span<double const>(gx.data(), static_cast<std::size_t>(gx.size())));
            }};
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng, bool reflection) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd const r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    bool const is_reflection = q.determinant() < 0;
    if (is_reflection != reflection) q.col(0) *= -1.0;
    return q;
}

double rotation_commutes(ScalarField const& f, Eigen::MatrixXd const& g, int m, CommutationOptions const& opts) {
    int const n = f.n;
    if (g.rows() != n || g.cols() != n) throw ContractError("rotation_commutes: g must be n x n");
    double const defect = (g.transpose() * g - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-12) throw ContractError("rotation_commutes: g is not orthogonal (|g^T g - I| = " + std::to_string(defect) + ")");

    QuadratureRule const rule = tensor_rule(gauss_hermite(opts.line_nodes), n);
    ScalarField const tf = rotate(f, g);
    ScalarField const proj_of_rotated = project(hermite_coeffs(tf, m, rule), m);
    ScalarField const rotated_proj = rotate(project(hermite_coeffs(f, m, rule), m), g);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> coord(-opts.box, opts.box);
    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < opts.samples; ++i) {
        for (double& v : x) v = coord(rng);
        worst = std::max(worst, std::abs(proj_of_rotated(x) - rotated_proj(x)));
    }
    return worst;
}

double l2_norm_sq(ScalarField const& f, QuadratureRule const& rule) {
    if (rule.dim != f.n) throw ContractError("l2_norm_sq: rule and field dimensions differ");
    std::vector<double> const values = evaluate_at_nodes(f, rule);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += rule.measure_weights[i] * values[i] * values[i];
    return acc;
}

double l2_norm_sq_polar(ScalarField const& f, QuadratureRule const& sphere, QuadratureRule const& radial) {
    int const n = f.n;
    if (sphere.dim != n) throw ContractError("l2_norm_sq_polar: sphere rule must match n");
    if (radial.domain != RuleDomain::radial || std::abs(radial.beta - (0.5 * n - 1.0)) > 1e-12) {
        throw ContractError("l2_norm_sq_polar: radial rule must carry the measure r^{n-1} dr");
    }
    double acc = 0.0;
    std::vector<double> point(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < radial.size(); ++i) {
        double shell = 0.0;
        for (std::size_t q = 0; q < sphere.size(); ++q) {
            auto const u = sphere.node(q);
            for (int d = 0; d < n; ++d) point[static_cast<std::size_t>(d)] = radial.nodes[i] * u[static_cast<std::size_t>(d)];
            double const v = f(point);
            shell += sphere.weights[q] * v * v;
        }
        acc += radial.measure_weights[i] * shell;
    }
    return acc;
}

double parseval_check(ScalarField const& f, SpectralCoefficients const& coeffs, double norm_sq) {
    if (f.n != coeffs.n) throw ContractError("parseval_check: field and coefficient dimensions differ");
    return norm_sq - coeffs.sum_squares();
}

DecayTable coefficient_decay_probe(ScalarField const& phi, int levels, double radius, int radial_nodes) {
    int const n = phi.n;
    require_polar_dimension(n);
    if (levels < 1) throw std::invalid_argument("coefficient_decay_probe: levels must be >= 1");
    int const m_max = levels - 1;
    QuadratureRule const sphere = sphere_rule(n, default_sphere_degree(m_max));
    QuadratureRule const radial = compact_radial_rule(radial_nodes, 0.5 * n - 1.0, radius);
    SpectralCoefficients const coeffs = polar_coeffs(phi, m_max, sphere, radial);
    double const norm = std::sqrt(l2_norm_sq_polar(phi, sphere, radial));

    DecayTable table;
    table.noise_floor = 1e-12 * norm;
    table.rows.resize(static_cast<std::size_t>(levels));
    for (int m = 0; m < levels; ++m) table.rows[static_cast<std::size_t>(m)] = {n + 2.0 * m, 0.0};
    for (auto const& [p, c] : coeffs.polar) {
        auto& row = table.rows[static_cast<std::size_t>(p.level())];
        row.max_abs_coefficient = std::max(row.max_abs_coefficient, std::abs(c));
    }

    // least squares over the upper half of the eigenvalue range
    double const lambda_mid = 0.5 * (table.rows.front().eigenvalue + table.rows.back().eigenvalue);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (auto const& row : table.rows) {
        if (row.eigenvalue < lambda_mid || row.max_abs_coefficient <= table.noise_floor) continue;
        double const lx = std::log(row.eigenvalue), ly = std::log(row.max_abs_coefficient);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    table.fitted_rows = count;
    double const denom = count * sxx - sx * sx;
    table.slope = count >= 2 && denom > 0 ? (count * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
    return table;
}

double oscillator_fd(ScalarField const& f, std::span<double const> x, double h) {
    std::vector<double> y(x.begin(), x.end());
    double const center = f(y);
    double lap = 0.0, r2 = 0.0;
    for (std::size_t d = 0; d < y.size(); ++d) {
        r2 += x[d] * x[d];
        auto at = [&](double off) {
            y[d] = x[d] + off;
            double const v = f(y);
            y[d] = x[d];
            return v;
        };
        lap += (-at(2 * h) + 16 * at(h) - 30 * center + 16 * at(-h) - at(-2 * h)) / (12 * h * h);
    }
    return -lap + r2 * center;
}

void write_coefficients_csv(std::ostream& os, SpectralCoefficients const& coeffs) {
    os << "basis,index,eigenvalue,value\n";
    for (auto const& [a, c] : coeffs.hermite) {
        os << "hermite,";
        for (std::size_t d = 0; d < a.dim(); ++d) os << (d ? "|" : "") << a[d];
        os << ',' << format_double(coeffs.n + 2.0 * a.length()) << ',' << format_double(c) << '\n';
    }
    for (auto const& [p, c] : coeffs.polar) {
        os << "polar," << p.k << '/' << p.s << '/' << p.j << ',' << format_double(p.eigenvalue) << ','
           << format_double(c) << '\n';
    }
}

void write_decay_csv(std::ostream& os, DecayTable const& table) {
    os << "# slope=" << format_double(table.slope) << " fitted_rows=" << table.fitted_rows
       << " noise_floor=" << format_double(table.noise_floor) << '\n';
    os << "eigenvalue,max_abs_coefficient\n";
    for (auto const& row : table.rows) os << format_double(row.eigenvalue) << ',' << format_double(row.max_abs_coefficient) << '\n';
}

}  // namespace oscspectra
