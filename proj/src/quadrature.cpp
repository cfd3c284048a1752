#include "oscspectra/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "oscspectra/errors.hpp"
#include "oscspectra/format.hpp"
#include "oscspectra/special_functions.hpp"

namespace oscspectra {

std::string to_string(RuleDomain d) {
    switch (d) {
        case RuleDomain::gauss_hermite_line: return "gauss_hermite_line";
        case RuleDomain::radial: return "radial";
        case RuleDomain::sphere: return "sphere";
        case RuleDomain::tensor: return "tensor";
        case RuleDomain::interval: return "interval";
    }
    return "unknown";
}

namespace {

// Jacobi matrix of the orthonormal recurrence
//   off[k+1] p_{k+1} = (x - diag[k]) p_k - off[k] p_{k-1},   off has N entries, off[0] unused.
struct Jacobi {
    std::vector<double> diag;
    std::vector<double> off;
};

std::vector<double> golub_welsch_nodes(Jacobi const& J) {
    auto const N = static_cast<Eigen::Index>(J.diag.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd const>(J.diag.data(), N);
    Eigen::VectorXd sub(std::max<Eigen::Index>(N - 1, 0));
    for (Eigen::Index k = 1; k < N; ++k) sub[k - 1] = J.off[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("quadrature: tridiagonal eigensolve failed");
    std::vector<double> nodes(solver.eigenvalues().data(), solver.eigenvalues().data() + N);
    return nodes;
}

// One Newton step on the monic degree-N polynomial
//   pi_{k+1} = (x - diag[k]) pi_k - off[k]^2 pi_{k-1}.
// Only pi_N / pi_N' is used, so the running values are rescaled freely.
void newton_polish(std::vector<double>& nodes, Jacobi const& J) {
    std::size_t const N = J.diag.size();
    for (double& x : nodes) {
        double p_prev = 0.0, p = 1.0, d_prev = 0.0, d = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            double const back = k == 0 ? 0.0 : J.off[k] * J.off[k];
            double const p_next = (x - J.diag[k]) * p - back * p_prev;
            double const d_next = p + (x - J.diag[k]) * d - back * d_prev;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            double const mag = std::max(std::abs(p), std::abs(d));
            if (mag > 1e100) {
                p /= mag;
                p_prev /= mag;
                d /= mag;
                d_prev /= mag;
            }
        }
        if (d != 0.0) x -= p / d;
    }
}

}  // namespace

QuadratureRule gauss_hermite(int N) {
    if (N < 1) throw std::invalid_argument("gauss_hermite: N must be >= 1");
    Jacobi J{std::vector<double>(static_cast<std::size_t>(N), 0.0), std::vector<double>(static_cast<std::size_t>(N), 0.0)};
    for (int k = 1; k < N; ++k) J.off[static_cast<std::size_t>(k)] = std::sqrt(0.5 * k);
    std::vector<double> x = golub_welsch_nodes(J);
    newton_polish(x, J);
    for (int i = 0; i < N / 2; ++i) {
        double const a = 0.5 * (x[static_cast<std::size_t>(N - 1 - i)] - x[static_cast<std::size_t>(i)]);
        x[static_cast<std::size_t>(i)] = -a;
        x[static_cast<std::size_t>(N - 1 - i)] = a;
    }
    if (N % 2 == 1) x[static_cast<std::size_t>(N / 2)] = 0.0;

    QuadratureRule rule;
    rule.domain = RuleDomain::gauss_hermite_line;
    rule.dim = 1;
    rule.exactness_degree = 2 * N - 1;
    rule.nodes = x;
    for (double xi : x) {
        // Christoffel numbers through the Hermite functions: w e^{x^2} = 1 / sum h_k(x)^2
        double sum = 0.0;
        for (double h : hermite_fn_all(N - 1, xi)) sum += h * h;
        rule.measure_weights.push_back(1.0 / sum);
        rule.weights.push_back(std::exp(-xi * xi - std::log(sum)));
    }
    return rule;
}

QuadratureRule gauss_radial(int N, double beta) {
    if (N < 1) throw std::invalid_argument("gauss_radial: N must be >= 1");
    LaguerreOrder const order(beta);
    Jacobi J{std::vector<double>(static_cast<std::size_t>(N)), std::vector<double>(static_cast<std::size_t>(N), 0.0)};
    for (int k = 0; k < N; ++k) {
        J.diag[static_cast<std::size_t>(k)] = 2.0 * k + beta + 1.0;
        if (k > 0) J.off[static_cast<std::size_t>(k)] = std::sqrt(k * (k + beta));
    }
    std::vector<double> t = golub_welsch_nodes(J);
    newton_polish(t, J);

    QuadratureRule rule;
    rule.domain = RuleDomain::radial;
    rule.dim = 1;
    rule.beta = beta;
    rule.exactness_degree = 2 * N - 1;
    for (double ti : t) {
        double const r = std::sqrt(std::max(ti, 0.0));
        double sum = 0.0;
        for (double l : laguerre_fn_all(N - 1, order, r)) sum += l * l;
        rule.nodes.push_back(r);
        rule.measure_weights.push_back(1.0 / sum);
        rule.weights.push_back(std::exp(-r * r - std::log(sum)));
    }
    return rule;
}

QuadratureRule gauss_legendre(int N) {
    if (N < 1) throw std::invalid_argument("gauss_legendre: N must be >= 1");
    Jacobi J{std::vector<double>(static_cast<std::size_t>(N), 0.0), std::vector<double>(static_cast<std::size_t>(N), 0.0)};
    for (int k = 1; k < N; ++k) J.off[static_cast<std::size_t>(k)] = k / std::sqrt(4.0 * k * k - 1.0);
    std::vector<double> x = golub_welsch_nodes(J);
    newton_polish(x, J);

    QuadratureRule rule;
    rule.domain = RuleDomain::interval;
    rule.dim = 1;
    rule.exactness_degree = 2 * N - 1;
    rule.nodes = x;
    for (double xi : x) {
        // orthonormal Legendre p_k = sqrt((2k+1)/2) P_k
        double sum = 0.5;
        double prev = 1.0, cur = xi;
        for (int k = 1; k < N; ++k) {
            sum += (2.0 * k + 1.0) / 2.0 * cur * cur;
            double const next = ((2.0 * k + 1.0) * xi * cur - k * prev) / (k + 1.0);
            prev = cur;
            cur = next;
        }
        rule.weights.push_back(1.0 / sum);
        rule.measure_weights.push_back(1.0 / sum);
    }
    return rule;
}

QuadratureRule compact_radial_rule(int N, double beta, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("compact_radial_rule: radius must be positive");
    LaguerreOrder const order(beta);
    QuadratureRule const gl = gauss_legendre(N);
    QuadratureRule rule;
    rule.domain = RuleDomain::radial;
    rule.dim = 1;
    rule.beta = order.beta();
    rule.exactness_degree = 2 * N - 1;
    for (std::size_t i = 0; i < gl.size(); ++i) {
        double const r = 0.5 * R * (gl.nodes[i] + 1.0);
        double const w = 0.5 * R * gl.weights[i] * std::pow(r, 2.0 * beta + 1.0);
        rule.nodes.push_back(r);
        rule.weights.push_back(w);
        rule.measure_weights.push_back(w);
    }
    return rule;
}

QuadratureRule sphere_rule(int n, int degree) {
    if (degree < 0) throw std::invalid_argument("sphere_rule: negative degree");
    QuadratureRule rule;
    rule.domain = RuleDomain::sphere;
    rule.dim = n;
    auto push = [&rule](std::initializer_list<double> point, double w) {
        rule.nodes.insert(rule.nodes.end(), point);
        rule.weights.push_back(w);
        rule.measure_weights.push_back(w);
    };
    switch (n) {
        case 1:
            rule.exactness_degree = std::numeric_limits<int>::max();
            push({-1.0}, 1.0);
            push({1.0}, 1.0);
            break;
        case 2: {
            rule.exactness_degree = degree;
            int const M = degree + 1;
            double const w = 2.0 * std::numbers::pi / M;
            for (int i = 0; i < M; ++i) {
                double const th = 2.0 * std::numbers::pi * i / M;
                push({std::cos(th), std::sin(th)}, w);
            }
            break;
        }
        case 3: {
            rule.exactness_degree = degree;
            QuadratureRule const polar = gauss_legendre(degree / 2 + 1);
            int const M = degree + 1;
            double const w_az = 2.0 * std::numbers::pi / M;
            for (std::size_t i = 0; i < polar.size(); ++i) {
                double const z = polar.nodes[i];
                double const rho = std::sqrt(std::max(0.0, 1.0 - z * z));
                for (int a = 0; a < M; ++a) {
                    double const ph = 2.0 * std::numbers::pi * a / M;
                    push({rho * std::cos(ph), rho * std::sin(ph), z}, polar.weights[i] * w_az);
                }
            }
            break;
        }
        default:
            throw std::invalid_argument("sphere_rule: only n in {1,2,3} is supported");
    }
    return rule;
}

QuadratureRule tensor_rule(QuadratureRule const& line, int n) {
    if (line.domain != RuleDomain::gauss_hermite_line) throw ContractError("tensor_rule: line rule must be Gauss-Hermite");
    if (n < 1) throw std::invalid_argument("tensor_rule: n must be >= 1");
    std::size_t const N = line.size();
    double total = std::pow(static_cast<double>(N), n);
    if (total > static_cast<double>(kTensorNodeCap)) {
        throw ResourceError("tensor_rule: " + std::to_string(N) + "^" + std::to_string(n) + " nodes exceeds the 1e7 cap");
    }
    std::size_t const count = static_cast<std::size_t>(total);
    QuadratureRule rule;
    rule.domain = n == 1 ? RuleDomain::gauss_hermite_line : RuleDomain::tensor;
    rule.dim = n;
    rule.exactness_degree = line.exactness_degree;
    rule.nodes.resize(count * static_cast<std::size_t>(n));
    rule.weights.resize(count);
    rule.measure_weights.resize(count);
    std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        double w = 1.0, mw = 1.0;
        for (int d = 0; d < n; ++d) {
            std::size_t const i = digit[static_cast<std::size_t>(d)];
            rule.nodes[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)] = line.nodes[i];
            w *= line.weights[i];
            mw *= line.measure_weights[i];
        }
        rule.weights[idx] = w;
        rule.measure_weights[idx] = mw;
        for (int d = n - 1; d >= 0; --d) {
            if (++digit[static_cast<std::size_t>(d)] < N) break;
            digit[static_cast<std::size_t>(d)] = 0;
        }
    }
    return rule;
}

void write_rule_csv(std::ostream& os, QuadratureRule const& rule) {
    os << "# domain=" << to_string(rule.domain) << " dim=" << rule.dim << " beta=" << format_double(rule.beta)
       << " exactness_degree=" << rule.exactness_degree << " nodes=" << rule.size() << '\n';
    for (int d = 0; d < rule.dim; ++d) os << 'x' << (d + 1) << ',';
    os << "weight,measure_weight\n";
    for (std::size_t i = 0; i < rule.size(); ++i) {
        for (double v : rule.node(i)) os << format_double(v) << ',';
        os << format_double(rule.weights[i]) << ',' << format_double(rule.measure_weights[i]) << '\n';
    }
}

}  // namespace oscspectra
