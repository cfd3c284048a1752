#include "oscspectra/polyspaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "oscspectra/errors.hpp"
#include "oscspectra/format.hpp"
#include "oscspectra/harmonics.hpp"
#include "oscspectra/kernels.hpp"

namespace oscspectra {

namespace {

using Poly = std::map<std::vector<int>, double>;

void check_caps(int n, int m) {
    if (n < 1) throw std::invalid_argument("polyspaces: n must be >= 1");
    if (m < 0) throw std::invalid_argument("polyspaces: m must be >= 0");
    if (n > kPolyspaceMaxDim || m > kPolyspaceMaxDegree) {
        throw ResourceError("polyspaces: spans are capped at n <= " + std::to_string(kPolyspaceMaxDim) +
                            ", m <= " + std::to_string(kPolyspaceMaxDegree));
    }
}

Poly multiply(Poly const& a, Poly const& b) {
    Poly out;
    for (auto const& [ea, ca] : a)
        for (auto const& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t d = 0; d < e.size(); ++d) e[d] = ea[d] + eb[d];
            out[e] += ca * cb;
        }
    return out;
}

// (x1^2 + ... + xn^2)^i
Poly radius_power(int n, int i) {
    Poly out{{std::vector<int>(static_cast<std::size_t>(n), 0), 1.0}};
    Poly r2;
    for (int d = 0; d < n; ++d) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(d)] = 2;
        r2[e] = 1.0;
    }
    for (int t = 0; t < i; ++t) out = multiply(out, r2);
    return out;
}

PolySpan make_span(int n, int m, std::vector<std::string> labels, std::vector<Poly> const& polys) {
    PolySpan span;
    span.n = n;
    span.m = m;
    span.monomials = graded_monomials(n, m);
    span.labels = std::move(labels);
    std::map<std::vector<int>, Eigen::Index> column;
    for (std::size_t c = 0; c < span.monomials.size(); ++c) column[span.monomials[c].entries()] = static_cast<Eigen::Index>(c);
    span.generators = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(polys.size()), static_cast<Eigen::Index>(span.monomials.size()));
    for (std::size_t r = 0; r < polys.size(); ++r)
        for (auto const& [e, c] : polys[r]) span.generators(static_cast<Eigen::Index>(r), column.at(e)) += c;
    return span;
}

std::string index_label(MultiIndex const& a) {
    std::string s = "(";
    for (std::size_t d = 0; d < a.dim(); ++d) s += (d ? "|" : "") + std::to_string(a[d]);
    return s + ")";
}

std::string monomial_label(MultiIndex const& a) {
    std::string s;
    for (std::size_t d = 0; d < a.dim(); ++d) {
        if (a[d] == 0) continue;
        if (!s.empty()) s += '*';
        s += "x" + std::to_string(d + 1);
        if (a[d] > 1) s += "^" + std::to_string(a[d]);
    }
    return s.empty() ? "1" : s;
}

Eigen::MatrixXd unit_rows(Eigen::MatrixXd rows) {
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        double const nrm = rows.row(r).norm();
        if (nrm > 0) rows.row(r) /= nrm;
    }
    return rows;
}

}  // namespace

std::vector<MultiIndex> graded_monomials(int n, int m) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= m; ++d) {
        auto level = multi_indices(n, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<std::pair<MultiIndex, double>> PolySpan::row_terms(std::size_t r) const {
    std::vector<std::pair<MultiIndex, double>> out;
    for (std::size_t c = 0; c < monomials.size(); ++c) {
        double const v = generators(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != 0.0) out.emplace_back(monomials[c], v);
    }
    return out;
}

std::vector<double> hermite_poly_coefficients(int k) {
    if (k < 0) throw std::invalid_argument("hermite_poly_coefficients: k must be >= 0");
    std::vector<double> prev{1.0}, cur{1.0};
    if (k == 0) return cur;
    cur = {0.0, 2.0};
    for (int i = 1; i < k; ++i) {
        std::vector<double> next(static_cast<std::size_t>(i) + 2, 0.0);
        for (std::size_t p = 0; p < cur.size(); ++p) next[p + 1] += 2 * cur[p];
        for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= 2.0 * i * prev[p];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> laguerre_poly_coefficients(int k, double beta) {
    if (k < 0) throw std::invalid_argument("laguerre_poly_coefficients: k must be >= 0");
    LaguerreOrder const order(beta);
    std::vector<double> prev{1.0}, cur{1.0};
    if (k == 0) return cur;
    cur = {1.0 + order.beta(), -1.0};
    for (int i = 1; i < k; ++i) {
        std::vector<double> next(static_cast<std::size_t>(i) + 2, 0.0);
        for (std::size_t p = 0; p < cur.size(); ++p) {
            next[p] += (2 * i + 1 + beta) * cur[p];
            next[p + 1] -= cur[p];
        }
        for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= (i + beta) * prev[p];
        for (double& v : next) v /= (i + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<std::pair<MultiIndex, double>> solid_harmonic_polynomial(int n, int s, int j) {
    HarmonicBasis const basis = sph_basis(n, s);
    if (j < 0 || j >= basis.size()) throw std::invalid_argument("solid_harmonic_polynomial: j out of range");
    auto const mons = multi_indices(n, s);
    auto const cols = static_cast<Eigen::Index>(mons.size());
    Eigen::Index const rows = 4 * cols + 8;
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(100 * n + s));
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (double& v : x) v = coord(rng);
        for (Eigen::Index c = 0; c < cols; ++c) {
            double p = 1.0;
            for (int d = 0; d < n; ++d) p *= std::pow(x[static_cast<std::size_t>(d)], mons[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]);
            A(r, c) = p;
        }
        b(r) = basis.solid(j, x);
    }
    Eigen::VectorXd const coef = A.colPivHouseholderQr().solve(b);
    double const residual = (A * coef - b).norm() / std::max(1.0, b.norm());
    if (residual > 1e-10) throw std::runtime_error("solid_harmonic_polynomial: basis element is not a degree-s polynomial");
    double const scale = coef.cwiseAbs().maxCoeff();
    std::vector<std::pair<MultiIndex, double>> out;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (std::abs(coef(c)) > 1e-13 * scale) out.emplace_back(mons[static_cast<std::size_t>(c)], coef(c));
    return out;
}

PolySpan hermite_span(int n, int m) {
    check_caps(n, m);
    std::vector<std::vector<double>> h;
    for (int k = 0; k <= m; ++k) h.push_back(hermite_poly_coefficients(k));
    std::vector<std::string> labels;
    std::vector<Poly> polys;
    for (auto const& alpha : multi_indices(n, m)) {
        Poly p{{std::vector<int>(static_cast<std::size_t>(n), 0), 1.0}};
        for (int d = 0; d < n; ++d) {
            Poly factor;
            auto const& c = h[static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])];
            for (std::size_t q = 0; q < c.size(); ++q) {
                if (c[q] == 0.0) continue;
                std::vector<int> e(static_cast<std::size_t>(n), 0);
                e[static_cast<std::size_t>(d)] = static_cast<int>(q);
                factor[e] = c[q];
            }
            p = multiply(p, factor);
        }
        labels.push_back("H" + index_label(alpha));
        polys.push_back(std::move(p));
    }
    return make_span(n, m, std::move(labels), polys);
}

PolySpan laguerre_harmonic_span(int n, int m) {
    check_caps(n, m);
    std::vector<std::string> labels;
    std::vector<Poly> polys;
    for (int k = 0; k <= m / 2; ++k) {
        int const s = m - 2 * k;
        int const d = dim_harmonic(n, s);
        if (d == 0) continue;
        auto const lag = laguerre_poly_coefficients(k, 0.5 * n - 1.0 + s);
        Poly radial;
        for (std::size_t i = 0; i < lag.size(); ++i)
            for (auto const& [e, c] : radius_power(n, static_cast<int>(i))) radial[e] += lag[i] * c;
        for (int j = 0; j < d; ++j) {
            Poly y;
            for (auto const& [e, c] : solid_harmonic_polynomial(n, s, j)) y[e.entries()] = c;
            labels.push_back("L(" + std::to_string(k) + "/" + std::to_string(s) + "/" + std::to_string(j + 1) + ")");
            polys.push_back(multiply(radial, y));
        }
    }
    return make_span(n, m, std::move(labels), polys);
}

int span_rank(Eigen::MatrixXd const& rows, double tol) {
    if (rows.rows() == 0 || rows.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unit_rows(rows));
    auto const& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

SpanComparison spans_equal(PolySpan const& a, PolySpan const& b, double tol) {
    if (a.n != b.n || a.m != b.m || a.monomials != b.monomials) throw ContractError("spans_equal: spans use different monomial bases");
    Eigen::MatrixXd joint(a.generators.rows() + b.generators.rows(), a.generators.cols());
    joint << a.generators, b.generators;
    SpanComparison out{};
    out.rank_a = span_rank(a.generators, tol);
    out.rank_b = span_rank(b.generators, tol);
    out.rank_joint = span_rank(joint, tol);
    out.equal = out.rank_a == out.rank_b && out.rank_b == out.rank_joint;
    return out;
}

double inclusion_residual(PolySpan const& inner, PolySpan const& outer) {
    if (inner.monomials != outer.monomials) throw ContractError("inclusion_residual: spans use different monomial bases");
    Eigen::MatrixXd const basis = unit_rows(outer.generators).transpose();
    auto const qr = basis.colPivHouseholderQr();
    double worst = 0.0;
    for (Eigen::Index r = 0; r < inner.generators.rows(); ++r) {
        Eigen::VectorXd const v = inner.generators.row(r).transpose();
        double const nrm = v.norm();
        if (nrm == 0.0) continue;
        Eigen::VectorXd const c = qr.solve(v);
        worst = std::max(worst, (basis * c - v).norm() / nrm);
    }
    return worst;
}

PolySpan plant_monomial(PolySpan const& span, std::size_t row) {
    if (row >= span.rows()) throw std::invalid_argument("plant_monomial: row out of range");
    PolySpan out = span;
    auto const r = static_cast<Eigen::Index>(row);
    out.generators.row(r).setZero();
    std::vector<int> e(static_cast<std::size_t>(span.n), 0);
    e[0] = span.m;
    auto const it = std::find(span.monomials.begin(), span.monomials.end(), MultiIndex(e));
    out.generators(r, static_cast<Eigen::Index>(it - span.monomials.begin())) = 1.0;
    out.labels[row] = "x1^" + std::to_string(span.m);
    return out;
}

std::pair<std::int64_t, std::int64_t> dimension_identity(int n, int m) {
    if (n < 1 || m < 0) throw std::invalid_argument("dimension_identity: need n >= 1 and m >= 0");
    std::int64_t lhs = 0;
    for (int k = 0; k <= m / 2; ++k) lhs += dim_harmonic(n, m - 2 * k);
    auto const rhs = static_cast<std::int64_t>(binomial(n - 1 + m, n - 1));
    return {lhs, rhs};
}

void write_span_csv(std::ostream& os, PolySpan const& span) {
    os << "# n=" << span.n << " m=" << span.m
       << " monomial_order=graded-lex (ascending degree, descending exponent of x1, x2, ...)\n";
    os << "generator";
    for (auto const& mon : span.monomials) os << ',' << monomial_label(mon);
    os << '\n';
    for (std::size_t r = 0; r < span.rows(); ++r) {
        os << span.labels[r];
        for (Eigen::Index c = 0; c < span.generators.cols(); ++c) os << ',' << format_double(span.generators(static_cast<Eigen::Index>(r), c));
        os << '\n';
    }
}

}  // namespace oscspectra
