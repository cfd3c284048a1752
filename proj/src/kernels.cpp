#include "oscspectra/kernels.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "oscspectra/errors.hpp"
#include "oscspectra/harmonics.hpp"

namespace oscspectra {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;
constexpr int kLogSpaceAbove = 30;

void check_query(KernelQuery const& q) {
    if (q.n < 1) throw std::invalid_argument("kernel query: n must be >= 1");
    if (q.m < 0) throw std::invalid_argument("kernel query: m must be >= 0");
    if (q.x.size() != static_cast<std::size_t>(q.n) || q.y.size() != static_cast<std::size_t>(q.n)) {
        throw std::invalid_argument("kernel query: points must have dimension n");
    }
    for (double v : q.x) if (!std::isfinite(v)) throw std::invalid_argument("kernel query: x is not finite");
    for (double v : q.y) if (!std::isfinite(v)) throw std::invalid_argument("kernel query: y is not finite");
}

void check_cap(int n, int m) {
    if (multi_index_count(n, m) > kEnumerationCap) {
        throw ResourceError("multi-index enumeration for n = " + std::to_string(n) + ", m = " + std::to_string(m) +
                            " exceeds the 1e7 cap");
    }
}

// Sums prod_d hx[d][a_d] * hy[d][a_d] over |a| = remaining, axes d.. n-1.
double direct_sum(std::vector<std::vector<double>> const& prod_tables, std::size_t axis, int remaining,
                  double partial, std::int64_t& terms) {
    if (axis + 1 == prod_tables.size()) {
        ++terms;
        return partial * prod_tables[axis][static_cast<std::size_t>(remaining)];
    }
    double acc = 0.0;
    for (int a = remaining; a >= 0; --a) {
        acc += direct_sum(prod_tables, axis + 1, remaining - a, partial * prod_tables[axis][static_cast<std::size_t>(a)],
                          terms);
    }
    return acc;
}

double norm(std::span<double const> v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

}  // namespace

std::string to_string(KernelMethod method) { return method == KernelMethod::direct ? "direct" : "polar"; }

std::uint64_t multi_index_count(int n, int m) {
    if (n < 1 || m < 0) return 0;
    return binomial(m + n - 1, n - 1);
}

std::vector<MultiIndex> multi_indices(int n, int m) {
    if (n < 1) throw std::invalid_argument("multi_indices: n must be >= 1");
    if (m < 0) throw std::invalid_argument("multi_indices: m must be >= 0");
    check_cap(n, m);
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(multi_index_count(n, m)));
    std::vector<int> current(static_cast<std::size_t>(n), 0);
    auto recurse = [&](auto&& self, std::size_t axis, int remaining) -> void {
        if (axis + 1 == current.size()) {
            current[axis] = remaining;
            out.emplace_back(current);
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            current[axis] = a;
            self(self, axis + 1, remaining - a);
        }
    };
    recurse(recurse, 0, m);
    return out;
}

KernelResult phi_direct(KernelQuery const& q) {
    check_query(q);
    check_cap(q.n, q.m);
    std::vector<std::vector<double>> tables(static_cast<std::size_t>(q.n));
    for (std::size_t d = 0; d < tables.size(); ++d) {
        auto const hx = hermite_fn_all(q.m, q.x[d]);
        auto const hy = hermite_fn_all(q.m, q.y[d]);
        tables[d].resize(hx.size());
        for (std::size_t k = 0; k < hx.size(); ++k) tables[d][k] = hx[k] * hy[k];
    }
    std::int64_t terms = 0;
    double const value = direct_sum(tables, 0, q.m, 1.0, terms);
    return {value, terms, KernelMethod::direct};
}

KernelResult phi_polar(KernelQuery const& q) {
    check_query(q);
    int const n = q.n;
    int const m = q.m;
    double const r = norm(q.x);
    double const u = norm(q.y);
    bool const at_origin = r == 0.0 || u == 0.0;
    double t = 0.0;
    if (!at_origin) {
        for (int i = 0; i < n; ++i) t += q.x[static_cast<std::size_t>(i)] * q.y[static_cast<std::size_t>(i)];
        t /= r * u;
    }
    bool const log_space = m > kLogSpaceAbove;
    double const log_ru = at_origin ? 0.0 : std::log(r) + std::log(u);

    double value = 0.0;
    std::int64_t terms = 0;
    for (int k = 0; k <= m / 2; ++k) {
        ++terms;
        int const s = m - 2 * k;
        if (dim_harmonic(n, s) == 0) continue;
        // at the origin only the s = 0 term survives, with (ru)^0 = 1
        if (at_origin && s != 0) continue;
        LaguerreOrder const order(0.5 * n - 1.0 + s);
        double const z = zonal(n, s, t);
        if (log_space) {
            ScaledValue const lr = laguerre_fn_scaled(k, order, r);
            ScaledValue const lu = laguerre_fn_scaled(k, order, u);
            double const mant = lr.mantissa * lu.mantissa * z;
            if (mant == 0.0) continue;
            value += mant * std::exp(lr.log_scale + lu.log_scale + s * log_ru);
        } else {
            double const radial = laguerre_fn(k, order, r) * laguerre_fn(k, order, u);
            value += radial * (s == 0 ? 1.0 : std::pow(r * u, s)) * z;
        }
    }
    return {value, terms, KernelMethod::polar};
}

double kernel_rel_diff(double reference, double candidate) {
    return std::abs(reference - candidate) / (1.0 + std::abs(reference));
}

BenchRecord kernel_bench(int n, int m, int trials, std::uint64_t seed) {
    if (n < 1 || m < 0 || trials < 1) throw std::invalid_argument("kernel_bench: need n >= 1, m >= 0, trials >= 1");
    BenchRecord rec;
    rec.n = n;
    rec.m = m;
    rec.direct_terms = static_cast<std::int64_t>(multi_index_count(n, m));
    rec.polar_terms = m / 2 + 1;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::vector<KernelQuery> queries;
    queries.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i) {
        KernelQuery q{n, m, std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
        for (double& v : q.x) v = coord(rng);
        for (double& v : q.y) v = coord(rng);
        queries.push_back(std::move(q));
    }

    using clock = std::chrono::steady_clock;
    std::vector<double> polar(queries.size());
    auto const p0 = clock::now();
    for (std::size_t i = 0; i < queries.size(); ++i) polar[i] = phi_polar(queries[i]).value;
    auto const p1 = clock::now();
    rec.polar_nanos_per_eval = std::chrono::duration<double, std::nano>(p1 - p0).count() / trials;

    if (multi_index_count(n, m) > kEnumerationCap) {
        rec.direct_skipped = true;
        rec.skip_reason = "direct enumeration exceeds the 1e7 cap";
        return rec;
    }
    std::vector<double> direct(queries.size());
    auto const d0 = clock::now();
    for (std::size_t i = 0; i < queries.size(); ++i) direct[i] = phi_direct(queries[i]).value;
    auto const d1 = clock::now();
    rec.direct_nanos_per_eval = std::chrono::duration<double, std::nano>(d1 - d0).count() / trials;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        rec.max_rel_diff = std::max(rec.max_rel_diff, kernel_rel_diff(direct[i], polar[i]));
    }
    return rec;
}

}  // namespace oscspectra
