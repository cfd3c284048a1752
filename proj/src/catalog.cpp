#include "oscspectra/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <regex>
#include <sstream>
#include <vector>

#include "oscspectra/harmonics.hpp"
#include "oscspectra/projections.hpp"
#include "oscspectra/special_functions.hpp"

namespace oscspectra {

namespace {

double norm_sq(std::span<double const> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
}

int parse_int(std::string const& text, std::string const& what) {
    try {
        std::size_t used = 0;
        int const v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (std::exception const&) {
        throw CatalogError("catalog: " + what + " is not an integer: '" + text + "'");
    }
}

std::vector<std::string> split(std::string const& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    auto const b = s.find_first_not_of(" \t\r");
    auto const e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

CatalogEntry make_catalog_entry(std::string const& id, int n) {
    if (n < 1) throw CatalogError("catalog: n must be >= 1");
    CatalogEntry e;
    e.id = id;
    if (id == "gauss") {
        e.field = {n, [](std::span<double const> x) { return std::exp(-norm_sq(x)); }};
        return e;
    }
    if (id == "bump") {
        e.field = {n, [](std::span<double const> x) {
                       double const r2 = norm_sq(x);
                       return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
                   }};
        e.support_radius = 1.0;
        return e;
    }
    if (id == "truncgauss") {
        e.field = {n, [](std::span<double const> x) {
                       double const r2 = norm_sq(x);
                       return r2 < 1 ? std::exp(-r2) : 0.0;
                   }};
        e.support_radius = 1.0;
        return e;
    }

    std::smatch match;
    static std::regex const hermite_re(R"(hermite:gamma=\(([0-9,\s]*)\))");
    static std::regex const polar_re(R"(polar:k=(-?\d+),s=(-?\d+),j=(-?\d+))");
    static std::regex const hecke_re(R"(hecke:M=(-?\d+),K=(-?\d+),f0=(\w+))");

    if (std::regex_match(id, match, hermite_re)) {
        std::vector<int> gamma;
        for (auto const& part : split(match[1].str(), ',')) gamma.push_back(parse_int(trim(part), "gamma entry"));
        if (gamma.size() != static_cast<std::size_t>(n)) {
            throw CatalogError("catalog: gamma has " + std::to_string(gamma.size()) + " entries, n = " + std::to_string(n));
        }
        MultiIndex const alpha(gamma);
        e.field = hermite_field(alpha);
        e.natural_level = alpha.length();
        return e;
    }
    if (std::regex_match(id, match, polar_re)) {
        if (n > 3) throw CatalogError("catalog: polar functions need n <= 3");
        int const k = parse_int(match[1].str(), "k"), s = parse_int(match[2].str(), "s"), j = parse_int(match[3].str(), "j");
        try {
            PolarIndex const idx(n, k, s, j);
            e.field = polar_basis_field(n, idx);
            e.natural_level = idx.level();
        } catch (std::invalid_argument const& err) {
            throw CatalogError(std::string("catalog: ") + err.what());
        }
        return e;
    }
    if (std::regex_match(id, match, hecke_re)) {
        if (n > 3) throw CatalogError("catalog: hecke functions need n <= 3");
        int const M = parse_int(match[1].str(), "M"), K = parse_int(match[2].str(), "K");
        std::string const kind = match[3].str();
        if (M < 0 || K < 0) throw CatalogError("catalog: M and K must be nonnegative");
        int const d = dim_harmonic(n, M);
        if (d == 0) throw CatalogError("catalog: no harmonics of degree " + std::to_string(M) + " for n = " + std::to_string(n));
        RadialFunction f0;
        if (kind == "gauss") f0 = [](double r) { return std::exp(-r * r); };
        else if (kind == "poly") f0 = [](double r) { return (1 + 0.5 * r * r) * std::exp(-0.8 * r * r); };
        else throw CatalogError("catalog: f0 must be gauss or poly, got '" + kind + "'");
        auto const Y = solid_harmonic_combination(n, M, std::vector<double>(static_cast<std::size_t>(d), 1.0 / std::sqrt(d)));
        e.field = radial_times_harmonic(f0, Y);
        e.natural_level = M + 2 * K;
        e.hecke = HeckeSpec{M, K, f0, Y};
        return e;
    }
    throw CatalogError("catalog: unknown function id '" + id + "'");
}

ScalarField load_grid_field(std::istream& in, int n) {
    std::string line;
    do {
        if (!std::getline(in, line)) throw CatalogError("grid: empty file");
    } while (trim(line).empty() || line[0] == '#');

    auto const header = split(trim(line), ',');
    if (header.size() != static_cast<std::size_t>(n) + 1) {
        throw CatalogError("grid: header has " + std::to_string(header.size()) + " columns, expected " + std::to_string(n + 1) +
                           " (x1,...,x" + std::to_string(n) + ",value)");
    }
    for (int d = 0; d < n; ++d)
        if (trim(header[static_cast<std::size_t>(d)]) != "x" + std::to_string(d + 1)) {
            throw CatalogError("grid: column " + std::to_string(d + 1) + " must be named x" + std::to_string(d + 1));
        }
    if (trim(header.back()) != "value") throw CatalogError("grid: last column must be named value");

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || line[0] == '#') continue;
        auto const cells = split(trim(line), ',');
        if (cells.size() != header.size()) throw CatalogError("grid: line " + std::to_string(line_no) + " has the wrong number of columns");
        std::vector<double> row;
        for (auto const& c : cells) {
            try {
                std::size_t used = 0;
                double const v = std::stod(trim(c), &used);
                if (used != trim(c).size() || !std::isfinite(v)) throw std::invalid_argument(c);
                row.push_back(v);
            } catch (std::exception const&) {
                throw CatalogError("grid: line " + std::to_string(line_no) + " has a non-numeric cell '" + c + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CatalogError("grid: no data rows");

    struct Grid {
        std::vector<std::vector<double>> axes;
        std::vector<double> values;  // row-major, last axis fastest
        std::vector<std::size_t> strides;
    };
    auto grid = std::make_shared<Grid>();
    grid->axes.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        auto& axis = grid->axes[static_cast<std::size_t>(d)];
        for (auto const& r : rows) axis.push_back(r[static_cast<std::size_t>(d)]);
        std::sort(axis.begin(), axis.end());
        axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
        if (axis.size() < 2) throw CatalogError("grid: axis x" + std::to_string(d + 1) + " needs at least two distinct values");
    }
    std::size_t total = 1;
    grid->strides.assign(static_cast<std::size_t>(n), 1);
    for (int d = n - 1; d >= 0; --d) {
        grid->strides[static_cast<std::size_t>(d)] = total;
        total *= grid->axes[static_cast<std::size_t>(d)].size();
    }
    if (total != rows.size()) throw CatalogError("grid: points do not form a full rectilinear grid");
    grid->values.assign(total, std::nan(""));
    for (auto const& r : rows) {
        std::size_t flat = 0;
        for (int d = 0; d < n; ++d) {
            auto const& axis = grid->axes[static_cast<std::size_t>(d)];
            auto const pos = static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), r[static_cast<std::size_t>(d)]) - axis.begin());
            flat += pos * grid->strides[static_cast<std::size_t>(d)];
        }
        if (!std::isnan(grid->values[flat])) throw CatalogError("grid: duplicate grid point");
        grid->values[flat] = r.back();
    }

    return {n, [grid, n](std::span<double const> x) {
                std::vector<std::size_t> lo(static_cast<std::size_t>(n));
                std::vector<double> frac(static_cast<std::size_t>(n));
                for (int d = 0; d < n; ++d) {
                    auto const& axis = grid->axes[static_cast<std::size_t>(d)];
                    double const v = x[static_cast<std::size_t>(d)];
                    if (v < axis.front() || v > axis.back()) return 0.0;
                    auto it = std::upper_bound(axis.begin(), axis.end(), v);
                    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
                    if (hi == axis.size()) hi = axis.size() - 1;
                    std::size_t const l = hi - 1;
                    lo[static_cast<std::size_t>(d)] = l;
                    frac[static_cast<std::size_t>(d)] = (v - axis[l]) / (axis[hi] - axis[l]);
                }
                double acc = 0.0;
                for (unsigned corner = 0; corner < (1u << n); ++corner) {
                    double w = 1.0;
                    std::size_t flat = 0;
                    for (int d = 0; d < n; ++d) {
                        bool const up = (corner >> d) & 1u;
                        auto const du = static_cast<std::size_t>(d);
                        w *= up ? frac[du] : 1.0 - frac[du];
                        flat += (lo[du] + (up ? 1 : 0)) * grid->strides[du];
                    }
                    if (w != 0.0) acc += w * grid->values[flat];
                }
                return acc;
            }};
}

}  // namespace oscspectra
