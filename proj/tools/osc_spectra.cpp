// osc_spectra: verification suites, kernel evaluation and benchmark,
// projections of catalog functions, dimension tables and decay probes.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oscspectra/catalog.hpp"
#include "oscspectra/errors.hpp"
#include "oscspectra/format.hpp"
#include "oscspectra/kernels.hpp"
#include "oscspectra/polyspaces.hpp"
#include "oscspectra/projections.hpp"
#include "oscspectra/quadrature.hpp"
#include "oscspectra/verify.hpp"

using namespace oscspectra;

namespace {

enum Exit { kPass = 0, kVerifyFailure = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
    std::string command;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(Cell const& c) {
    return std::visit(
        [](auto const& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

std::string csv_escape(std::string const& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::json cell_json(Cell const& c) {
    return std::visit(
        [](auto const& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_double(v));
            else return v;
        },
        c);
}

void write_table(std::ostream& os, Table const& t, std::string const& format) {
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["schema"] = 1;
        doc["command"] = t.command;
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (auto const& [k, v] : t.meta) meta[k] = cell_json(v);
        doc["meta"] = meta;
        doc["rows"] = nlohmann::ordered_json::array();
        for (auto const& row : t.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
            doc["rows"].push_back(obj);
        }
        os << doc.dump(2) << '\n';
        return;
    }
    for (auto const& [k, v] : t.meta) os << "# " << k << '=' << cell_text(v) << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (auto const& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(row[c]));
        os << '\n';
    }
}

struct Options {
    int n = 2;
    int m = -1;
    int m_max = 8;
    std::uint64_t seed = 1;
    std::vector<std::string> tol;
    std::string format = "csv";
    std::string output;
    std::string dump_rule;
    std::string dump_span;
    std::string function;
    std::string grid;
    std::string x, y;
    int samples = 20;
    int trials = 20;
    int levels = 40;
    double radius = 0.0;
};

void emit(Options const& o, Table const& t) {
    if (o.output.empty()) {
        write_table(std::cout, t, o.format);
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + o.output + "'");
    write_table(out, t, o.format);
}

void dump_rules(std::string const& path, std::vector<QuadratureRule> const& rules) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open rule dump file '" + path + "'");
    for (auto const& r : rules) write_rule_csv(out, r);
}

void dump_spans(std::string const& path, int n, int m) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open span dump file '" + path + "'");
    write_span_csv(out, hermite_span(n, m));
    write_span_csv(out, laguerre_harmonic_span(n, m));
}

std::vector<double> parse_point(std::string const& text, int n, std::string const& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (std::exception const&) {
            throw UsageError(flag + ": '" + part + "' is not a number");
        }
    }
    if (out.size() != static_cast<std::size_t>(n)) throw UsageError(flag + " needs " + std::to_string(n) + " comma-separated coordinates");
    return out;
}

std::string point_text(std::vector<double> const& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "|" : "") + format_double(x[i]);
    return s;
}

int cmd_verify(Options const& o) {
    VerifyConfig cfg;
    cfg.n = o.n;
    cfg.m_max = o.m_max;
    cfg.seed = o.seed;
    for (auto const& item : o.tol) {
        auto const eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects IDENT=VALUE, got '" + item + "'");
        double value = 0;
        try {
            value = std::stod(item.substr(eq + 1));
        } catch (std::exception const&) {
            throw UsageError("--tol value is not a number: '" + item + "'");
        }
        try {
            cfg.tol.set(item.substr(0, eq), value);
        } catch (std::invalid_argument const& e) {
            throw UsageError(e.what());
        }
    }
    if (!o.dump_rule.empty()) {
        if (o.n <= 3) dump_rules(o.dump_rule, {sphere_rule(o.n, default_sphere_degree(o.m_max)), gauss_radial(kDefaultRadialNodes, 0.5 * o.n - 1.0)});
        else dump_rules(o.dump_rule, {gauss_hermite(kDefaultLineNodes)});
    }
    if (!o.dump_span.empty()) {
        if (o.n > kPolyspaceMaxDim || o.m_max > kPolyspaceMaxDegree) throw UsageError("--dump-span needs n <= 3 and m-max <= 12");
        dump_spans(o.dump_span, o.n, o.m_max);
    }

    auto const rows = run_verify(cfg);
    Table t;
    t.command = "verify";
    std::int64_t failures = 0;
    for (auto const& r : rows) failures += r.pass ? 0 : 1;
    t.meta = {{"n", std::int64_t{o.n}}, {"m_max", std::int64_t{o.m_max}}, {"seed", static_cast<std::int64_t>(o.seed)}, {"failures", failures}};
    t.columns = {"tag", "check", "n", "m", "value", "relation", "threshold", "pass"};
    for (auto const& r : rows)
        t.rows.push_back({"(" + r.tag + ")", r.check, std::int64_t{r.n}, std::int64_t{r.m}, r.value, to_string(r.relation), r.threshold, r.pass});
    emit(o, t);
    for (auto const& r : rows)
        if (!r.pass) std::cerr << "verify: FAILED (" << r.tag << ") " << r.check << ": " << format_double(r.value) << ' ' << to_string(r.relation) << ' ' << format_double(r.threshold) << '\n';
    return failures == 0 ? kPass : kVerifyFailure;
}

int cmd_kernel(Options const& o) {
    if (o.m < 0) throw UsageError("kernel needs --m");
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    if (!o.x.empty() || !o.y.empty()) {
        if (o.x.empty() || o.y.empty()) throw UsageError("--x and --y go together");
        pairs.emplace_back(parse_point(o.x, o.n, "--x"), parse_point(o.y, o.n, "--y"));
    } else {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> c(-3.0, 3.0);
        for (int i = 0; i < o.samples; ++i) {
            std::vector<double> x(static_cast<std::size_t>(o.n)), y(static_cast<std::size_t>(o.n));
            for (double& v : x) v = c(rng);
            for (double& v : y) v = c(rng);
            pairs.emplace_back(std::move(x), std::move(y));
        }
    }
    Table t;
    t.command = "kernel";
    t.meta = {{"n", std::int64_t{o.n}}, {"m", std::int64_t{o.m}}};
    t.columns = {"x", "y", "direct", "polar", "rel_diff", "direct_terms", "polar_terms"};
    for (auto const& [x, y] : pairs) {
        KernelQuery const q{o.n, o.m, x, y};
        auto const d = phi_direct(q);
        auto const p = phi_polar(q);
        t.rows.push_back({point_text(x), point_text(y), d.value, p.value, kernel_rel_diff(d.value, p.value),
                          static_cast<std::int64_t>(d.terms_evaluated), static_cast<std::int64_t>(p.terms_evaluated)});
    }
    emit(o, t);
    return kPass;
}

int cmd_bench(Options const& o) {
    if (o.m < 0) throw UsageError("bench needs --m");
    auto const rec = kernel_bench(o.n, o.m, o.trials, o.seed);
    Table t;
    t.command = "bench";
    t.meta = {{"trials", std::int64_t{o.trials}}, {"seed", static_cast<std::int64_t>(o.seed)}};
    t.columns = {"n", "m", "method", "terms", "nanos_per_eval", "max_rel_diff", "skipped", "reason"};
    if (rec.direct_skipped) {
        t.rows.push_back({std::int64_t{o.n}, std::int64_t{o.m}, "direct", rec.direct_terms, Cell{}, Cell{}, true, rec.skip_reason});
        t.rows.push_back({std::int64_t{o.n}, std::int64_t{o.m}, "polar", rec.polar_terms, rec.polar_nanos_per_eval, Cell{}, false, ""});
    } else {
        t.rows.push_back({std::int64_t{o.n}, std::int64_t{o.m}, "direct", rec.direct_terms, rec.direct_nanos_per_eval, rec.max_rel_diff, false, ""});
        t.rows.push_back({std::int64_t{o.n}, std::int64_t{o.m}, "polar", rec.polar_terms, rec.polar_nanos_per_eval, rec.max_rel_diff, false, ""});
    }
    emit(o, t);
    return kPass;
}

int cmd_project(Options const& o) {
    if (o.n > 3) throw UsageError("project supports n <= 3");
    if (o.function.empty() == o.grid.empty()) throw UsageError("project needs exactly one of --function and --grid");

    std::optional<CatalogEntry> entry;
    ScalarField f;
    std::optional<double> support;
    if (!o.function.empty()) {
        entry = make_catalog_entry(o.function, o.n);
        f = entry->field;
        support = entry->support_radius;
    } else {
        std::ifstream in(o.grid);
        if (!in) throw UsageError("cannot open grid file '" + o.grid + "'");
        f = load_grid_field(in, o.n);
    }
    int m = o.m;
    if (m < 0) {
        if (!entry || !entry->natural_level) throw UsageError("project needs --m for this function");
        m = *entry->natural_level;
    }

    QuadratureRule const line = gauss_hermite(kDefaultLineNodes);
    QuadratureRule const tensor = tensor_rule(line, o.n);
    QuadratureRule const sphere = sphere_rule(o.n, default_sphere_degree(m) + (entry && entry->hecke ? entry->hecke->M : 0));
    QuadratureRule const radial = support ? compact_radial_rule(400, 0.5 * o.n - 1.0, *support) : gauss_radial(kDefaultRadialNodes, 0.5 * o.n - 1.0);
    dump_rules(o.dump_rule, {line, sphere, radial});

    auto const hermite = project(hermite_coeffs(f, m, tensor), m);
    auto const polar = project(polar_coeffs(f, m, sphere, radial), m);
    std::optional<HeckeBochnerResult> closed;
    if (entry && entry->hecke) {
        auto const& h = *entry->hecke;
        if (m >= h.M && (m - h.M) % 2 == 0) closed = hecke_bochner(h.f0, h.Y, (m - h.M) / 2);
    }

    Table t;
    t.command = "project";
    t.meta = {{"n", std::int64_t{o.n}}, {"m", std::int64_t{m}}, {"eigenvalue", o.n + 2.0 * m},
              {"function", o.function.empty() ? "grid:" + o.grid : o.function}, {"seed", static_cast<std::int64_t>(o.seed)}};
    for (int d = 1; d <= o.n; ++d) t.columns.push_back("x" + std::to_string(d));
    for (std::string c : {"value", "hermite", "polar", "difference"}) t.columns.push_back(c);
    bool const hecke_cols = entry && entry->hecke;
    if (hecke_cols) {
        t.columns.push_back("closed_form");
        t.columns.push_back("closed_form_difference");
    }
    std::mt19937_64 rng(o.seed);
    double const box = support ? *support : 2.5;
    std::uniform_real_distribution<double> coord(-box, box);
    std::vector<double> x(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.samples; ++i) {
        for (double& v : x) v = coord(rng);
        std::vector<Cell> row;
        for (double v : x) row.emplace_back(v);
        double const ph = hermite(x), pp = polar(x);
        row.emplace_back(f(x));
        row.emplace_back(ph);
        row.emplace_back(pp);
        row.emplace_back(ph - pp);
        if (hecke_cols) {
            // off-pattern levels have the zero function as closed form
            double const c = closed ? closed->field(x) : 0.0;
            row.emplace_back(c);
            row.emplace_back(c - pp);
        }
        t.rows.push_back(std::move(row));
    }
    emit(o, t);
    return kPass;
}

int cmd_dims(Options const& o) {
    Table t;
    t.command = "dims";
    t.meta = {{"n", std::int64_t{o.n}}, {"m_max", std::int64_t{o.m_max}}};
    t.columns = {"m", "harmonic_sum", "binomial", "equal", "rank_hermite", "rank_laguerre", "rank_joint", "spans_equal"};
    bool const spans = o.n <= kPolyspaceMaxDim;
    for (int m = 0; m <= o.m_max; ++m) {
        auto const [lhs, rhs] = dimension_identity(o.n, m);
        std::vector<Cell> row{std::int64_t{m}, lhs, rhs, lhs == rhs};
        if (spans && m <= kPolyspaceMaxDegree) {
            auto const cmp = spans_equal(hermite_span(o.n, m), laguerre_harmonic_span(o.n, m));
            row.insert(row.end(), {std::int64_t{cmp.rank_a}, std::int64_t{cmp.rank_b}, std::int64_t{cmp.rank_joint}, cmp.equal});
        } else {
            row.insert(row.end(), {Cell{}, Cell{}, Cell{}, Cell{}});
        }
        t.rows.push_back(std::move(row));
    }
    if (!o.dump_span.empty()) {
        if (!spans || o.m_max > kPolyspaceMaxDegree) throw UsageError("--dump-span needs n <= 3 and m-max <= 12");
        dump_spans(o.dump_span, o.n, o.m_max);
    }
    emit(o, t);
    return kPass;
}

int cmd_decay(Options const& o) {
    if (o.n > 3) throw UsageError("decay supports n <= 3");
    if (o.levels < 2) throw UsageError("--levels must be >= 2");
    std::string const id = o.function.empty() ? "bump" : o.function;
    auto const entry = make_catalog_entry(id, o.n);
    double const radius = o.radius > 0 ? o.radius : entry.support_radius.value_or(0.0);
    if (radius <= 0) throw UsageError("decay needs --radius for a function without declared support");
    auto const table = coefficient_decay_probe(entry.field, o.levels, radius);
    Table t;
    t.command = "decay";
    t.meta = {{"n", std::int64_t{o.n}}, {"function", id}, {"radius", radius}, {"slope", table.slope},
              {"fitted_rows", static_cast<std::int64_t>(table.fitted_rows)}, {"noise_floor", table.noise_floor}};
    t.columns = {"eigenvalue", "max_abs_coefficient"};
    for (auto const& r : table.rows) t.rows.push_back({r.eigenvalue, r.max_abs_coefficient});
    emit(o, t);
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral projections of the harmonic oscillator -Delta + |x|^2"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "dimension")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed for random points and rotations");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", o.output, "output path (default stdout)");
    };

    auto* verify = app.add_subcommand("verify", "run the identity suites");
    common(verify);
    verify->add_option("--m-max", o.m_max, "highest level")->check(CLI::NonNegativeNumber);
    verify->add_option("--tol", o.tol, "tolerance override IDENT=VALUE (repeatable)");
    verify->add_option("--dump-rule", o.dump_rule, "write the default quadrature rules as CSV");
    verify->add_option("--dump-span", o.dump_span, "write both polynomial spans at m-max as CSV");

    auto* kernel = app.add_subcommand("kernel", "evaluate the projection kernel both ways");
    common(kernel);
    kernel->add_option("--m", o.m, "level")->check(CLI::NonNegativeNumber)->required();
    kernel->add_option("--x", o.x, "first point, comma separated");
    kernel->add_option("--y", o.y, "second point, comma separated");
    kernel->add_option("--samples", o.samples, "random pairs when --x/--y are absent")->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "time direct vs polar kernel evaluation");
    common(bench);
    bench->add_option("--m", o.m, "level")->check(CLI::NonNegativeNumber)->required();
    bench->add_option("--trials", o.trials, "random point pairs")->check(CLI::PositiveNumber);

    auto* proj = app.add_subcommand("project", "project a catalog function or grid data onto one level");
    common(proj);
    proj->add_option("--m", o.m, "level (defaults to the natural level of the function)")->check(CLI::NonNegativeNumber);
    proj->add_option("--function", o.function, "catalog id");
    proj->add_option("--grid", o.grid, "CSV grid file x1,...,xn,value");
    proj->add_option("--samples", o.samples, "sample points")->check(CLI::PositiveNumber);
    proj->add_option("--dump-rule", o.dump_rule, "write the quadrature rules as CSV");

    auto* dims = app.add_subcommand("dims", "dimension identity and span ranks");
    common(dims);
    dims->add_option("--m-max", o.m_max, "highest degree")->check(CLI::NonNegativeNumber);
    dims->add_option("--dump-span", o.dump_span, "write both polynomial spans at m-max as CSV");

    auto* decay = app.add_subcommand("decay", "coefficient decay of a compactly supported function");
    common(decay);
    decay->add_option("--function", o.function, "catalog id (default bump)");
    decay->add_option("--levels", o.levels, "number of levels");
    decay->add_option("--radius", o.radius, "support radius")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (CLI::Success const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) return cmd_verify(o);
        if (*kernel) return cmd_kernel(o);
        if (*bench) return cmd_bench(o);
        if (*proj) return cmd_project(o);
        if (*dims) return cmd_dims(o);
        if (*decay) return cmd_decay(o);
    } catch (ResourceError const& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kResource;
    } catch (std::invalid_argument const& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (std::domain_error const& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailure;
    }
    return kUsage;
}
