#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "toral/bounds.hpp"
#include "toral/epstein.hpp"
#include "toral/errors.hpp"
#include "toral/field_io.hpp"
#include "toral/parallel.hpp"
#include "toral/periods.hpp"
#include "toral/random_bases.hpp"

namespace toral::cli {

using nlohmann::json;

namespace {

SelftestHook& selftest_hook() {
    static SelftestHook hook;
    return hook;
}

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<long long> disc;
    std::string field_path;
    std::optional<double> s;
    double eps = 0.1;
    double delta = 0.0;
    std::optional<double> c_convex;
    int n = 2;
    int samples = -1;
    unsigned long long seed = kDefaultSeed;
    double tol = 1e-8;
    std::string out_path;
    std::string format;
    std::string range;
    std::optional<long long> from, to;
    unsigned threads = 0;
    std::string basis;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string r;
    for (std::size_t i = 0; i < parts.size(); ++i) r += (i ? sep : "") + parts[i];
    return r;
}

std::string join_ints(const std::vector<int>& v) {
    std::vector<std::string> p;
    for (int x : v) p.push_back(std::to_string(x));
    return join(p, " ");
}

NumberFieldData load_target(const Options& o) {
    if (o.disc && !o.field_path.empty()) throw UsageError("give either --disc or --field, not both");
    if (o.disc) {
        if (!is_fundamental_discriminant(*o.disc)) throw UsageError(std::to_string(*o.disc) + " is not a fundamental discriminant");
        return quadratic_field(*o.disc);
    }
    if (!o.field_path.empty()) return load_field(o.field_path);
    throw UsageError("a field is required: --disc or --field");
}

double require_s(const Options& o) {
    if (!o.s) throw UsageError("--s is required");
    return *o.s;
}

LatticeBasis parse_basis(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<double> r;
        std::stringstream es(row);
        std::string e;
        while (std::getline(es, e, ',')) {
            try {
                std::size_t used = 0;
                r.push_back(std::stod(e, &used));
                if (e.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(e);
            } catch (const std::exception&) {
                throw UsageError("--basis: cannot parse entry '" + e + "'");
            }
        }
        rows.push_back(std::move(r));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw UsageError("--basis is empty");
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw UsageError("--basis must be square, rows separated by ';'");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return LatticeBasis(m);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    out << join(header, ",") << '\n';
    for (const auto& r : rows) out << join(r, ",") << '\n';
}

// JSON array of objects from the same table
json table_json(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                const std::vector<std::vector<json>>& values) {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json o;
        for (std::size_t j = 0; j < header.size(); ++j) o[header[j]] = values[i][j];
        arr.push_back(o);
    }
    return arr;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> text;
    std::vector<std::vector<json>> values;

    void add(std::vector<json> row) {
        std::vector<std::string> t;
        for (const json& v : row) {
            if (v.is_number_float()) t.push_back(format_real(v.get<double>()));
            else if (v.is_string()) t.push_back(v.get<std::string>());
            else t.push_back(v.dump());
        }
        text.push_back(std::move(t));
        values.push_back(std::move(row));
    }

    void emit(std::ostream& out, const std::string& format, json extra = nullptr) const {
        if (format == "json") {
            json doc = extra.is_null() ? json::object() : extra;
            doc["rows"] = table_json(header, text, values);
            out << doc.dump(2) << '\n';
        } else {
            write_csv(out, header, text);
        }
    }
};

json field_json(const NumberFieldData& f) {
    json doc;
    doc["discriminant"] = f.discriminant.str();
    if (boost::multiprecision::abs(f.discriminant) < BigInt(1LL << 62)) doc["discriminant"] = f.discriminant.convert_to<long long>();
    doc["degree"] = f.n;
    doc["signature"] = {f.r1, f.r2};
    doc["h"] = f.class_number();
    doc["w"] = f.w;
    doc["R"] = f.regulator;
    doc["class_group"] = f.cyclic_orders;
    json forms = json::array();
    for (const auto& q : f.forms) forms.push_back(q.to_string());
    doc["forms"] = forms;
    json classes = json::array();
    for (int c = 0; c < f.class_number(); ++c) {
        json e = {{"label", f.classes[c].label}, {"norm", f.classes[c].norm.to_string()}, {"coords", f.classes[c].coords}};
        if (c < static_cast<int>(f.forms.size())) e["form"] = f.forms[c].to_string();
        classes.push_back(e);
    }
    doc["classes"] = classes;
    if (f.fundamental_unit) {
        doc["fundamental_unit"] = {{"x", f.fundamental_unit->x.str()},
                                   {"y", f.fundamental_unit->y.str()},
                                   {"norm", f.fundamental_unit->norm}};
    }
    return doc;
}

int cmd_field_info(const Options& o, std::ostream& out) {
    const NumberFieldData f = load_target(o);
    if (o.format == "csv") {
        Table t{{"class", "label", "norm", "coords", "form"}, {}, {}};
        for (int c = 0; c < f.class_number(); ++c)
            t.add({c, f.classes[c].label, f.classes[c].norm.to_string(), join_ints(f.classes[c].coords),
                   c < static_cast<int>(f.forms.size()) ? f.forms[c].to_string() : ""});
        t.emit(out, "csv");
    } else {
        out << field_json(f).dump(2) << '\n';
    }
    return 0;
}

std::vector<std::pair<std::string, LatticeBasis>> eval_bases(const Options& o) {
    std::vector<std::pair<std::string, LatticeBasis>> out;
    if (!o.basis.empty()) {
        out.emplace_back("basis", parse_basis(o.basis));
    } else if (o.disc || !o.field_path.empty()) {
        const NumberFieldData f = load_target(o);
        for (int c = 0; c < f.class_number(); ++c) out.emplace_back(f.classes[c].label, ideal_lattice(f, c));
    } else if (o.samples > 0) {
        std::mt19937_64 rng(o.seed);
        for (int i = 0; i < o.samples; ++i) out.emplace_back("sample" + std::to_string(i), random_unimodular_basis(o.n, rng));
    } else {
        if (o.n < 1) throw UsageError("--n must be positive");
        out.emplace_back("Z^" + std::to_string(o.n), LatticeBasis(Eigen::MatrixXd::Identity(o.n, o.n)));
    }
    return out;
}

int cmd_epstein_eval(const Options& o, std::ostream& out) {
    const double s = require_s(o);
    EvalConfig cfg;
    cfg.tolerance = std::min(o.tol, 1e-2);
    Table t{{"lattice", "n", "s", "Estar", "error", "E", "lambda1"}, {}, {}};
    for (const auto& [label, g] : eval_bases(o)) {
        const CompletedValue v = epstein_completed(g, s, cfg);
        t.add({label, g.rank(), s, v.value, v.error_estimate, v.value / completion_factor(s), lambda1(g)});
    }
    t.emit(out, o.format.empty() ? "csv" : o.format);
    return 0;
}

int cmd_epstein_check(const Options& o, std::ostream& out) {
    if (o.n < 2) throw UsageError("--n must be at least 2");
    const int samples = o.samples < 0 ? 20 : o.samples;
    std::vector<double> ss;
    if (o.s) ss.push_back(*o.s);
    else ss = {0.3 * o.n, 0.5 * o.n, 0.7 * o.n};
    std::mt19937_64 rng(o.seed);
    std::vector<LatticeBasis> bases;
    for (int i = 0; i < samples; ++i) bases.push_back(random_unimodular_basis(o.n, rng));
    std::vector<double> res(bases.size() * ss.size());
    parallel_for(res.size(), [&](std::size_t k) {
        res[k] = functional_equation_residual(bases[k / ss.size()], ss[k % ss.size()]);
    });
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    const bool ok = worst <= o.tol;
    if (o.format == "json") {
        out << json{{"n", o.n}, {"samples", samples}, {"seed", o.seed}, {"s", ss}, {"max_residual", worst},
                    {"tol", o.tol}, {"passed", ok}}.dump(2)
            << '\n';
    } else {
        out << "n=" << o.n << " samples=" << samples << " seed=" << o.seed << " max_residual=" << format_real(worst)
            << " tol=" << format_real(o.tol) << (ok ? " ok" : " FAILED") << '\n';
    }
    return ok ? 0 : 1;
}

QuadratureSpec quad_from(const Options& o) {
    QuadratureSpec q;
    q.tolerance = o.tol;
    q.max_threads = o.threads;
    return q;
}

int cmd_period(const Options& o, std::ostream& out) {
    const NumberFieldData f = load_target(o);
    const double s = require_s(o);
    const QuadratureSpec q = quad_from(o);
    Table t{{"class", "label", "norm", "Z", "Z_error", "zeta_star", "zeta"}, {}, {}};
    const double norm = period_normalization(f), gamma = zeta_gamma_factor(f, s);
    for (int c = 0; c < f.class_number(); ++c) {
        const CompletedValue z = hecke_period(f, c, s, q);
        t.add({c, f.classes[c].label, f.classes[c].norm.to_string(), z.value, z.error_estimate, z.value / norm,
               z.value / norm / gamma});
    }
    t.emit(out, o.format.empty() ? "csv" : o.format, json{{"s", s}, {"normalization", norm}});
    return 0;
}

int cmd_lfunctions(const Options& o, std::ostream& out) {
    const NumberFieldData f = load_target(o);
    const double s = require_s(o);
    const PeriodResult p = class_group_dft(f, s, quad_from(o));
    const CharacterTable table = character_table(f);
    const double gamma = zeta_gamma_factor(f, s);
    Table t{{"character", "exponents", "Zhat_re", "Zhat_im", "Lstar_re", "Lstar_im", "L_re", "L_im"}, {}, {}};
    for (int k = 0; k < table.size(); ++k) {
        const auto l = p.Lstar[k] / gamma;
        t.add({k, join_ints(table.exponents(k)), p.Zhat[k].real(), p.Zhat[k].imag(), p.Lstar[k].real(),
               p.Lstar[k].imag(), l.real(), l.imag()});
    }
    t.emit(out, o.format.empty() ? "csv" : o.format,
           json{{"s", s},
                {"inversion_residual", p.inversion_residual},
                {"orthogonality_residual", table.orthogonality_residual()}});
    return 0;
}

double c_convex_of(const Options& o, std::ostream& err) {
    if (o.c_convex) return *o.c_convex;
    err << "warning: convexity constant not given, using C_convex = 1\n";
    return 1.0;
}

json report_json(const NonvanishingReport& r) {
    json a1 = {{"A0", r.a1.A0},
               {"place_factor", r.a1.place_factor},
               {"short_vector_factor", r.a1.short_vector_factor},
               {"slice_volume", r.a1.slice_volume},
               {"height_factor", r.a1.height_factor},
               {"minkowski_factor", r.a1.minkowski_factor},
               {"covolume_factor", r.a1.covolume_factor},
               {"value", r.a1.value}};
    return {{"s", r.s},
            {"epsilon", r.epsilon},
            {"delta", r.delta},
            {"C_convex", r.c_convex},
            {"h", r.h},
            {"theorem1_bound", r.theorem1_bound},
            {"theorem1_count", r.theorem1_count},
            {"lemma_bound", r.lemma_bound},
            {"observed_count", r.observed_count},
            {"Z_trivial", r.z_trivial},
            {"Z_sup", r.z_sup},
            {"Zhat_sup", r.zhat_sup},
            {"trivial_class_bound", r.trivial_class_bound},
            {"convexity_bound", r.convexity},
            {"A1", a1},
            {"Z", r.periods.Z},
            {"inversion_residual", r.periods.inversion_residual}};
}

int cmd_nonvanishing(const Options& o, std::ostream& out, std::ostream& err) {
    const NumberFieldData f = load_target(o);
    const double s = require_s(o);
    const double c = c_convex_of(o, err);
    const NonvanishingReport r = theorem1_bound(f, s, o.eps, o.delta, c, quad_from(o));
    json doc = report_json(r);
    const CuspConstants k = constants_A0_B0(f.n, s);
    doc["A0"] = k.A0;
    doc["B0"] = k.B0;
    if (o.format == "csv") {
        Table t{{"s", "epsilon", "delta", "h", "theorem1_bound", "lemma_bound", "observed_count"}, {}, {}};
        t.add({r.s, r.epsilon, r.delta, r.h, r.theorem1_bound, r.lemma_bound, r.observed_count});
        t.emit(out, "csv");
    } else {
        out << doc.dump(2) << '\n';
    }
    return 0;
}

std::pair<long long, long long> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--range must look like A..B");
    try {
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        const long long x = std::stoll(a, &u1), y = std::stoll(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
        return {x, y};
    } catch (const std::exception&) {
        throw UsageError("--range must look like A..B with integers A, B");
    }
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    ScanOptions so;
    if (!o.range.empty()) {
        if (o.from || o.to) throw UsageError("give either --range or --from/--to");
        std::tie(so.from, so.to) = parse_range(o.range);
    } else {
        if (!o.from || !o.to) throw UsageError("scan needs --range A..B or both --from and --to");
        so.from = *o.from;
        so.to = *o.to;
    }
    so.s = o.s.value_or(0.5);
    so.epsilon = o.eps;
    so.delta = o.delta;
    so.c_convex = c_convex_of(o, err);
    so.threads = o.threads;
    if (o.format == "json") throw UsageError("scan writes CSV only");
    constants_A0_B0(2, so.s);
    convexity_bound(quadratic_field(-4), so.s, so.epsilon, so.delta, so.c_convex);
    write_scan_csv(so, out, err);
    return 0;
}

} // namespace

void set_selftest(SelftestHook hook) { selftest_hook() = std::move(hook); }

std::string format_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::vector<long long> scan_discriminants(long long from, long long to) {
    const long long lo = std::min(from, to), hi = std::max(from, to);
    std::vector<long long> ds;
    for (long long d = lo; d <= hi; ++d)
        if (d != 0 && d != 1 && is_fundamental_discriminant(d)) ds.push_back(d);
    std::stable_sort(ds.begin(), ds.end(), [](long long a, long long b) {
        return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
    });
    return ds;
}

void write_scan_csv(const ScanOptions& opts, std::ostream& out, std::ostream& err) {
    const std::vector<long long> ds = scan_discriminants(opts.from, opts.to);
    std::vector<std::string> rows(ds.size());
    std::vector<std::string> warnings(ds.size());
    QuadratureSpec q;
    q.max_threads = 1; // rows already run in parallel
    parallel_for(ds.size(), [&](std::size_t i) {
        const long long d = ds[i];
        try {
            const NumberFieldData f = quadratic_field(d);
            const NonvanishingReport r =
                theorem1_report(f, class_group_dft(f, opts.s, q), opts.epsilon, opts.delta, opts.c_convex);
            rows[i] = join({std::to_string(d), std::to_string(r.h), format_real(f.regulator), format_real(r.z_trivial),
                            format_real(r.z_sup), format_real(r.zhat_sup), format_real(r.lemma_bound),
                            std::to_string(r.observed_count), format_real(r.theorem1_bound), "ok"},
                           ",");
        } catch (const UnsupportedError& e) {
            rows[i] = std::to_string(d) + ",,,,,,,,,unsupported";
            warnings[i] = "warning: D=" + std::to_string(d) + " skipped: " + e.what();
        }
    }, opts.threads);
    out << "D,h,R,Z_O,Z_sup,Zhat_sup,lemma_bound,observed_count,theorem1_bound,status\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << rows[i] << '\n';
        if (!warnings[i].empty()) err << warnings[i] << '\n';
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Epstein zeta functions, toral periods and class group L-functions", "toral"};
    app.require_subcommand(1);
    Options o;

    auto add_field = [&](CLI::App* c) {
        c->add_option("--disc", o.disc, "fundamental discriminant of a quadratic field");
        c->add_option("--field", o.field_path, "field data document (JSON)")->check(CLI::ExistingFile);
    };
    auto add_s = [&](CLI::App* c) { c->add_option("--s", o.s, "real evaluation point"); };
    auto add_out = [&](CLI::App* c, const std::string& def) {
        c->add_option("--out", o.out_path, "write output to PATH instead of stdout");
        c->add_option("--format", o.format, "csv or json (default " + def + ")")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_tol = [&](CLI::App* c, const std::string& what) { c->add_option("--tol", o.tol, what); };
    auto add_nv = [&](CLI::App* c) {
        c->add_option("--eps", o.eps, "epsilon in (0, 1/2), default 0.1");
        c->add_option("--delta", o.delta, "subconvexity saving, default 0");
        c->add_option("--c-convex", o.c_convex, "convexity constant, default 1");
    };
    auto add_threads = [&](CLI::App* c) { c->add_option("--threads", o.threads, "worker threads (0: all cores)"); };

    auto* info = app.add_subcommand("field-info", "arithmetic data of a field");
    add_field(info);
    add_out(info, "json");

    auto* eval = app.add_subcommand("epstein-eval", "completed Epstein zeta E*(g, s)");
    add_field(eval);
    add_s(eval);
    eval->add_option("--n", o.n, "dimension for Z^n or random bases, default 2");
    eval->add_option("--samples", o.samples, "number of random unimodular bases");
    eval->add_option("--seed", o.seed, "random seed, default 1");
    eval->add_option("--basis", o.basis, "rows separated by ';', entries by ','");
    add_tol(eval, "absolute tolerance, default 1e-8");
    add_out(eval, "csv");

    auto* check = app.add_subcommand("epstein-check", "functional equation on random bases");
    check->add_option("--n", o.n, "dimension, default 2");
    check->add_option("--samples", o.samples, "number of bases, default 20");
    check->add_option("--seed", o.seed, "random seed, default 1");
    add_s(check);
    add_tol(check, "pass threshold for the residual, default 1e-8");
    add_out(check, "text");

    auto* period = app.add_subcommand("period", "Hecke periods and partial zeta values");
    add_field(period);
    add_s(period);
    add_tol(period, "quadrature tolerance, default 1e-8");
    add_threads(period);
    add_out(period, "csv");

    auto* lf = app.add_subcommand("lfunctions", "class group Fourier transform and L-values");
    add_field(lf);
    add_s(lf);
    add_tol(lf, "quadrature tolerance, default 1e-8");
    add_threads(lf);
    add_out(lf, "csv");

    auto* nv = app.add_subcommand("nonvanishing", "non-vanishing report");
    add_field(nv);
    add_s(nv);
    add_nv(nv);
    add_tol(nv, "quadrature tolerance, default 1e-8");
    add_threads(nv);
    add_out(nv, "json");

    auto* scan = app.add_subcommand("scan", "tabulate a range of quadratic discriminants");
    scan->add_option("--range", o.range, "A..B");
    scan->add_option("--from", o.from, "first discriminant");
    scan->add_option("--to", o.to, "last discriminant");
    add_s(scan);
    add_nv(scan);
    add_threads(scan);
    add_out(scan, "csv");

    auto* self = app.add_subcommand("selftest", "run the acceptance criteria");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
        file = std::make_unique<std::ofstream>(o.out_path);
        if (!*file) {
            err << "error: cannot write " << o.out_path << '\n';
            return 2;
        }
        sink = file.get();
    }

    try {
        if (info->parsed()) return cmd_field_info(o, *sink);
        if (eval->parsed()) return cmd_epstein_eval(o, *sink);
        if (check->parsed()) return cmd_epstein_check(o, *sink);
        if (period->parsed()) return cmd_period(o, *sink);
        if (lf->parsed()) return cmd_lfunctions(o, *sink);
        if (nv->parsed()) return cmd_nonvanishing(o, *sink, err);
        if (scan->parsed()) return cmd_scan(o, *sink, err);
        if (self->parsed()) {
            if (!selftest_hook()) {
                err << "error: selftest is not available in this build\n";
                return 1;
            }
            return selftest_hook()(*sink) == 0 ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace toral::cli
