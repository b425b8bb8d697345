// fhlab: batch front-end for the Toeplitz determinant / spectrum library.
//
//   fhlab <command> --symbol <path|inline-json> [--n N | --n-list a,b,c | --dyadic lo:hi]
//         [--p P] [--functional id] [--format csv|json] [--out PATH] [--no-meta]
//
// Exit codes: 0 ok, 1 bad config, 2 numerical failure, 3 acceptance failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "fhlab/acceptance.hpp"
#include "fhlab/config.hpp"
#include "fhlab/fhlab.hpp"

using namespace fhlab;

namespace {

constexpr const char* version = "0.1.0";

enum exit_code { ok = 0, bad_config = 1, numerical = 2, acceptance_failed = 3 };

// Reported as exit 2.
struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- output -------------------------------------------------------------

using Cell = std::variant<long long, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary; // kept with --no-meta; CSV sends it to stderr
};

std::string real17(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return real17(v);
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

std::string json_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? real17(v) : "null";
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return json_string(v);
        },
        c);
}

// nlohmann prints shortest round-trip doubles; rewrite with 17 digits so
// every real in the output has the same texture.
std::string json_value(const nlohmann::ordered_json& j)
{
    if (j.is_number_float()) return std::isfinite(j.get<double>()) ? real17(j.get<double>()) : "null";
    if (j.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + json_value(j[i]);
        return s + "]";
    }
    if (j.is_object()) {
        std::string s = "{";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            s += (first ? "" : ", ") + json_string(k) + ": " + json_value(v);
            first = false;
        }
        return s + "}";
    }
    return j.dump();
}

std::string render_csv(const Table& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + csv_cell(r[i]);
        s += "\n";
    }
    return s;
}

std::string render_json(const Table& t, const std::optional<nlohmann::ordered_json>& meta)
{
    std::string s = "{\n";
    if (meta) s += "  \"meta\": " + json_value(*meta) + ",\n";
    if (!t.summary.is_null()) s += "  \"summary\": " + json_value(t.summary) + ",\n";
    s += "  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        s += r ? ",\n    {" : "\n    {";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            s += (i ? ", " : "") + json_string(t.columns[i]) + ": " + json_cell(t.rows[r][i]);
        s += "}";
    }
    s += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return s;
}

// --- options ------------------------------------------------------------

struct Options {
    std::string command;
    std::string symbol;
    std::optional<int> n;
    std::string n_list;
    std::string dyadic;
    std::optional<int> p;
    std::string functional;
    std::string format = "csv";
    std::string out;
    bool no_meta = false;
};

class bad_option : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int parse_int(const std::string& s, const char* what)
{
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw bad_option(std::string(what) + ": not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw bad_option(std::string(what) + ": not an integer: '" + s + "'");
    return v;
}

/// Sizes from --n / --n-list / --dyadic (at most one), or the fallback.
std::vector<int> sizes(const Options& o, std::vector<int> fallback)
{
    const int given = int(o.n.has_value()) + int(!o.n_list.empty()) + int(!o.dyadic.empty());
    if (given > 1) throw bad_option("use only one of --n, --n-list, --dyadic");
    std::vector<int> ns;
    if (o.n) ns = {*o.n};
    else if (!o.n_list.empty()) {
        std::stringstream ss(o.n_list);
        std::string item;
        while (std::getline(ss, item, ',')) ns.push_back(parse_int(item, "--n-list"));
    } else if (!o.dyadic.empty()) {
        const auto colon = o.dyadic.find(':');
        if (colon == std::string::npos) throw bad_option("--dyadic: expected lo:hi");
        const int lo = parse_int(o.dyadic.substr(0, colon), "--dyadic");
        const int hi = parse_int(o.dyadic.substr(colon + 1), "--dyadic");
        if (lo < 1 || hi < lo) throw bad_option("--dyadic: need 1 <= lo <= hi");
        for (long long m = lo; m <= hi; m *= 2) ns.push_back(int(m));
    } else {
        ns = std::move(fallback);
    }
    if (ns.empty()) throw bad_option("no sizes given (use --n, --n-list or --dyadic)");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 0) throw bad_option("sizes must be non-negative");
        if (i && ns[i] <= ns[i - 1]) throw bad_option("sizes must be strictly ascending");
    }
    return ns;
}

int single_size(const Options& o, std::optional<int> fallback = std::nullopt)
{
    const auto ns = sizes(o, fallback ? std::vector<int>{*fallback} : std::vector<int>{});
    if (ns.size() != 1) throw bad_option(o.command + ": expects a single size (--n)");
    return ns.front();
}

void cap(std::span<const int> ns, int limit, const char* what)
{
    for (int n : ns)
        if (n > limit) throw bad_option(std::string(what) + ": n must be <= " + std::to_string(limit));
}

// --- commands -----------------------------------------------------------

void push_log(std::vector<Cell>& row, const LogComplex& d)
{
    row.emplace_back(d.log_abs);
    row.emplace_back(d.arg);
}

Table cmd_coeffs(const Options& o, const SymbolSpec& spec)
{
    const int n = single_size(o, 8);
    cap(std::span<const int>(&n, 1), 1 << 16, "coeffs");
    const FourierSeries s = sigma_fourier(spec, -n, n);
    Table t{{"k", "re", "im"}, {}, {}};
    for (int k = -n; k <= n; ++k) t.rows.push_back({(long long)k, s[k].real(), s[k].imag()});
    return t;
}

Table cmd_constants(const Options&, const SymbolSpec& spec)
{
    Table t{{"quantity", "re", "im"}, {}, {}};
    auto add = [&](const char* name, Complex v) { t.rows.push_back({std::string(name), v.real(), v.imag()}); };
    add("beta", spec.beta);
    const ClassReport cls = verify_class(spec);
    add("tau_min_abs", cls.min_abs_tau);
    add("tau_winding", double(cls.tau_winding));
    try {
        const RangeCurve rc = range_curve(spec, 4096);
        add("symbol_winding", double(winding_number(rc.points).winding));
    } catch (const winding_undefined&) {
        add("symbol_winding", std::nan(""));
    }
    const AsymptoticPrediction pred = make_prediction(spec);
    add("log_geometric_mean", pred.log_g_mean);
    add("log_szego_constant", szego_constant(spec.tau).log());
    const LogComplex fh = fh_constant(spec.beta);
    add("log_barnes_product", fh.is_zero() ? Complex(-INFINITY, 0.0) : fh.log());
    add("log_jump_coupling", pred.log_coupling);
    add("log_constant", pred.log_constant.is_zero() ? Complex(-INFINITY, 0.0) : pred.log_constant.log());
    const Complex pub = (fh * szego_constant(spec.tau)).log();
    add("log_constant_published", fh.is_zero() ? Complex(-INFINITY, 0.0) : pub);
    if (std::abs(spec.beta.real()) < 0.5 && spec.beta != Complex(0.0)) {
        try {
            const CConstants c = c_constants(spec.beta, wiener_hopf(spec.tau));
            add("c0", c.c0);
            add("c0_prime", c.c0_prime);
        } catch (const std::domain_error&) {
        }
    }
    t.summary = {{"class_member", cls.passed()}};
    if (!cls.note.empty()) t.summary["note"] = cls.note;
    return t;
}

Table cmd_det(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {});
    cap(ns, 4096, "det");
    Table t{{"n", "logabs_det", "arg_det"}, {}, {}};
    for (int n : ns) {
        std::vector<Cell> row{(long long)n};
        push_log(row, logdet_lu(build(spec, n)));
        t.rows.push_back(row);
    }
    return t;
}

Table cmd_oracle(const Options& o, const SymbolSpec& spec)
{
    if (!spec.tau.is_identity()) throw bad_option("oracle: needs tau = 1 (pure jump)");
    if (spec.integer_beta()) throw bad_option("oracle: beta must not be an integer");
    const auto ns = sizes(o, {});
    cap(ns, 1 << 15, "oracle");
    const auto all = pure_jump_exact_logdets(spec.beta, ns.back());
    Table t{{"n", "logabs_det", "arg_det"}, {}, {}};
    for (int n : ns) {
        std::vector<Cell> row{(long long)n};
        push_log(row, all[std::size_t(n)]);
        t.rows.push_back(row);
    }
    return t;
}

Table cmd_sweep(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {});
    cap(ns, spec.tau.is_identity() ? 1 << 15 : 8192, "sweep");
    if (ns.front() < 2) throw bad_option("sweep: n must be >= 2");
    Table t{{"n", "logabs_det", "arg_det", "logabs_pred", "arg_pred", "ratio_minus_one_re", "ratio_minus_one_im"}, {}, {}};
    bool ambiguous = false;
    std::string source;
    for (const auto& r : ratio_sweep(spec, ns)) {
        std::vector<Cell> row{(long long)r.n};
        push_log(row, r.logdet);
        push_log(row, r.prediction);
        row.emplace_back(r.ratio_minus_one.real());
        row.emplace_back(r.ratio_minus_one.imag());
        t.rows.push_back(row);
        ambiguous = ambiguous || r.phase_ambiguous;
        if (source.find(to_string(r.source)) == std::string::npos) source += (source.empty() ? "" : "+") + std::string(to_string(r.source));
    }
    t.summary = {{"source", source}, {"phase_ambiguous", ambiguous}};
    return t;
}

Table cmd_fit(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {256, 512, 1024, 2048, 4096});
    cap(ns, 8192, "fit");
    const ExponentFit f = fit_exponent(spec, ns);
    const Complex target = -spec.beta * spec.beta;
    Table t{{"slope_re", "slope_im", "target_re", "target_im", "max_residual_re", "max_residual_im", "phase_ambiguous"}, {}, {}};
    t.rows.push_back({f.slope.real(), f.slope.imag(), target.real(), target.imag(), f.real_fit.max_residual,
                      f.imag_fit.max_residual, f.phase_ambiguous});
    return t;
}

Table cmd_jacobi(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {12, 24, 40});
    cap(ns, 2048, "jacobi");
    const int p = o.p.value_or(1);
    Table t{{"n", "p", "logabs_lhs", "arg_lhs", "logabs_rhs", "arg_rhs", "residual"}, {}, {}};
    for (int n : ns) {
        const JacobiReport r = jacobi_check(spec, n, p);
        std::vector<Cell> row{(long long)n, (long long)p};
        push_log(row, r.lhs);
        push_log(row, r.rhs);
        row.emplace_back(r.residual);
        t.rows.push_back(row);
    }
    return t;
}

Table cmd_corner(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {64, 128, 256, 512, 1024});
    cap(ns, 4096, "corner");
    const CornerScalingReport r = corner_scaling_check(spec, ns, o.p.value_or(1));
    Table t{{"n", "logabs_det_x", "arg_det_x", "logabs_constant", "arg_constant"}, {}, {}};
    for (const auto& row : r.rows) {
        std::vector<Cell> cells{(long long)row.n};
        push_log(cells, row.det_x);
        push_log(cells, row.constant);
        t.rows.push_back(cells);
    }
    t.summary = {{"slope", {r.slope.real(), r.slope.imag()}}, {"expected_slope", {r.expected_slope.real(), r.expected_slope.imag()}}};
    return t;
}

Table cmd_kernel(const Options&, const SymbolSpec& spec)
{
    std::vector<double> xi;
    for (int i = -24; i <= 24; ++i) xi.push_back(0.125 * i);
    const KernelTransform kt = kernel_hat_numeric(spec.beta, xi);
    Table t{{"xi", "numeric_re", "numeric_im", "closed_re", "closed_im"}, {}, {}};
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const Complex c = kernel_hat_closed(spec.beta, xi[i]);
        t.rows.push_back({xi[i], kt.value[i].real(), kt.value[i].imag(), c.real(), c.imag()});
    }
    return t;
}

Table cmd_ulemma(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {25, 50, 100, 200});
    cap(ns, 4096, "ulemma");
    if (ns.front() < 1) throw bad_option("ulemma: n must be >= 1");
    Table t{{"n", "u_re", "u_im", "u_ratio_re", "u_ratio_im", "v_re", "v_im", "v_ratio_re", "v_ratio_im"}, {}, {}};
    for (const auto& r : check_u_asymptotics(spec, ns))
        t.rows.push_back({(long long)r.n, r.u_hat.real(), r.u_hat.imag(), r.u_ratio.real(), r.u_ratio.imag(), r.v_hat.real(),
                          r.v_hat.imag(), r.v_ratio.real(), r.v_ratio.imag()});
    return t;
}

Table cmd_spectrum(const Options& o, const SymbolSpec& spec)
{
    const int n = single_size(o);
    if (n + 1 > max_eigen_dim) throw bad_option("spectrum: n + 1 must be <= 1024");
    const ToeplitzMatrix tm = build(spec, n);
    const SpectrumReport sr = eigenvalues(tm);
    if (!sr.converged) throw numerical_failure("spectrum: eigensolver did not converge");
    std::vector<Complex> ev = sr.eigenvalues;
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    Table t{{"index", "lambda_re", "lambda_im"}, {}, {}};
    for (std::size_t i = 0; i < ev.size(); ++i) t.rows.push_back({(long long)i, ev[i].real(), ev[i].imag()});
    t.summary = {{"trace_residual", sr.trace_residual}};
    if (!o.functional.empty()) {
        const Functional fs[] = {Functional::parse(o.functional)};
        const EmpiricalMeasure em = canonical_check(spec, tm, sr, fs);
        const auto& r = em.rows[0];
        t.summary["functional"] = {{"id", r.id},
                                   {"empirical", {r.empirical.real(), r.empirical.imag()}},
                                   {"symbol_side", {r.symbol_side.real(), r.symbol_side.imag()}},
                                   {"deviation", r.deviation}};
    }
    return t;
}

Table cmd_limset(const Options& o, const SymbolSpec& spec)
{
    const auto ns = sizes(o, {64, 128, 256, 512});
    for (int n : ns)
        if (n + 1 > max_eigen_dim) throw bad_option("limset: n + 1 must be <= 1024");
    Table t{{"n", "max_eig_to_range", "max_range_to_eig"}, {}, {}};
    for (int n : ns) {
        const SpectrumReport sr = eigenvalues(build(spec, n));
        if (!sr.converged) throw numerical_failure("limset: eigensolver did not converge");
        const LimitingSetReport r = limiting_set_distances(spec, n, sr.eigenvalues);
        t.rows.push_back({(long long)n, r.max_eig_to_range, r.max_range_to_eig});
    }
    return t;
}

int cmd_verify(const Options& o)
{
    Table t{{"id", "passed", "seconds", "detail"}, {}, {}};
    bool all = true;
    for (const auto& c : acceptance::criteria()) {
        const acceptance::Outcome r = acceptance::run_one(c);
        std::fprintf(stderr, "%-4s %s  %6.2fs  %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        t.rows.push_back({r.id, r.passed, r.seconds, r.detail});
        all = all && r.passed;
    }
    if (!o.out.empty() || o.format == "json") {
        std::optional<nlohmann::ordered_json> meta;
        if (!o.no_meta) meta = nlohmann::ordered_json{{"generator", "fhlab"}, {"version", version}, {"command", "verify"}};
        const std::string text = o.format == "json" ? render_json(t, meta) : render_csv(t);
        if (o.out.empty()) std::cout << text;
        else std::ofstream(o.out) << text;
    }
    return all ? ok : acceptance_failed;
}

using Handler = Table (*)(const Options&, const SymbolSpec&);

Handler lookup(const std::string& c)
{
    if (c == "coeffs") return cmd_coeffs;
    if (c == "constants") return cmd_constants;
    if (c == "det") return cmd_det;
    if (c == "sweep") return cmd_sweep;
    if (c == "fit") return cmd_fit;
    if (c == "oracle") return cmd_oracle;
    if (c == "jacobi") return cmd_jacobi;
    if (c == "corner") return cmd_corner;
    if (c == "kernel") return cmd_kernel;
    if (c == "ulemma") return cmd_ulemma;
    if (c == "spectrum") return cmd_spectrum;
    if (c == "limset") return cmd_limset;
    return nullptr;
}

int run(const Options& o)
{
    if (o.format != "csv" && o.format != "json") throw bad_option("--format must be csv or json");
    if (o.command == "verify") return cmd_verify(o);
    const Handler h = lookup(o.command);
    if (!h) throw bad_option("unknown command '" + o.command + "'");
    if (o.symbol.empty()) throw bad_option(o.command + ": --symbol is required");
    if (o.p && *o.p < 1) throw bad_option("--p must be >= 1");
    if (!o.functional.empty() && o.command != "spectrum") throw bad_option("--functional only applies to spectrum");

    const SymbolSpec spec = load_symbol(o.symbol);
    const Table t = h(o, spec);

    std::string text;
    if (o.format == "json") {
        std::optional<nlohmann::ordered_json> meta;
        if (!o.no_meta) {
            nlohmann::ordered_json sym = symbol_to_json(spec);
            meta = nlohmann::ordered_json{{"generator", "fhlab"}, {"version", version}, {"command", o.command}, {"symbol", sym}};
        }
        text = render_json(t, meta);
    } else {
        text = render_csv(t);
        if (!t.summary.is_null()) std::cerr << json_value(t.summary) << "\n";
    }
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw bad_option("cannot write '" + o.out + "'");
        out << text;
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Toeplitz determinants and spectra for symbols (-z)^beta tau(z)", "fhlab"};
    Options o;
    app.add_option("command", o.command, "coeffs|constants|det|sweep|fit|oracle|jacobi|corner|kernel|ulemma|spectrum|limset|verify")
        ->required();
    app.add_option("--symbol", o.symbol, "symbol JSON file, or inline JSON");
    app.add_option("--n", o.n, "single size");
    app.add_option("--n-list", o.n_list, "comma separated sizes");
    app.add_option("--dyadic", o.dyadic, "lo:hi, doubling from lo");
    app.add_option("--p", o.p, "corner block size");
    app.add_option("--functional", o.functional, "pow1..pow4, abs2, re, im, dist2:re,im");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--out", o.out, "output path (default stdout)");
    app.add_flag("--no-meta", o.no_meta, "omit the JSON metadata header");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_config;
    }

    try {
        return run(o);
    } catch (const bad_option& e) {
        std::cerr << "fhlab: " << e.what() << "\n";
        return bad_config;
    } catch (const config_error& e) {
        std::cerr << "fhlab: " << e.what() << "\n";
        return bad_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fhlab: " << e.what() << "\n";
        return bad_config;
    } catch (const std::domain_error& e) {
        std::cerr << "fhlab: " << e.what() << "\n";
        return bad_config;
    } catch (const std::exception& e) {
        std::cerr << "fhlab: numerical failure: " << e.what() << "\n";
        return numerical;
    }
}
