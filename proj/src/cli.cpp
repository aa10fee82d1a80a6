#include "kou/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "kou/errors.hpp"
#include "kou/inversion.hpp"
#include "kou/montecarlo.hpp"
#include "kou/quartic.hpp"
#include "kou/transforms.hpp"

namespace kou::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Record {
    Record(std::string m, std::string q) : method(std::move(m)), quantity(std::move(q)) {}

    std::string method;
    std::string quantity;
    double value = std::numeric_limits<double>::quiet_NaN();
    double err_estimate = std::numeric_limits<double>::quiet_NaN();
    std::optional<Interval> ci;
    double elapsed_ms = 0.0;
    bool diverged = false;
    std::string error;
    Json config;
};

struct Options {
    KouParams params;
    double t = 0.0;
    double b = 0.0;
    double a = 0.0;
    double A = 14.0;
    std::optional<double> u;
    int n = 12;
    int B = 4;
    int gaver_n = 10;
    int gaver_B = 2;
    int digits = 30;
    int grid = 2000;
    std::int64_t reps = 20000;
    std::uint64_t seed = 1;
    double ci = 0.95;
    int workers = 1;
    std::string format = "text";
    std::string out;
};

class Stopwatch {
public:
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sig7(double x) {
    std::ostringstream s;
    s << std::setprecision(7) << x;
    return s.str();
}

std::string full(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

Json model_config(const std::string& command, const Options& o) {
    return Json{{"command", command}, {"mu", o.params.mu},     {"sigma", o.params.sigma}, {"lambda", o.params.lambda},
                {"eta1", o.params.eta1}, {"eta2", o.params.eta2}, {"p", o.params.p},         {"t", o.t},
                {"b", o.b}};
}

double resolved_A(const Options& o) { return o.u ? 2.0 * o.t * *o.u : o.A; }

TransformInputs inputs_of(const Options& o) { return {o.params, o.b, o.a}; }

Record euler_record(const Options& o, const std::string& quantity) {
    const EulerConfig cfg{resolved_A(o), o.n, o.B};
    Record r("euler", quantity);
    r.config = model_config(quantity, o);
    if (quantity == "joint") r.config["a"] = o.a;
    r.config["A"] = cfg.A;
    r.config["n"] = cfg.n;
    r.config["B"] = cfg.B;

    const TransformInputs inputs = inputs_of(o);
    validate_inputs(inputs);
    const Stopwatch clock;
    const Estimate e = quantity == "fpt"
                           ? euler_invert([&](Complex s) { return fpt_transform(inputs, s); }, o.t, cfg)
                           : euler_invert([&](Complex s) { return joint_transform(inputs, s); }, o.t, cfg);
    r.elapsed_ms = clock.ms();
    r.value = e.value;
    r.err_estimate = e.err_estimate;
    return r;
}

Record gaver_record(const Options& o, int n, int B, int digits) {
    Record r("gaver", "fpt");
    r.config = model_config("gaver", o);
    r.config["n"] = n;
    r.config["B"] = B;
    r.config["digits"] = digits;

    TransformInputs inputs = inputs_of(o);
    inputs.a = inputs.b;
    validate_inputs(inputs);
    const Stopwatch clock;
    const Estimate e = gaver_stehfest(
        [&](const Precise& s) { return fpt_transform_real<Precise>(inputs, s); }, o.t, {n, B, digits});
    r.elapsed_ms = clock.ms();
    r.value = e.value;
    r.err_estimate = e.err_estimate;
    r.diverged = e.diverged;
    return r;
}

std::vector<Record> mc_records(const Options& o) {
    const McConfig cfg{o.grid, o.reps, o.seed, o.ci, o.workers};
    Json config = model_config("mc", o);
    config["a"] = o.a;
    config["grid"] = o.grid;
    config["reps"] = o.reps;
    config["seed"] = o.seed;
    config["ci"] = o.ci;

    const Stopwatch clock;
    const McResult m = estimate_probabilities(o.params, o.t, o.a, o.b, cfg);
    const double ms = clock.ms();
    auto make = [&](const std::string& quantity, double value, Interval ci) {
        Record r("mc", quantity);
        r.value = value;
        r.err_estimate = 0.5 * (ci.high - ci.low);
        r.ci = ci;
        r.elapsed_ms = ms;
        r.config = config;
        return r;
    };
    return {make("fpt", m.p_fpt, m.ci_fpt), make("joint", m.p_joint, m.ci_joint)};
}

Json record_json(const Record& r) {
    Json j{{"method", r.method}, {"quantity", r.quantity}};
    j["value"] = std::isfinite(r.value) ? Json(r.value) : Json(nullptr);
    j["err_estimate"] = std::isfinite(r.err_estimate) ? Json(r.err_estimate) : Json(nullptr);
    j["ci"] = r.ci ? Json::array({r.ci->low, r.ci->high}) : Json(nullptr);
    j["elapsed_ms"] = r.elapsed_ms;
    j["diverged"] = r.diverged;
    if (!r.error.empty()) j["error"] = r.error;
    j["config"] = r.config;
    return j;
}

// Text output drops timings outside bench so repeated runs print the same bytes.
void write_records(std::ostream& os, const std::vector<Record>& records, const std::string& format, bool timings) {
    if (format == "json") {
        Json all = Json::array();
        for (const auto& r : records) all.push_back(record_json(r));
        os << all.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        os << "method,quantity,value,err_estimate,ci_low,ci_high,elapsed_ms\n";
        for (const auto& r : records) {
            os << r.method << ',' << r.quantity << ',' << (r.error.empty() ? full(r.value) : "") << ','
               << (r.error.empty() ? full(r.err_estimate) : "") << ',' << (r.ci ? full(r.ci->low) : "") << ','
               << (r.ci ? full(r.ci->high) : "") << ',' << full(r.elapsed_ms) << '\n';
        }
        return;
    }
    for (const auto& r : records) {
        os << r.method << ' ' << r.quantity;
        if (r.method == "gaver" && timings) {
            os << " n=" << r.config["n"].get<int>() << " digits=" << r.config["digits"].get<int>();
        }
        if (!r.error.empty()) {
            os << " failed: " << r.error << '\n';
            continue;
        }
        os << " value=" << sig7(r.value) << " err_estimate=" << sig7(r.err_estimate);
        if (r.ci) os << " ci=[" << sig7(r.ci->low) << ", " << sig7(r.ci->high) << ']';
        if (timings) os << " elapsed_ms=" << sig7(r.elapsed_ms);
        if (r.diverged) os << " diverged";
        os << '\n';
    }
}

void add_model_flags(CLI::App* app, Options& o) {
    app->add_option("--mu", o.params.mu, "drift")->required();
    app->add_option("--sigma", o.params.sigma, "diffusion volatility")->required();
    app->add_option("--lambda", o.params.lambda, "jump intensity")->required();
    app->add_option("--eta1", o.params.eta1, "upward jump rate")->required();
    app->add_option("--eta2", o.params.eta2, "downward jump rate")->required();
    app->add_option("--p", o.params.p, "probability of an upward jump")->required();
    app->add_option("--t", o.t, "horizon")->required();
    app->add_option("--b", o.b, "barrier")->required();
}

void add_output_flags(CLI::App* app, Options& o) {
    app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app->add_option("--out", o.out, "write output to a file");
}

void add_euler_flags(CLI::App* app, Options& o) {
    app->add_option("--A", o.A, "discretization parameter, u = A/(2t)");
    app->add_option("--n", o.n, "Euler average length");
    app->add_option("--B", o.B, "burn-in partial sums");
    app->add_option("--u", o.u, "contour abscissa, overrides --A");
}

void add_mc_flags(CLI::App* app, Options& o) {
    app->add_option("--grid", o.grid, "time steps per path");
    app->add_option("--reps", o.reps, "number of paths");
    app->add_option("--seed", o.seed, "root seed");
    app->add_option("--ci", o.ci, "confidence level");
    app->add_option("--workers", o.workers, "worker threads");
}

// Positional form: mu sigma lambda eta1 eta2 p t b [a] A n B.
int run_compat(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.size() < 2 || (args[1] != "fpt" && args[1] != "joint")) {
        err << "usage: koufpt --compat {fpt|joint} mu sigma lambda eta1 eta2 p t b [a] A n B\n";
        return kUsage;
    }
    const bool joint = args[1] == "joint";
    const std::size_t expected = joint ? 12 : 11;
    if (args.size() != expected + 2) {
        err << "compat " << args[1] << " expects " << expected << " numbers\n";
        return kUsage;
    }
    std::vector<double> v;
    try {
        for (std::size_t i = 2; i < args.size(); ++i) v.push_back(std::stod(args[i]));
    } catch (const std::exception&) {
        err << "compat arguments must be numbers\n";
        return kUsage;
    }
    Options o;
    o.params = {v[0], v[1], v[2], v[3], v[4], v[5]};
    o.t = v[6];
    o.b = v[7];
    std::size_t next = 8;
    o.a = joint ? v[next++] : o.b;
    o.A = v[next];
    o.n = static_cast<int>(v[next + 1]);
    o.B = static_cast<int>(v[next + 2]);
    try {
        out << "result=" << sig7(euler_record(o, args[1]).value) << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure (euler): " << e.what() << '\n';
        return kNumerical;
    }
    return kSuccess;
}

int emit(const std::vector<Record>& records, const Options& o, bool timings, std::ostream& out, std::ostream& err) {
    if (o.out.empty()) {
        write_records(out, records, o.format, timings);
        return kSuccess;
    }
    std::ofstream file(o.out);
    if (!file) {
        err << "cannot open " << o.out << '\n';
        return kUsage;
    }
    write_records(file, records, o.format, timings);
    return kSuccess;
}

int run_resultant(const Options& o, std::ostream& out) {
    validate_params(o.params);
    const ResultantPoly r = resultant_in_alpha(o.params);
    const std::vector<Complex> roots = singular_points(o.params);
    const auto ratios = r.ratio_normalized();
    if (o.format == "json") {
        Json j{{"roots", Json::array()}, {"coefficients", Json::array()}, {"leading", {r.coeffs[5].real(), r.coeffs[5].imag()}}};
        for (Complex z : roots) j["roots"].push_back({z.real(), z.imag()});
        for (Complex c : ratios) j["coefficients"].push_back({c.real(), c.imag()});
        j["config"] = model_config("resultant", o);
        j["config"].erase("t");
        j["config"].erase("b");
        out << j.dump(2) << '\n';
        return kSuccess;
    }
    if (o.format == "csv") {
        out << "kind,index,re,im\n";
        for (std::size_t i = 0; i < roots.size(); ++i) out << "root," << i << ',' << full(roots[i].real()) << ',' << full(roots[i].imag()) << '\n';
        for (std::size_t i = 0; i < ratios.size(); ++i) out << "coefficient," << i << ',' << full(ratios[i].real()) << ',' << full(ratios[i].imag()) << '\n';
        return kSuccess;
    }
    out << "singular points (roots of R):\n";
    for (Complex z : roots) {
        out << "  " << sig7(z.real());
        if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z))) {
            out << (z.imag() < 0 ? " - " : " + ") << sig7(std::abs(z.imag())) << 'i';
        }
        out << '\n';
    }
    out << "R / leading coefficient, highest power first:\n";
    for (Complex c : ratios) out << "  " << sig7(c.real()) << '\n';
    out << "leading coefficient: " << sig7(r.coeffs[5].real()) << '\n';
    return kSuccess;
}

std::vector<Record> bench(const Options& o, bool& failed) {
    std::vector<Record> rows;
    auto guarded = [&](Record fallback, auto&& compute) {
        try {
            for (auto& r : compute()) rows.push_back(std::move(r));
        } catch (const std::exception& e) {
            fallback.error = e.what();
            rows.push_back(std::move(fallback));
            failed = true;
        }
    };
    for (const char* q : {"fpt", "joint"}) {
        guarded(Record("euler", q), [&] { return std::vector<Record>{euler_record(o, q)}; });
    }
    for (int digits : {30, 40, 50}) {
        for (int n : {10, 20, 30, 40, 50, 60}) {
            Record fallback("gaver", "fpt");
            fallback.config = Json{{"n", n}, {"digits", digits}};
            guarded(fallback, [&] { return std::vector<Record>{gaver_record(o, n, o.gaver_B, digits)}; });
        }
    }
    guarded(Record("mc", "fpt"), [&] { return mc_records(o); });
    return rows;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (!args.empty() && args[0] == "--compat") return run_compat(args, out, err);

    CLI::App app{"First-passage probabilities for the Kou jump-diffusion", "koufpt"};
    app.require_subcommand(1);
    Options o;

    auto* fpt = app.add_subcommand("fpt", "P(tau_b <= t) by Euler inversion");
    add_model_flags(fpt, o);
    add_euler_flags(fpt, o);
    add_output_flags(fpt, o);

    auto* joint = app.add_subcommand("joint", "P(X_t >= a, tau_b <= t) by Euler inversion");
    add_model_flags(joint, o);
    joint->add_option("--a", o.a, "terminal threshold")->required();
    add_euler_flags(joint, o);
    add_output_flags(joint, o);

    auto* gaver = app.add_subcommand("gaver", "P(tau_b <= t) by Gaver-Stehfest");
    add_model_flags(gaver, o);
    gaver->add_option("--n", o.gaver_n, "Stehfest order");
    gaver->add_option("--B", o.gaver_B, "burn-in");
    gaver->add_option("--digits", o.digits, "working decimal digits");
    add_output_flags(gaver, o);

    auto* mc = app.add_subcommand("mc", "both probabilities by Monte Carlo");
    add_model_flags(mc, o);
    mc->add_option("--a", o.a, "terminal threshold")->required();
    add_mc_flags(mc, o);
    add_output_flags(mc, o);

    auto* benchmark = app.add_subcommand("bench", "Euler, Gaver sweep and Monte Carlo side by side");
    add_model_flags(benchmark, o);
    benchmark->add_option("--a", o.a, "terminal threshold")->required();
    add_euler_flags(benchmark, o);
    benchmark->add_option("--gaver-B", o.gaver_B, "Gaver burn-in");
    add_mc_flags(benchmark, o);
    add_output_flags(benchmark, o);

    auto* resultant = app.add_subcommand("resultant", "singular points of the characteristic quartic");
    resultant->add_option("--mu", o.params.mu)->required();
    resultant->add_option("--sigma", o.params.sigma)->required();
    resultant->add_option("--lambda", o.params.lambda)->required();
    resultant->add_option("--eta1", o.params.eta1)->required();
    resultant->add_option("--eta2", o.params.eta2)->required();
    resultant->add_option("--p", o.params.p)->required();
    add_output_flags(resultant, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    std::string method = "euler";
    try {
        if (*fpt) return emit({euler_record(o, "fpt")}, o, false, out, err);
        if (*joint) return emit({euler_record(o, "joint")}, o, false, out, err);
        if (*gaver) {
            method = "gaver";
            if (o.digits < 30 && o.gaver_n > 7) {
                err << "warning: fewer than 30 digits with n > 7; expect cancellation\n";
            }
            const Record r = gaver_record(o, o.gaver_n, o.gaver_B, o.digits);
            const int code = emit({r}, o, false, out, err);
            if (code != kSuccess) return code;
            if (r.diverged) {
                err << "gaver diverged: |value| > 10\n";
                return kDiverged;
            }
            return kSuccess;
        }
        if (*mc) {
            method = "mc";
            return emit(mc_records(o), o, false, out, err);
        }
        if (*benchmark) {
            method = "bench";
            validate_inputs(inputs_of(o));
            bool failed = false;
            const auto rows = bench(o, failed);
            const int code = emit(rows, o, true, out, err);
            if (code != kSuccess) return code;
            return failed ? kNumerical : kSuccess;
        }
        method = "resultant";
        return run_resultant(o, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure (" << method << "): " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace kou::cli
