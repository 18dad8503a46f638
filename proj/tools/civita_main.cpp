// Command-line front end: eval, measure, integrate, delta, suite.
// JSON results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 verification/computation failure, 2 usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "civita/delta.hpp"
#include "civita/error.hpp"
#include "civita/integrate.hpp"
#include "civita/json_io.hpp"
#include "civita/lc_expr.hpp"
#include "civita/suites.hpp"

using namespace civita;
using nlohmann::json;

namespace {

struct RunConfig {
    int depth = 16;
    double zeta = 1e-13;
    double tol = 1e-9;
    std::string mode = "float";
    std::string output = "json";
    unsigned seed = 0;

    Config lc() const {
        Config cfg;
        cfg.depth = depth;
        cfg.zeta = mode == "exact" ? 0.0 : zeta;
        return cfg;
    }
    IntegrateOptions integrate() const {
        IntegrateOptions o;
        o.tol = tol;
        o.quad_tol = std::min(tol, 1e-10);
        o.cfg = lc();
        return o;
    }
};

// accepts inline JSON or @path
json load_json_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
        return json::parse(in);
    }
    return json::parse(arg);
}

// "[a,b]" with LC-expression endpoints
Interval parse_interval_text(const std::string& text, const Config& cfg) {
    std::string s = text;
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::size_t depth = 0, split = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw std::invalid_argument("interval must look like [lo,hi]");
    LCValue lo = eval_lc_expression(s.substr(0, split), cfg);
    LCValue hi = eval_lc_expression(s.substr(split + 1), cfg);
    if (lo.kind != LCValue::Kind::Number || hi.kind != LCValue::Kind::Number)
        throw std::invalid_argument("interval endpoints must be field elements");
    return Interval(lo.number, hi.number);
}

void emit(const json& j, const RunConfig& rc) {
    if (rc.output == "text") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
}

MeasurableSet random_batch_set(std::mt19937& rng, const Config& cfg) {
    std::uniform_int_distribution<int> parts(1, 5);
    std::uniform_int_distribution<int> gap(1, 5);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> infml(0, 2);
    int k = parts(rng);
    std::int64_t cursor = -40;
    std::vector<Interval> ivs;
    for (int i = 0; i < k; ++i) {
        std::int64_t lo2 = cursor * 2 + 2 * gap(rng);
        std::int64_t hi2 = lo2 + len(rng);
        auto mk = [&](std::int64_t half) {
            Rational r(half, 2);
            return LCNumber::real(cfg.exact() ? Coeff(r) : Coeff(r.to_double()), cfg);
        };
        LCNumber hi_lc = mk(hi2);
        if (infml(rng) == 0) hi_lc = hi_lc + LCNumber::d(cfg);
        ivs.emplace_back(mk(lo2), hi_lc);
        cursor = (hi2 + 1) / 2;
    }
    return MeasurableSet(std::move(ivs));
}

int cmd_eval(const std::string& expr, const RunConfig& rc) {
    LCValue v = eval_lc_expression(expr, rc.lc());
    json out{{"schema", 1}, {"result", v.str()}};
    if (v.kind == LCValue::Kind::Number) out["kind"] = "number";
    if (v.kind == LCValue::Kind::Extended) out["kind"] = "standard-part";
    if (v.kind == LCValue::Kind::Exponent) out["kind"] = "valuation";
    emit(out, rc);
    return 0;
}

int cmd_measure(const std::string& set_arg, const std::string& scale_arg,
                const std::string& translate_arg, int batch, const RunConfig& rc) {
    Config cfg = rc.lc();
    if (batch > 0) {
        std::mt19937 rng(rc.seed);
        if (rc.output == "csv") {
            std::cout << measure_csv_header() << "\n";
            for (int i = 0; i < batch; ++i)
                std::cout << measure_csv_row("set-" + std::to_string(i),
                                             random_batch_set(rng, cfg))
                          << "\n";
        } else {
            json rows = json::array();
            for (int i = 0; i < batch; ++i) {
                MeasurableSet A = random_batch_set(rng, cfg);
                Shadow s = shadow(A);
                rows.push_back(json{{"id", i},
                                    {"m", m_measure(A).str()},
                                    {"m_L", ext_real_to_json(mL_measure(A))},
                                    {"shadow_measure",
                                     lebesgue_measure(s.intervals).to_double()}});
            }
            emit(json{{"schema", 1}, {"rows", rows}}, rc);
        }
        return 0;
    }

    if (set_arg.empty()) throw CLI::ValidationError("measure", "--set or --batch required");
    MeasurableSet A = measurable_set_from_json(load_json_arg(set_arg), cfg);
    if (!translate_arg.empty()) {
        LCValue x = eval_lc_expression(translate_arg, cfg);
        A = translate(A, x.number);
    }
    json out{{"schema", 1}};
    if (!scale_arg.empty()) {
        LCValue x = eval_lc_expression(scale_arg, cfg);
        ScaleReport rep = scale_report(A, x.number);
        out["scale"] = scale_report_to_json(rep);
        A = rep.set;
    }
    out["m"] = m_measure(A).str();
    out["m_L"] = ext_real_to_json(mL_measure(A));
    bool finite = true;
    for (const auto& iv : A.intervals())
        finite = finite && is_finite(iv.lo) && is_finite(iv.hi);
    if (finite) out["shadow"] = shadow_to_json(shadow(A));
    emit(out, rc);
    return 0;
}

int cmd_integrate(const std::string& ext_expr, int order, const std::string& power_arg,
                  const std::string& simple_json, const std::string& step_json,
                  const std::string& interval_text, const std::string& region_json,
                  const std::string& limit_kind, const std::string& q_text,
                  const RunConfig& rc) {
    // both "--power -1" and "--power a=-1" are accepted
    std::string power = power_arg.rfind("a=", 0) == 0 ? power_arg.substr(2) : power_arg;
    Config cfg = rc.lc();
    IntegrateOptions opts = rc.integrate();

    // integrand
    std::optional<MIntegrand> integrand;
    int sources = (!ext_expr.empty()) + (!power.empty()) + (!simple_json.empty()) +
                  (!step_json.empty());
    if (sources != 1)
        throw CLI::ValidationError("integrate",
                                   "exactly one of --ext/--power/--simple/--step");
    if (!ext_expr.empty() || !power.empty()) {
        RealExpr e;
        double lo = -1e300, hi = 1e300;
        if (!power.empty()) {
            double a = std::stod(power);
            e = a == static_cast<long long>(a)
                    ? expr_pow_int(expr_var(), static_cast<long long>(a))
                    : expr_pow_real(expr_var(), a);
            lo = 1e-300;  // powers live on the positive axis
        } else {
            e = parse_expr(ext_expr);
        }
        std::optional<int> k;
        if (order >= 0) k = order;
        if (!k && !is_entire(e)) k = 0;
        integrand = ExtensionFn(e, k, lo, hi);
    } else if (!simple_json.empty()) {
        integrand = piecewise_from_json(load_json_arg(simple_json), cfg);
    } else {
        integrand = step_fn_from_json(load_json_arg(step_json), cfg);
    }

    // region
    std::optional<Interval> window;
    if (!interval_text.empty()) window = parse_interval_text(interval_text, cfg);

    json out;
    if (!limit_kind.empty()) {
        Rational q(0);
        if (!q_text.empty()) {
            LCValue qv = eval_lc_expression(q_text, Config{cfg.depth, 0.0});
            if (qv.number.is_zero())
                q = Rational(0);
            else if (qv.number.terms().size() == 1 && qv.number.leading_coeff().exact() &&
                     *qv.number.valuation() == Rational(0))
                q = qv.number.leading_coeff().rat();
            else
                throw CLI::ValidationError("integrate", "--q must be rational");
        }
        Region region = limit_kind == "Aq"       ? Region::aq(q, window)
                        : limit_kind == "Bq"     ? Region::bq(q, window)
                        : limit_kind == "finite" ? Region::finite_part()
                                                 : Region::full();
        LimitReport rep = m_integral_limit(*integrand, region, LimitSchedule{}, opts);
        out = limit_report_to_json(rep);
    } else {
        Region region = Region::measurable(MeasurableSet(cfg));
        if (!region_json.empty())
            region = Region::measurable(
                measurable_set_from_json(load_json_arg(region_json), cfg));
        else if (window)
            region = Region::interval(*window);
        else
            throw CLI::ValidationError("integrate", "--interval or --region required");
        IntegralReport rep = m_integral_report(*integrand, region, opts);
        out = integral_report_to_json(rep);
    }
    emit(out, rc);
    return 0;
}

int cmd_delta(const std::string& fexpr, const std::string& r_text, int k, int m, int order,
              const std::string& h_text, const RunConfig& rc) {
    Config cfg = rc.lc();
    LCValue r = eval_lc_expression(r_text, cfg);
    LCNumber h = h_text.empty() ? LCNumber::d(cfg) : eval_lc_expression(h_text, cfg).number;
    auto [spec, bump] = make_delta(r.number, h, k);

    RealExpr e = parse_expr(fexpr);
    int j = order >= 0 ? order : std::max(m, 3);
    double rho = standard_part(r.number).to_double();
    ExtensionFn lift(e, j, rho - 2.0, rho + 2.0);

    PairingReport rep = m == 0 ? pair_delta_report(spec, lift, rc.tol)
                               : pair_delta_derivative_report(spec, m, lift, rc.tol);
    if (rc.output == "csv") {
        std::cout << "function,r,k,m,expected,computed,residual\n";
        std::printf("\"%s\",%.17g,%d,%d,%.17g,%.17g,%.3g\n", fexpr.c_str(), rho, k, m,
                    rep.expected, rep.computed, rep.residual);
    } else {
        emit(json{{"schema", 1},
                  {"function", fexpr},
                  {"r", rho},
                  {"k", k},
                  {"m", m},
                  {"order", j},
                  {"expected", rep.expected},
                  {"computed", rep.computed},
                  {"residual", rep.residual},
                  {"tolerance", rep.tolerance},
                  {"within_tol", rep.within_tol}},
             rc);
    }
    return rep.within_tol ? 0 : 1;
}

int cmd_suite(const std::string& name, const RunConfig& rc) {
    std::vector<SuiteResult> results;
    if (name == "all" || name.empty()) {
        results = run_all_suites(rc.seed);
    } else {
        results.push_back(run_suite(name, rc.seed));
    }
    json rows = json::array();
    bool ok = true;
    long checks = 0, failures = 0;
    for (const auto& r : results) {
        rows.push_back(json{{"name", r.name},
                            {"passed", r.passed},
                            {"checks", r.checks},
                            {"failures", r.failures},
                            {"seconds", r.seconds},
                            {"note", r.note}});
        ok = ok && r.passed;
        checks += r.checks;
        failures += r.failures;
        std::fprintf(stderr, "%s %s (%ld checks, %ld failures, %.2fs)\n",
                     r.passed ? "PASS" : "FAIL", r.name.c_str(), r.checks, r.failures,
                     r.seconds);
    }
    emit(json{{"schema", 1},
              {"suites", rows},
              {"passed", ok},
              {"checks", checks},
              {"failures", failures}},
         rc);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levi-Civita field arithmetic, real-valued measure and integration"};
    app.require_subcommand(1);

    RunConfig rc;
    app.add_option("--depth", rc.depth, "exponent levels kept beyond the leading one")
        ->check(CLI::Range(4, 256))
        ->capture_default_str();
    app.add_option("--zeta", rc.zeta, "coefficient zero threshold (float mode)")
        ->capture_default_str();
    app.add_option("--tol", rc.tol, "real comparison tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--mode", rc.mode, "coefficient mode")
        ->check(CLI::IsMember({"float", "exact"}))
        ->capture_default_str();
    app.add_option("--seed", rc.seed, "seed for randomized batches")->capture_default_str();
    app.add_option("--output", rc.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    std::string eval_expr;
    CLI::App* eval = app.add_subcommand("eval", "evaluate an LC arithmetic expression");
    eval->fallthrough();
    eval->add_option("expr", eval_expr, "expression over numbers and d")->required();

    std::string set_arg, scale_arg, translate_arg;
    int batch = 0;
    CLI::App* measure = app.add_subcommand("measure", "measures and shadows of a set");
    measure->fallthrough();
    measure->add_option("--set", set_arg, "MeasurableSet as JSON (or @file)");
    measure->add_option("--scale", scale_arg, "scale the set by an LC factor first");
    measure->add_option("--translate", translate_arg, "translate the set first");
    measure->add_option("--batch", batch, "emit rows for N random sets");

    std::string ext_expr, power, simple_json, step_json, interval_text, region_json,
        limit_kind, q_text;
    int order = -1;
    CLI::App* integrate = app.add_subcommand("integrate", "real-valued integrals");
    integrate->fallthrough();
    integrate->add_option("--ext", ext_expr, "real expression to lift");
    integrate->add_option("--order", order, "Taylor order of the lift");
    integrate->add_option("--power", power, "integrate x^a for a real a");
    integrate->add_option("--simple", simple_json, "piecewise simple function JSON");
    integrate->add_option("--step", step_json, "step function JSON");
    integrate->add_option("--interval", interval_text, "integration interval [lo,hi]");
    integrate->add_option("--region", region_json, "MeasurableSet region JSON");
    integrate->add_option("--limit", limit_kind, "limit region")
        ->check(CLI::IsMember({"Aq", "Bq", "finite", "full"}));
    integrate->add_option("--q", q_text, "valuation cut for A(q)/B(q)");

    std::string dfun = "sin(x)", dr = "0", dh;
    int dk = 3, dm = 0, dorder = -1;
    CLI::App* delta = app.add_subcommand("delta", "Dirac-like pairings");
    delta->fallthrough();
    delta->add_option("--f", dfun, "real function")->capture_default_str();
    delta->add_option("--r", dr, "center (LC expression)")->capture_default_str();
    delta->add_option("--k", dk, "bump smoothness")->check(CLI::Range(0, 16))
        ->capture_default_str();
    delta->add_option("--m", dm, "derivative order to pair")->check(CLI::Range(0, 16))
        ->capture_default_str();
    delta->add_option("--order", dorder, "Taylor order of the lift (default max(m,3))");
    delta->add_option("--width", dh, "half width (default d)");

    std::string suite_name = "all";
    CLI::App* suite = app.add_subcommand("suite", "run verification suites");
    suite->fallthrough();
    suite->add_option("name", suite_name, "suite name or 'all'")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(eval_expr, rc);
        if (*measure) return cmd_measure(set_arg, scale_arg, translate_arg, batch, rc);
        if (*integrate)
            return cmd_integrate(ext_expr, order, power, simple_json, step_json,
                                 interval_text, region_json, limit_kind, q_text, rc);
        if (*delta) return cmd_delta(dfun, dr, dk, dm, dorder, dh, rc);
        if (*suite) return cmd_suite(suite_name, rc);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "json error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
