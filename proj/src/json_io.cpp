#include "civita/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace civita {

namespace {

LCNumber number_from_json(const json& j, const Config& cfg) {
    if (j.is_string()) return parse_number(j.get<std::string>(), cfg);
    if (j.is_number_integer())
        return LCNumber::real(cfg.exact() ? Coeff(Rational(j.get<std::int64_t>()))
                                          : Coeff(static_cast<double>(j.get<std::int64_t>())),
                              cfg);
    if (j.is_number()) return LCNumber::real(Coeff(j.get<double>()), cfg);
    throw std::invalid_argument("expected an LC number as text or numeric literal");
}

json number_to_json(const LCNumber& x) { return x.str(); }

} // namespace

json coeff_to_json(const Coeff& c) { return c.str(); }

Coeff coeff_from_json(const json& j, const Config& cfg) {
    LCNumber n = number_from_json(j, cfg);
    if (!n.is_zero() && (n.terms().size() != 1 || *n.valuation() != Rational(0)))
        throw std::invalid_argument("expected a real constant");
    return n.coefficient(Rational(0));
}

json ext_real_to_json(const ExtReal& e) {
    json j;
    j["text"] = e.str();
    if (e.finite())
        j["value"] = e.value.to_double();
    else
        j["value"] = nullptr;
    return j;
}

json interval_to_json(const Interval& iv) {
    return json{{"lo", number_to_json(iv.lo)},
                {"hi", number_to_json(iv.hi)},
                {"lo_closed", iv.lo_closed},
                {"hi_closed", iv.hi_closed}};
}

Interval interval_from_json(const json& j, const Config& cfg) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("interval array needs two endpoints");
        return Interval(number_from_json(j[0], cfg), number_from_json(j[1], cfg));
    }
    return Interval(number_from_json(j.at("lo"), cfg), number_from_json(j.at("hi"), cfg),
                    j.value("lo_closed", true), j.value("hi_closed", true));
}

json measurable_set_to_json(const MeasurableSet& A) {
    json ivs = json::array();
    for (const auto& iv : A.intervals()) ivs.push_back(interval_to_json(iv));
    json j{{"intervals", std::move(ivs)}};
    if (A.tail())
        j["tail"] = json{{"bound_exponent", A.tail()->bound_exponent.str()},
                         {"description", A.tail()->description}};
    return j;
}

namespace {

Rational rational_from_text(const std::string& s) {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

} // namespace

MeasurableSet measurable_set_from_json(const json& j, const Config& cfg) {
    std::vector<Interval> ivs;
    const json& arr = j.is_array() ? j : j.at("intervals");
    for (const auto& item : arr) ivs.push_back(interval_from_json(item, cfg));
    std::optional<TailCertificate> tail;
    if (j.is_object() && j.contains("tail"))
        tail = TailCertificate{rational_from_text(j["tail"].at("bound_exponent")),
                               j["tail"].value("description", "")};
    return MeasurableSet(std::move(ivs), std::move(tail));
}

json real_set_to_json(const RealSet& R) {
    json arr = json::array();
    for (const auto& iv : R.intervals())
        arr.push_back(json{{"lo", iv.lo.str()},
                           {"hi", iv.hi.str()},
                           {"lo_closed", iv.lo_closed},
                           {"hi_closed", iv.hi_closed}});
    return json{{"intervals", std::move(arr)}};
}

RealSet real_set_from_json(const json& j, const Config& cfg) {
    std::vector<RealInterval> ivs;
    const json& arr = j.is_array() ? j : j.at("intervals");
    for (const auto& item : arr) {
        if (item.is_array()) {
            if (item.size() != 2)
                throw std::invalid_argument("real interval array needs two endpoints");
            ivs.push_back({coeff_from_json(item[0], cfg), coeff_from_json(item[1], cfg),
                           true, true});
        } else {
            ivs.push_back({coeff_from_json(item.at("lo"), cfg),
                           coeff_from_json(item.at("hi"), cfg),
                           item.value("lo_closed", true), item.value("hi_closed", true)});
        }
    }
    return RealSet(std::move(ivs));
}

json piecewise_to_json(const Piecewise& f) {
    json pieces = json::array();
    for (const auto& p : f.pieces()) {
        if (!p.finite())
            throw std::invalid_argument("piecewise_to_json: generator-backed piece");
        json coeffs = json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(number_to_json(c));
        pieces.push_back(json{{"interval", interval_to_json(p.domain())},
                              {"center", number_to_json(p.center())},
                              {"coeffs", std::move(coeffs)}});
    }
    return json{{"pieces", std::move(pieces)}};
}

Piecewise piecewise_from_json(const json& j, const Config& cfg) {
    std::vector<PowerSeries> pieces;
    const json& arr = j.is_array() ? j : j.at("pieces");
    for (const auto& item : arr) {
        Interval iv = interval_from_json(item.at("interval"), cfg);
        LCNumber center = item.contains("center")
                              ? number_from_json(item["center"], cfg)
                              : (iv.lo + iv.hi) * LCNumber::real(Coeff(Rational(1, 2)), cfg);
        std::vector<LCNumber> coeffs;
        for (const auto& c : item.at("coeffs")) coeffs.push_back(number_from_json(c, cfg));
        pieces.emplace_back(std::move(iv), std::move(center), std::move(coeffs));
    }
    return Piecewise(std::move(pieces));
}

json step_fn_to_json(const StepFn& f) {
    json steps = json::array();
    for (const auto& s : f.steps)
        steps.push_back(json{{"interval", interval_to_json(s.interval)},
                             {"value", number_to_json(s.value)}});
    return json{{"steps", std::move(steps)}};
}

StepFn step_fn_from_json(const json& j, const Config& cfg) {
    std::vector<StepFn::Step> steps;
    for (const auto& item : j.at("steps"))
        steps.push_back({interval_from_json(item.at("interval"), cfg),
                         number_from_json(item.at("value"), cfg)});
    return StepFn(std::move(steps));
}

json shadow_to_json(const Shadow& s) {
    json points = json::array();
    for (const auto& p : s.points) points.push_back(p.str());
    return json{{"intervals", real_set_to_json(s.intervals)},
                {"points", std::move(points)},
                {"interval_measure", lebesgue_measure(s.intervals).to_double()}};
}

json integral_report_to_json(const IntegralReport& rep) {
    return json{{"schema", 1},
                {"value", ext_real_to_json(rep.value)},
                {"verdict", rep.verdict},
                {"tolerance", rep.tolerance},
                {"route", rep.route},
                {"warnings", rep.warnings}};
}

json limit_report_to_json(const LimitReport& rep) {
    const char* verdict = rep.verdict == LimitReport::Verdict::Finite      ? "finite"
                          : rep.verdict == LimitReport::Verdict::PosInf    ? "+infinity"
                          : rep.verdict == LimitReport::Verdict::NegInf    ? "-infinity"
                                                                           : "oscillating";
    json trace = json::array();
    for (const auto& [t, v] : rep.trace) trace.push_back(json{{"t", t}, {"value", v}});
    json j{{"schema", 1},
           {"verdict", verdict},
           {"tolerance", rep.tolerance},
           {"trace", std::move(trace)}};
    if (rep.verdict == LimitReport::Verdict::Finite) j["value"] = rep.value;
    return j;
}

json ftc_report_to_json(const FtcReport& rep) {
    return json{{"schema", 1},
                {"lhs", ext_real_to_json(rep.lhs)},
                {"rhs", ext_real_to_json(rep.rhs)},
                {"consistent", rep.consistent},
                {"measurable", rep.measurable},
                {"tolerance", rep.tolerance}};
}

json ibp_report_to_json(const IbpReport& rep) {
    return json{{"schema", 1},
                {"boundary", rep.boundary},
                {"sum", rep.sum},
                {"residual", rep.residual}};
}

json scale_report_to_json(const ScaleReport& rep) {
    json j{{"schema", 1},
           {"set", measurable_set_to_json(rep.set)},
           {"m_L", ext_real_to_json(rep.measured)},
           {"homogeneity_checked", rep.homogeneity_checked},
           {"consistent", rep.consistent}};
    if (rep.expected) j["expected"] = ext_real_to_json(*rep.expected);
    return j;
}

std::string measure_csv_header() { return "set_id,m,m_L,shadow_measure"; }

std::string measure_csv_row(const std::string& id, const MeasurableSet& A) {
    std::ostringstream out;
    out << id << ",\"" << m_measure(A).str() << "\"," << mL_measure(A).str() << ",";
    Shadow s = shadow(A);
    out << lebesgue_measure(s.intervals).str();
    return out.str();
}

} // namespace civita
