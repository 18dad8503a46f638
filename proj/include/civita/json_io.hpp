#pragma once

#include <string>

#include "json.hpp"

#include "civita/integrate.hpp"
#include "civita/measure.hpp"
#include "civita/power_series.hpp"

namespace civita {

using nlohmann::json;

json coeff_to_json(const Coeff& c);
Coeff coeff_from_json(const json& j, const Config& cfg);

json ext_real_to_json(const ExtReal& e);

json interval_to_json(const Interval& iv);
Interval interval_from_json(const json& j, const Config& cfg);

json measurable_set_to_json(const MeasurableSet& A);
MeasurableSet measurable_set_from_json(const json& j, const Config& cfg);

json real_set_to_json(const RealSet& R);
RealSet real_set_from_json(const json& j, const Config& cfg);

// pieces as arrays of {interval, center, coeffs}; numbers in the linear
// text format. Only finite coefficient lists serialize.
json piecewise_to_json(const Piecewise& f);
Piecewise piecewise_from_json(const json& j, const Config& cfg);

json step_fn_to_json(const StepFn& f);
StepFn step_fn_from_json(const json& j, const Config& cfg);

json shadow_to_json(const Shadow& s);
json integral_report_to_json(const IntegralReport& rep);
json limit_report_to_json(const LimitReport& rep);
json ftc_report_to_json(const FtcReport& rep);
json ibp_report_to_json(const IbpReport& rep);
json scale_report_to_json(const ScaleReport& rep);

// one (set-id, m, m_L, shadow-measure) comparison row
std::string measure_csv_header();
std::string measure_csv_row(const std::string& id, const MeasurableSet& A);

} // namespace civita
