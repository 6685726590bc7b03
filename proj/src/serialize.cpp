#include "eulerprod/serialize.hpp"

#include <cmath>
#include <limits>

namespace eulerprod {

namespace {

nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

double num_of(const nlohmann::json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::numeric_limits<double>::quiet_NaN();
    return it->get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const ConstantReport& v) {
    j = {{"name", v.name},
         {"value", num(v.value)},
         {"tolerance", num(v.tolerance)},
         {"piece_0_1", num(v.piece_0_1)},
         {"piece_1_inf", num(v.piece_1_inf)}};
}

void from_json(const nlohmann::json& j, ConstantReport& v) {
    v.name = j.at("name").get<std::string>();
    v.value = num_of(j, "value");
    v.tolerance = num_of(j, "tolerance");
    v.piece_0_1 = num_of(j, "piece_0_1");
    v.piece_1_inf = num_of(j, "piece_1_inf");
}

void to_json(nlohmann::json& j, const MomentEstimate& v) {
    j = {{"r", num(v.r)},
         {"log_moment", num(v.log_moment)},
         {"method", to_string(v.method)},
         {"error_band", num(v.error_band)},
         {"relative_std_error", num(v.relative_std_error)},
         {"n", v.n},
         {"caveats", v.caveats}};
}

void from_json(const nlohmann::json& j, MomentEstimate& v) {
    v.r = num_of(j, "r");
    v.log_moment = num_of(j, "log_moment");
    v.method = moment_method_from_string(j.at("method").get<std::string>());
    v.error_band = num_of(j, "error_band");
    v.relative_std_error = j.contains("relative_std_error") ? num_of(j, "relative_std_error") : 0.0;
    v.n = j.value("n", std::size_t{0});
    v.caveats = j.value("caveats", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const TailEstimate& v) {
    j = {{"tau", num(v.tau)},     {"A", num(v.A)},         {"scale_exponent", num(v.scale_exponent)},
         {"b", num(v.b)},         {"phi", num(v.phi)},     {"lower", num(v.lower)},
         {"upper", num(v.upper)}, {"caveats", v.caveats}};
}

void from_json(const nlohmann::json& j, TailEstimate& v) {
    v.tau = num_of(j, "tau");
    v.A = num_of(j, "A");
    v.scale_exponent = num_of(j, "scale_exponent");
    v.b = num_of(j, "b");
    v.phi = num_of(j, "phi");
    v.lower = num_of(j, "lower");
    v.upper = num_of(j, "upper");
    v.caveats = j.value("caveats", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const TailBracket& v) {
    j = {{"tau", num(v.tau)},         {"delta", num(v.delta)},       {"lower", num(v.lower)},
         {"upper", num(v.upper)},     {"log_lower", num(v.log_lower)}, {"log_upper", num(v.log_upper)},
         {"s_lower", num(v.s_lower)},   {"s_upper", num(v.s_upper)},
         {"moment_calls", v.moment_calls}};
}

void to_json(nlohmann::json& j, const EmpiricalTail& v) {
    j = {{"phi_hat", num(v.phi_hat)}, {"lower", num(v.lower)}, {"upper", num(v.upper)},
         {"hits", v.hits},            {"n", v.n},              {"log_threshold", num(v.log_threshold)}};
}

void to_json(nlohmann::json& j, const ConditionCheck& v) {
    j = {{"name", v.name},
         {"passed", v.passed},
         {"statistic", num(v.statistic)},
         {"threshold", num(v.threshold)},
         {"detail", v.detail}};
}

void to_json(nlohmann::json& j, const ConditionReport& v) {
    j = {{"model", v.model},   {"n_samples", v.n_samples},   {"checks", v.checks},
         {"c4_c", num(v.c4_c)}, {"c4_alpha", num(v.c4_alpha)}, {"all_passed", v.all_passed()}};
}

void to_json(nlohmann::json& j, const DiagonalResult& v) {
    j = {{"value", num(v.value)},
         {"log_value", num(v.log_value)},
         {"truncation_bound", num(v.truncation_bound)},
         {"j_cap", v.j_cap}};
}

void to_json(nlohmann::json& j, const CharacterSquareSum& v) {
    j = {{"x", num(v.x)},
         {"l", v.l},
         {"sum", num(v.sum)},
         {"main_term", num(v.main_term)},
         {"relative_gap", num(v.relative_gap)}};
}

void to_json(nlohmann::json& j, const ExtremeScan& v) {
    j = {{"T", num(v.T)},
         {"y", num(v.y)},
         {"stride", num(v.stride)},
         {"count", v.count},
         {"argmax_t", num(v.argmax_t)},
         {"max_abs", num(v.max_abs)},
         {"benchmark", num(v.benchmark)}};
}

void to_json(nlohmann::json& j, const ZetaMomentSample& v) {
    j = {{"T", num(v.T)}, {"y", num(v.y)},       {"k", v.k},
         {"n", v.n},      {"mean", num(v.mean)}, {"std_error", num(v.std_error)}};
}

}  // namespace eulerprod
