#include "ifp/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ifp {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json number_or_sentinel(double v) {
    if (v == kInf) return json("inf");
    if (v == -kInf) return json("-inf");
    return json(v);
}

double parse_extended(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ParseError(field, "expected a number or \"inf\"/\"-inf\" at " + field);
}

std::vector<double> parse_array(const json& j, const std::string& field, bool extended) {
    if (!j.is_array()) throw ParseError(field, "expected an array at " + field);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = field + "[" + std::to_string(i) + "]";
        if (extended)
            out.push_back(parse_extended(j[i], at));
        else if (j[i].is_number())
            out.push_back(j[i].get<double>());
        else
            throw ParseError(at, "expected a number at " + at);
    }
    return out;
}

double require_param(const json& params, const std::string& name) {
    if (!params.contains(name) || !params[name].is_number())
        throw ParseError("params." + name, "missing numeric parameter params." + name);
    return params[name].get<double>();
}

}  // namespace

SurvivalFn survival_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("(document)", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("kind", "missing string field \"kind\"");
    const auto kind = j["kind"].get<std::string>();

    if (kind == "piecewise_constant" || kind == "empirical") {
        if (!j.contains("breakpoints")) throw ParseError("breakpoints", "missing \"breakpoints\"");
        if (!j.contains("values")) throw ParseError("values", "missing \"values\"");
        auto bp = parse_array(j["breakpoints"], "breakpoints", false);
        auto vals = parse_array(j["values"], "values", false);
        SurvivalFn g;
        try {
            g = SurvivalFn::piecewise_constant(std::move(bp), std::move(vals));
        } catch (const std::invalid_argument& e) {
            throw ParseError("breakpoints", e.what());
        }
        const auto report = validate(g);
        if (!report.ok) throw ParseError("values", report.violation);
        return g;
    }

    if (kind == "analytic") {
        if (!j.contains("family") || !j["family"].is_string())
            throw ParseError("family", "missing string field \"family\"");
        const auto family = j["family"].get<std::string>();
        const json params = j.contains("params") ? j["params"] : json::object();
        if (family == "constant_barrier") return constant_barrier_survival(require_param(params, "a"));
        if (family == "linear_barrier")
            return linear_barrier_survival(require_param(params, "a"), require_param(params, "c"));
        throw ParseError("family", "unknown analytic family \"" + family + "\"");
    }

    throw ParseError("kind", "unknown kind \"" + kind + "\"");
}

std::string survival_to_json(const SurvivalFn& g) {
    json j;
    switch (g.kind()) {
        case SurvivalFn::Kind::piecewise_constant:
        case SurvivalFn::Kind::empirical:
            j["kind"] = g.kind() == SurvivalFn::Kind::empirical ? "empirical" : "piecewise_constant";
            j["breakpoints"] = g.breakpoints();
            j["values"] = g.values();
            break;
        case SurvivalFn::Kind::analytic: {
            j["kind"] = "analytic";
            if (g.family() == SurvivalFn::Family::constant_barrier) {
                j["family"] = "constant_barrier";
                j["params"] = {{"a", g.params()[0]}};
            } else if (g.family() == SurvivalFn::Family::linear_barrier) {
                j["family"] = "linear_barrier";
                j["params"] = {{"a", g.params()[0]}, {"c", g.params()[1]}};
            } else {
                throw std::invalid_argument("survival_to_json: custom analytic g is not serializable");
            }
            break;
        }
    }
    return j.dump();
}

void boundary_to_csv(const Boundary& b, std::ostream& os) {
    os << "t,b\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < b.times.size(); ++i) {
        os << b.times[i] << ',';
        if (b.values[i] == kInf)
            os << "inf";
        else if (b.values[i] == -kInf)
            os << "-inf";
        else
            os << b.values[i];
        os << '\n';
    }
}

Boundary boundary_from_csv(std::istream& is, Boundary::Interp interp) {
    Boundary b;
    b.interp = interp;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("t,", 0) == 0) continue;  // header
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("line " + std::to_string(lineno), "expected \"t,b\" row");
        const std::string ts = line.substr(0, comma);
        std::string vs = line.substr(comma + 1);
        while (!vs.empty() && (vs.back() == '\r' || vs.back() == ' ')) vs.pop_back();
        try {
            b.times.push_back(std::stod(ts));
        } catch (...) {
            throw ParseError("line " + std::to_string(lineno), "bad time value \"" + ts + "\"");
        }
        if (vs == "inf" || vs == "+inf")
            b.values.push_back(kInf);
        else if (vs == "-inf")
            b.values.push_back(-kInf);
        else {
            try {
                b.values.push_back(std::stod(vs));
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno), "bad boundary value \"" + vs + "\"");
            }
        }
    }
    if (!b.times.empty() && b.times.front() == 0.0 && b.values.front() == 0.0) b.standard = true;
    validate_boundary(b);
    return b;
}

std::string boundary_to_json(const Boundary& b) {
    json j;
    j["times"] = b.times;
    json vals = json::array();
    for (double v : b.values) vals.push_back(number_or_sentinel(v));
    j["values"] = std::move(vals);
    j["standard"] = b.standard;
    j["interp"] = b.interp == Boundary::Interp::mesh_only ? "mesh_only" : "linear";
    return j.dump();
}

Boundary boundary_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("(document)", std::string("invalid JSON: ") + e.what());
    }
    Boundary b;
    if (!j.contains("times") || !j.contains("values"))
        throw ParseError("times", "boundary JSON needs \"times\" and \"values\"");
    b.times = parse_array(j["times"], "times", false);
    b.values = parse_array(j["values"], "values", true);
    b.standard = j.value("standard", false);
    const auto interp = j.value("interp", std::string("mesh_only"));
    if (interp == "linear")
        b.interp = Boundary::Interp::linear;
    else if (interp == "mesh_only")
        b.interp = Boundary::Interp::mesh_only;
    else
        throw ParseError("interp", "unknown interp \"" + interp + "\"");
    validate_boundary(b);
    return b;
}

}  // namespace ifp
