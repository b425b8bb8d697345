#pragma once

// Symbol configs as JSON:
//   {"beta": [re, im], "tau": {"form": "exp_laurent" | "laurent", "coeffs": [[k, re, im], ...]}}
// "tau" may be omitted (tau = 1); "beta" may also be a bare number.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fhlab/symbols.hpp"

namespace fhlab {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Complex complex_from_json(const nlohmann::json& j, const char* what)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw config_error(std::string(what) + ": expected a number or [re, im]");
}

} // namespace detail

inline SymbolSpec symbol_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw config_error("symbol: expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "beta" && key != "tau") throw config_error("symbol: unknown key '" + key + "'");
    if (!j.contains("beta")) throw config_error("symbol: missing 'beta'");
    SymbolSpec spec;
    spec.beta = detail::complex_from_json(j.at("beta"), "beta");
    if (!std::isfinite(spec.beta.real()) || !std::isfinite(spec.beta.imag())) throw config_error("beta: not finite");
    if (!j.contains("tau")) return spec;

    const auto& t = j.at("tau");
    if (!t.is_object()) throw config_error("tau: expected an object");
    const std::string form = t.value("form", std::string("exp_laurent"));
    if (form == "exp_laurent") spec.tau.form = TauForm::exp_laurent;
    else if (form == "laurent") spec.tau.form = TauForm::laurent;
    else throw config_error("tau.form: expected 'exp_laurent' or 'laurent', got '" + form + "'");

    if (t.contains("coeffs")) {
        const auto& cs = t.at("coeffs");
        if (!cs.is_array()) throw config_error("tau.coeffs: expected an array");
        for (const auto& c : cs) {
            if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer() || !c[1].is_number() || !c[2].is_number())
                throw config_error("tau.coeffs: each entry must be [k, re, im] with integer k");
            const int k = c[0].get<int>();
            if (spec.tau.poly.terms.count(k)) throw config_error("tau.coeffs: duplicate index " + std::to_string(k));
            if (std::abs(k) > 64) throw config_error("tau.coeffs: |k| must be <= 64");
            spec.tau.poly.terms[k] = {c[1].get<double>(), c[2].get<double>()};
        }
    }
    if (spec.tau.form == TauForm::laurent && spec.tau.poly.is_zero()) throw config_error("tau: laurent form needs coefficients");
    return spec;
}

inline nlohmann::json symbol_to_json(const SymbolSpec& spec)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [k, c] : spec.tau.poly.terms) coeffs.push_back({k, c.real(), c.imag()});
    return {{"beta", {spec.beta.real(), spec.beta.imag()}},
            {"tau", {{"form", spec.tau.form == TauForm::exp_laurent ? "exp_laurent" : "laurent"}, {"coeffs", coeffs}}}};
}

inline SymbolSpec parse_symbol(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("symbol: invalid JSON: ") + e.what());
    }
    return symbol_from_json(j);
}

/// Inline JSON if the argument starts with '{', otherwise a file path.
inline SymbolSpec load_symbol(const std::string& source)
{
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') return parse_symbol(source);
    std::ifstream in(source);
    if (!in) throw config_error("symbol: cannot open '" + source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_symbol(ss.str());
}

} // namespace fhlab
