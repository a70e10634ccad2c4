#pragma once

// JSON wire formats. One format for matrices everywhere:
//   {"rows": m, "cols": k, "entries": [[re, im], ...]}   (row-major)
// Parsers reject NaN/Inf and malformed shapes with ParseError so the CLI can
// map them to its diagnostic exit code. Serialization goes through nlohmann
// json, whose double output is shortest-round-trip and therefore stable
// across runs.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "factorization.hpp"
#include "generate.hpp"
#include "verify.hpp"

namespace isofactor {

using nlohmann::json;

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

namespace detail {

inline double finite_number(const json& j, const char* what) {
    if (!j.is_number())
        throw ParseError(std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw ParseError(std::string(what) + " must be finite");
    return x;
}

inline json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string(what) + " must be a [re, im] pair");
    return {finite_number(j[0], what), finite_number(j[1], what)};
}

inline const json& require_key(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key: ") + key);
    return j.at(key);
}

} // namespace detail

inline json matrix_to_json(const Mat& a) {
    json entries = json::array();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            entries.push_back(detail::cplx_to_json(a(i, j)));
    return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

inline Mat matrix_from_json(const json& j) {
    const json& jr = detail::require_key(j, "rows");
    const json& jc = detail::require_key(j, "cols");
    if (!jr.is_number_integer() || !jc.is_number_integer())
        throw ParseError("rows and cols must be integers");
    const int rows = jr.get<int>(), cols = jc.get<int>();
    if (rows < 0 || cols < 0) throw ParseError("negative matrix dimensions");
    const json& entries = detail::require_key(j, "entries");
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(rows) * cols)
        throw ParseError("entries must hold rows*cols [re, im] pairs");
    Mat a(rows, cols);
    std::size_t at = 0;
    for (int i = 0; i < rows; ++i)
        for (int j2 = 0; j2 < cols; ++j2)
            a(i, j2) = detail::cplx_from_json(entries[at++], "matrix entry");
    return a;
}

inline json classification_to_json(const Classification& c) {
    json eigs = json::array();
    for (const EigenInfo& e : c.eigenvalues)
        eigs.push_back(json{{"lambda", detail::cplx_to_json(e.lambda)},
                            {"alg", e.alg},
                            {"geo", e.geo},
                            {"type", to_string(e.type)}});
    json out{{"class", to_string(c.cls)}, {"eigenvalues", eigs}};
    if (c.has_k) out["k"] = c.k;
    if (c.has_lift) out["lift_scalar"] = detail::cplx_to_json(c.lift_scalar);
    return out;
}

inline json factorization_to_json(const Factorization& f) {
    json factors = json::array();
    for (const Factor& x : f.factors) {
        json jf{{"tag", to_string(x.tag)},
                {"det", detail::cplx_to_json(x.det)},
                {"matrix", matrix_to_json(x.matrix)}};
        if (x.tag == FactorTag::k_reflection)
            jf["reflection"] =
                json{{"k", x.k}, {"lambda", detail::cplx_to_json(x.lambda)}};
        if (x.tag == FactorTag::antiholo_involution)
            jf["antiholomorphic"] = true;
        factors.push_back(std::move(jf));
    }
    return json{{"lift_scalar", detail::cplx_to_json(f.lift_scalar)},
                {"mode", f.mode == FactorizationMode::commutator ? "commutator"
                                                                 : "product"},
                {"factors", factors},
                {"residual", f.residual},
                {"extended_range", f.extended_range}};
}

inline Factorization factorization_from_json(const json& j) {
    Factorization f;
    f.lift_scalar =
        detail::cplx_from_json(detail::require_key(j, "lift_scalar"),
                               "lift_scalar");
    if (j.contains("mode")) {
        const json& jm = j.at("mode");
        if (!jm.is_string()) throw ParseError("mode must be a string");
        const std::string mode = jm.get<std::string>();
        if (mode == "product")
            f.mode = FactorizationMode::product;
        else if (mode == "commutator")
            f.mode = FactorizationMode::commutator;
        else
            throw ParseError("mode must be \"product\" or \"commutator\"");
    }
    if (j.contains("residual"))
        f.residual = detail::finite_number(j.at("residual"), "residual");
    if (j.contains("extended_range")) {
        if (!j.at("extended_range").is_boolean())
            throw ParseError("extended_range must be a boolean");
        f.extended_range = j.at("extended_range").get<bool>();
    }
    const json& factors = detail::require_key(j, "factors");
    if (!factors.is_array()) throw ParseError("factors must be an array");
    for (const json& jf : factors) {
        Factor x;
        const json& jt = detail::require_key(jf, "tag");
        if (!jt.is_string()) throw ParseError("factor tag must be a string");
        const std::string tag = jt.get<std::string>();
        bool known = false;
        for (FactorTag t :
             {FactorTag::involution, FactorTag::k_reflection,
              FactorTag::reversible, FactorTag::antiholo_involution})
            if (tag == to_string(t)) {
                x.tag = t;
                known = true;
            }
        if (!known) throw ParseError("unknown factor tag: " + tag);
        if (jf.contains("antiholomorphic")) {
            const json& ja = jf.at("antiholomorphic");
            if (!ja.is_boolean())
                throw ParseError("antiholomorphic must be a boolean");
            if (ja.get<bool>() !=
                (x.tag == FactorTag::antiholo_involution))
                throw ParseError(
                    "antiholomorphic flag disagrees with factor tag");
        }
        x.matrix = matrix_from_json(detail::require_key(jf, "matrix"));
        if (jf.contains("det"))
            x.det = detail::cplx_from_json(jf.at("det"), "det");
        if (jf.contains("reflection")) {
            const json& jr = jf.at("reflection");
            const json& jk = detail::require_key(jr, "k");
            if (!jk.is_number_integer())
                throw ParseError("reflection k must be an integer");
            x.k = jk.get<int>();
            x.lambda = detail::cplx_from_json(detail::require_key(jr, "lambda"),
                                              "reflection lambda");
        }
        f.factors.push_back(std::move(x));
    }
    return f;
}

inline json report_to_json(const VerificationReport& r) {
    json per = json::array();
    for (const PerFactorCheck& p : r.per_factor)
        per.push_back(json{{"tag", to_string(p.tag)},
                           {"involution_residual", p.involution_residual},
                           {"unitarity_residual", p.unitarity_residual},
                           {"det", detail::cplx_to_json(p.det)}});
    return json{{"reconstruction_residual", r.reconstruction_residual},
                {"per_factor", per},
                {"count_ok", r.count_ok},
                {"class_claim_ok", r.class_claim_ok},
                {"beyond_paper", r.beyond_paper},
                {"accepted", r.accepted},
                {"failures", r.failures}};
}

// matrix plus the ground-truth label, still readable as a plain matrix
inline json generated_to_json(const GeneratedElement& g) {
    json out = matrix_to_json(g.matrix);
    out["label"] = to_string(g.label);
    out["n"] = g.n;
    return out;
}

} // namespace isofactor
