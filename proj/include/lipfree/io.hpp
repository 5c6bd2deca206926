#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "certificate.hpp"
#include "free_element.hpp"
#include "lip_function.hpp"
#include "metric_space.hpp"

namespace lipfree::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// text and scalars

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), source + ":byte " + std::to_string(e.byte));
    }
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

/// Scalars are strings ("3", "5/2", "0.25"); JSON integers are accepted in
/// both modes, other JSON numbers only in float mode.
template <Scalar S>
S scalar_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_scalar<S>(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")), where);
        }
    }
    if (j.is_number_integer()) return S(j.get<std::int64_t>());
    if (j.is_number_float()) {
        if constexpr (ScalarTraits<S>::exact)
            throw ParseError("binary floating-point number not allowed in exact mode; quote it", where);
        else
            return j.get<double>();
    }
    throw ParseError("expected a number string", where);
}

template <Scalar S>
Json scalar_to_json(const S& x) {
    return format_scalar(x);
}

// ---------------------------------------------------------------------------
// metric spaces

template <Scalar S>
Json to_json(const FiniteMetricSpace<S>& space) {
    Json j;
    j["labels"] = space.labels();
    j["base"] = space.base();
    Json rows = Json::array();
    for (int p = 0; p < space.size(); ++p) {
        Json row = Json::array();
        for (int q = 0; q < space.size(); ++q) row.push_back(scalar_to_json(space.d(p, q)));
        rows.push_back(std::move(row));
    }
    j["d"] = std::move(rows);
    return j;
}

/// FNV-1a 64 over the canonical JSON text of the space.
template <Scalar S>
std::string space_hash(const FiniteMetricSpace<S>& space) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : to_json(space).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Builds the space; shape problems are reported with their JSON location.
/// Metric axioms are not checked here (see validate()).
template <Scalar S>
SpacePtr<S> space_from_json(const Json& j, const std::string& src = "space",
                            S tol = ScalarTraits<S>::default_tolerance()) {
    if (!j.is_object()) throw ParseError("space must be a JSON object", src);
    if (!j.contains("d")) throw ParseError("missing field 'd'", src);
    const auto& d = j["d"];
    if (!d.is_array() || d.empty()) throw ParseError("'d' must be a non-empty array of rows", src + ".d");
    const auto n = d.size();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const auto& l = j["labels"];
        if (!l.is_array() || l.size() != n)
            throw ParseError("'labels' must be an array with one entry per row", src + ".labels");
        for (std::size_t i = 0; i < n; ++i) {
            if (!l[i].is_string()) throw ParseError("label must be a string", src + ".labels[" + std::to_string(i) + "]");
            labels.push_back(l[i].get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    }
    int base = 0;
    if (j.contains("base")) {
        const auto& b = j["base"];
        if (b.is_number_integer()) {
            base = b.get<int>();
        } else if (b.is_string()) {
            auto it = std::find(labels.begin(), labels.end(), b.get<std::string>());
            if (it == labels.end()) throw ParseError("base label not found", src + ".base");
            base = static_cast<int>(it - labels.begin());
        } else {
            throw ParseError("base must be an index or a label", src + ".base");
        }
        if (base < 0 || static_cast<std::size_t>(base) >= n) throw ParseError("base index out of range", src + ".base");
    }
    std::vector<std::vector<S>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string at = src + ".d[" + std::to_string(i) + "]";
        if (!d[i].is_array() || d[i].size() != n) throw ParseError("row must have " + std::to_string(n) + " entries", at);
        for (std::size_t k = 0; k < n; ++k)
            rows[i].push_back(scalar_from_json<S>(d[i][k], at + "[" + std::to_string(k) + "]"));
    }
    try {
        return make_space<S>(std::move(labels), base, std::move(rows), tol);
    } catch (const StructuralError& e) {
        throw ParseError(e.what(), src);
    }
}

// ---------------------------------------------------------------------------
// Lipschitz functions and free elements

template <Scalar S>
Json to_json(const LipFunction<S>& f, bool inline_space = false) {
    Json j;
    if (inline_space)
        j["space"] = to_json(*f.space());
    else
        j["space"] = space_hash(*f.space());
    Json vals = Json::array();
    for (int p = 0; p < f.space()->size(); ++p) vals.push_back(scalar_to_json(f(p)));
    j["values"] = std::move(vals);
    return j;
}

/// `space` in the document may be the hash of `space`, or an inline space
/// (which then must equal `space` when one is supplied). Values are an
/// array in point order or an object keyed by label.
template <Scalar S>
LipFunction<S> lip_function_from_json(const Json& j, SpacePtr<S> space, const std::string& src = "function") {
    if (!j.is_object()) throw ParseError("function must be a JSON object", src);
    if (j.contains("space")) {
        const auto& s = j["space"];
        if (s.is_string()) {
            if (!space) throw ParseError("space given by hash but no space supplied", src + ".space");
            if (s.get<std::string>() != space_hash(*space))
                throw ParseError("space hash does not match the supplied space", src + ".space");
        } else {
            auto inl = space_from_json<S>(s, src + ".space", space ? space->tol().eps : ScalarTraits<S>::default_tolerance());
            if (space && space_hash(*inl) != space_hash(*space))
                throw ParseError("inline space differs from the supplied space", src + ".space");
            if (!space) space = inl;
        }
    }
    if (!space) throw ParseError("no space for function", src);
    if (!j.contains("values")) throw ParseError("missing field 'values'", src);
    const auto& v = j["values"];
    std::vector<S> vals(space->size(), S(0));
    if (v.is_array()) {
        if (v.size() != static_cast<std::size_t>(space->size()))
            throw ParseError("expected " + std::to_string(space->size()) + " values", src + ".values");
        for (std::size_t i = 0; i < v.size(); ++i)
            vals[i] = scalar_from_json<S>(v[i], src + ".values[" + std::to_string(i) + "]");
    } else if (v.is_object()) {
        std::vector<char> seen(space->size(), 0);
        for (const auto& [label, x] : v.items()) {
            const std::string at = src + ".values." + label;
            int p;
            try {
                p = space->index_of(label);
            } catch (const StructuralError&) {
                throw ParseError("unknown point label", at);
            }
            vals[p] = scalar_from_json<S>(x, at);
            seen[p] = 1;
        }
        for (int p = 0; p < space->size(); ++p)
            if (!seen[p]) throw ParseError("no value for point '" + space->label(p) + "'", src + ".values");
    } else {
        throw ParseError("'values' must be an array or an object", src + ".values");
    }
    try {
        return LipFunction<S>(space, std::move(vals));
    } catch (const ArgumentError& e) {
        throw ParseError(e.what(), src + ".values");
    }
}

template <Scalar S>
Json to_json(const FreeElement<S>& mu) {
    Json w = Json::object();
    for (const auto& [p, x] : mu.weights()) w[mu.space()->label(p)] = scalar_to_json(x);
    Json j;
    j["weights"] = std::move(w);
    return j;
}

template <Scalar S>
FreeElement<S> free_element_from_json(const Json& j, const SpacePtr<S>& space, const std::string& src = "element") {
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object())
        throw ParseError("element must be an object with a 'weights' object", src);
    FreeElement<S> mu(space);
    for (const auto& [label, x] : j["weights"].items()) {
        const std::string at = src + ".weights." + label;
        int p;
        try {
            p = space->index_of(label);
        } catch (const StructuralError&) {
            throw ParseError("unknown point label", at);
        }
        mu.add(p, scalar_from_json<S>(x, at));
    }
    return mu;
}

// ---------------------------------------------------------------------------
// reports

inline Json named_values(const NamedValues& xs) {
    Json j = Json::object();
    for (const auto& [k, v] : xs) j[k] = v;
    return j;
}

inline Json to_json(const CertificateReport& r) {
    Json j;
    j["claim"] = r.claim;
    Json params = named_values(r.parameters);
    params["mode"] = r.mode;
    params["tolerance"] = r.tolerance;
    j["parameters"] = std::move(params);
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["description"] = c.description;
        cj["relation"] = c.relation;
        cj["values"] = named_values(c.values);
        if (!c.slack.empty()) cj["slack"] = c.slack;
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["witnesses"] = named_values(r.witnesses);
    j["verified"] = r.overall;
    j["slack"] = r.slack;
    return j;
}

/// Canonical text: two-space indentation, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lipfree::io
