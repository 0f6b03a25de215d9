#pragma once

// JSON encoding of every public type. Complex numbers are [re, im] pairs.
// Parse errors are MalformedInput naming the offending field path.

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "calculus.hpp"
#include "transform.hpp"
#include "verify.hpp"

namespace mcalc::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Reading helpers
// ---------------------------------------------------------------------------

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw MalformedInput(path + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

inline double real_from(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

inline long long integer_from(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

/// [re, im]; a bare number is accepted as a real value.
inline cplx complex_from(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a complex number [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<cplx> complex_list_from(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of complex numbers");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(std::span<const cplx> v) {
    json out = json::array();
    for (const cplx& z : v) out.push_back(to_json(z));
    return out;
}

// ---------------------------------------------------------------------------
// Linear algebra and polynomials
// ---------------------------------------------------------------------------

inline json to_json(const ComplexMatrix& a) {
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", to_json(a.data())}};
}

inline ComplexMatrix matrix_from(const json& j, const std::string& path = "matrix") {
    const long long rows = integer_from(field(j, "rows", path), path + ".rows");
    const long long cols = integer_from(field(j, "cols", path), path + ".cols");
    if (rows < 0 || cols < 0) fail(path, "negative dimension");
    auto data = complex_list_from(field(j, "data", path), path + ".data");
    if (data.size() != static_cast<std::size_t>(rows * cols))
        fail(path + ".data", "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(data.size()));
    return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data)};
}

inline json to_json(const Polynomial& p) { return {{"coeffs", to_json(p.coeffs())}}; }

inline Polynomial polynomial_from(const json& j, const std::string& path = "polynomial") {
    return Polynomial(complex_list_from(field(j, "coeffs", path), path + ".coeffs"));
}

inline json to_json(const Centers& c) { return {{"lambdas", to_json(c.lambdas())}}; }

/// {"lambdas": [...]} or the bare list.
inline std::vector<cplx> lambdas_from(const json& j, const std::string& path = "centers") {
    if (j.is_array()) return complex_list_from(j, path);
    return complex_list_from(field(j, "lambdas", path), path + ".lambdas");
}

inline json to_json(const Fiber& f) {
    return {{"w", to_json(f.w)}, {"points", to_json(f.points)}, {"critical", f.critical}};
}

// ---------------------------------------------------------------------------
// Transform inputs
// ---------------------------------------------------------------------------

struct PhiSamples {
    cplx w;
    std::vector<PhiSample> values;
};

inline json to_json(const PhiSamples& s) {
    json values = json::array();
    for (const auto& v : s.values) values.push_back({{"z", to_json(v.z)}, {"phi", to_json(v.phi)}});
    return {{"w", to_json(s.w)}, {"values", values}};
}

inline PhiSamples phi_samples_from(const json& j, const std::string& path = "phi") {
    PhiSamples out;
    out.w = complex_from(field(j, "w", path), path + ".w");
    const json& values = field(j, "values", path);
    if (!values.is_array()) fail(path + ".values", "expected an array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string p = path + ".values[" + std::to_string(i) + "]";
        out.values.push_back({complex_from(field(values[i], "z", p), p + ".z"),
                              complex_from(field(values[i], "phi", p), p + ".phi")});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Algebra elements
// ---------------------------------------------------------------------------

inline json to_json(const VectorFunction& f) {
    json samples = json::array();
    for (std::size_t s = 0; s < f.size(); ++s)
        samples.push_back({{"w", to_json(f.samples().point(s))}, {"f", to_json(f.at(s))}});
    return {{"centers", to_json(f.ctx().centers().lambdas())}, {"samples", samples}};
}

/// Parses a VectorFunction. `centers` overrides or supplies the centers;
/// when the document carries its own they must agree exactly.
inline VectorFunction vector_function_from(const json& j, const ToleranceConfig& tol,
                                           const std::optional<std::vector<cplx>>& centers = std::nullopt,
                                           const std::string& path = "f") {
    if (!j.is_object()) fail(path, "expected an object");
    std::vector<cplx> lambdas;
    if (j.contains("centers")) {
        lambdas = lambdas_from(j["centers"], path + ".centers");
        if (centers && *centers != lambdas) throw ContextMismatch(path + ": centers differ from --centers");
    } else if (centers) {
        lambdas = *centers;
    } else {
        fail(path + ".centers", "missing field");
    }
    const json& samples = field(j, "samples", path);
    if (!samples.is_array()) fail(path + ".samples", "expected an array");
    std::vector<cplx> ws, values;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::string p = path + ".samples[" + std::to_string(i) + "]";
        ws.push_back(complex_from(field(samples[i], "w", p), p + ".w"));
        const auto fv = complex_list_from(field(samples[i], "f", p), p + ".f");
        if (fv.size() != lambdas.size())
            fail(p + ".f", "expected " + std::to_string(lambdas.size()) + " components, got " + std::to_string(fv.size()));
        values.insert(values.end(), fv.begin(), fv.end());
    }
    return {make_samples(make_context(std::move(lambdas), tol), std::move(ws)), std::move(values)};
}

/// A second element on the sample set of `like`: same centers, same points.
inline VectorFunction rebind(const VectorFunction& like, const VectorFunction& other, const std::string& path) {
    if (other.ctx().centers() != like.ctx().centers())
        throw ContextMismatch(path + ": centers differ from the first operand");
    if (other.size() != like.size())
        throw ContextMismatch(path + ": sample sets differ from the first operand");
    for (std::size_t s = 0; s < like.size(); ++s)
        if (other.samples().point(s) != like.samples().point(s))
            throw ContextMismatch(path + ": sample " + std::to_string(s) + " differs from the first operand");
    return {like.samples_ptr(), std::vector<cplx>(other.values().begin(), other.values().end())};
}

// ---------------------------------------------------------------------------
// Matrix calculus
// ---------------------------------------------------------------------------

inline json to_json(const SpectrumData& s) {
    json entries = json::array();
    for (const auto& e : s.entries) entries.push_back({{"alpha", to_json(e.alpha)}, {"n", e.n}});
    return {{"entries", entries}};
}

inline SpectrumData spectrum_data_from(const json& j, const std::string& path = "spectrum") {
    SpectrumData s;
    const json& entries = field(j, "entries", path);
    if (!entries.is_array()) fail(path + ".entries", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = path + ".entries[" + std::to_string(i) + "]";
        const long long n = integer_from(field(entries[i], "n", p), p + ".n");
        if (n < 0) fail(p + ".n", "must be nonnegative");
        s.entries.push_back({complex_from(field(entries[i], "alpha", p), p + ".alpha"), static_cast<int>(n)});
    }
    s.validate();
    return s;
}

inline json to_json(const TestMatrixSpec& t) {
    json blocks = json::array();
    for (const auto& b : t.blocks) blocks.push_back({{"alpha", to_json(b.alpha)}, {"size", b.size}});
    json out{{"blocks", blocks}, {"target_cond", t.target_cond}};
    if (t.similarity_seed) out["similarity_seed"] = *t.similarity_seed;
    return out;
}

inline TestMatrixSpec test_matrix_spec_from(const json& j, const std::string& path = "test_matrix") {
    TestMatrixSpec t;
    const json& blocks = field(j, "blocks", path);
    if (!blocks.is_array()) fail(path + ".blocks", "expected an array");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string p = path + ".blocks[" + std::to_string(i) + "]";
        const long long size = integer_from(field(blocks[i], "size", p), p + ".size");
        if (size < 1) fail(p + ".size", "must be positive");
        t.blocks.push_back({complex_from(field(blocks[i], "alpha", p), p + ".alpha"), static_cast<int>(size)});
    }
    if (j.contains("similarity_seed")) {
        const json& s = j["similarity_seed"];
        if (!s.is_number_unsigned()) fail(path + ".similarity_seed", "expected a nonnegative integer");
        t.similarity_seed = s.get<std::uint64_t>();
    }
    if (j.contains("target_cond")) t.target_cond = real_from(j["target_cond"], path + ".target_cond");
    if (!(t.target_cond >= 1.0)) fail(path + ".target_cond", "must be at least 1");
    return t;
}

/// Derivative data for the Hermite oracle: {"values": [[phi, phi', ...], ...]} or the bare list.
inline std::vector<std::vector<cplx>> derivative_values_from(const json& j, const std::string& path = "values") {
    const json& list = j.is_object() ? field(j, "values", path) : j;
    const std::string p = j.is_object() ? path + ".values" : path;
    if (!list.is_array()) fail(p, "expected an array of derivative lists");
    std::vector<std::vector<cplx>> out;
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(complex_list_from(list[i], p + "[" + std::to_string(i) + "]"));
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const CharacteristicCoeffs& c) {
    json samples = json::array();
    for (std::size_t s = 0; s < c.w.size(); ++s) samples.push_back({{"w", to_json(c.w[s])}, {"Phi", to_json(c.phi[s])}});
    return {{"samples", samples}};
}

inline json to_json(const CharacterReport& r) {
    json etas = json::array();
    for (const auto& e : r.etas) etas.push_back(to_json(e));
    return {{"w0", to_json(r.w0)}, {"points", to_json(r.points)}, {"characters", etas}, {"max_residual", r.max_residual}};
}

inline json to_json(const ResolventReport& r) {
    return {{"lambda", to_json(r.lambda)},           {"empirical_c", r.empirical_c},
            {"distance", r.distance},                {"lower_bound", r.lower_bound},
            {"resolvent_norm", r.resolvent_norm},    {"lower_bound_holds", r.lower_bound_holds}};
}

inline json to_json(const SpectralMappingReport& r) {
    return {{"eigenvalues", to_json(r.eigenvalues)}, {"matrix_set", to_json(r.matrix_set)},
            {"quotient_set", to_json(r.quotient_set)}, {"full_set", to_json(r.full_set)},
            {"hausdorff", r.hausdorff}};
}

inline json to_json(const verify::Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass()}});
    return {{"suite", r.suite}, {"seed", r.seed},     {"params", r.params},
            {"metrics", r.metrics}, {"checks", checks}, {"pass", r.passed()}};
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

/// Parses `text` as JSON, reporting `what` on failure.
inline json parse(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(what, std::string("invalid JSON (") + e.what() + ")");
    }
}

/// Inline JSON when the argument looks like a JSON value, otherwise a file path.
inline json load(const std::string& arg, const std::string& what) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) fail(what, "empty argument");
    const char c = arg[first];
    if (c == '[' || c == '{' || c == '-' || (c >= '0' && c <= '9')) return parse(arg, what);
    std::ifstream in(arg);
    if (!in) fail(what, "cannot open file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), what + " (" + arg + ")");
}

/// CSV view of any document: one row per leaf, `path,value,imag`; [re, im]
/// pairs fill both value columns.
inline std::string to_csv(const json& j) {
    std::ostringstream out;
    out << "path,value,imag\n";
    const std::function<void(const json&, const std::string&)> walk = [&](const json& v, const std::string& path) {
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            out << path << ',' << v[0].dump() << ',' << v[1].dump() << '\n';
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) walk(v[i], path + "[" + std::to_string(i) + "]");
        } else if (v.is_object()) {
            for (const auto& [k, x] : v.items()) walk(x, path.empty() ? k : path + "." + k);
        } else {
            out << path << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << ",\n";
        }
    };
    walk(j, "");
    return out.str();
}

}  // namespace mcalc::io
