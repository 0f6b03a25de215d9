// mcalc: command-line front end. Every subcommand reads JSON (inline or a
// file path) and writes one JSON document. Exit codes: 0 success,
// 1 numerical failure or failed verification, 2 usage or validation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "multicentric.hpp"
#include "multicentric/io.hpp"

namespace {

using namespace mcalc;
using io::json;

struct Globals {
    ToleranceConfig tol;
    std::uint64_t seed = 7;
    std::string format = "json";
    std::string output;
};

/// A subcommand's arguments as raw strings; parsing happens after CLI11.
struct Args {
    std::string f, g, centers, poly, matrix, spectrum, phi, values, suite;
    std::string w = "0", z, lambda;
    std::optional<int> k_max, d, samples, trials;
    std::string k0;
};

cplx complex_arg(const std::string& s, const std::string& what) { return io::complex_from(io::load(s, what), what); }

std::vector<cplx> complex_or_list(const json& j, const std::string& what) {
    if (j.is_array() && !(j.size() == 2 && j[0].is_number() && j[1].is_number())) return io::complex_list_from(j, what);
    return {io::complex_from(j, what)};
}

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) throw MalformedInput(flag + ": required");
}

ContextPtr context_arg(const Args& a, const Globals& g) {
    if (!a.centers.empty()) return make_context(io::lambdas_from(io::load(a.centers, "--centers"), "--centers"), g.tol);
    if (!a.poly.empty())
        return AlgebraContext::from_polynomial(io::polynomial_from(io::load(a.poly, "--poly"), "--poly"), g.tol);
    throw MalformedInput("--centers: required (or --poly)");
}

std::optional<std::vector<cplx>> centers_override(const Args& a) {
    if (a.centers.empty()) return std::nullopt;
    return io::lambdas_from(io::load(a.centers, "--centers"), "--centers");
}

VectorFunction function_arg(const std::string& text, const std::string& flag, const Args& a, const Globals& g) {
    require(text, flag);
    return io::vector_function_from(io::load(text, flag), g.tol, centers_override(a), flag);
}

/// --matrix accepts a matrix document or a TestMatrixSpec; the latter also
/// supplies the spectrum data when --spectrum is absent.
std::pair<ComplexMatrix, SpectrumData> matrix_and_spectrum(const Args& a) {
    require(a.matrix, "--matrix");
    const json mj = io::load(a.matrix, "--matrix");
    std::optional<SpectrumData> implied;
    ComplexMatrix m;
    if (mj.is_object() && mj.contains("blocks")) {
        const TestMatrix t = build_test_matrix(io::test_matrix_spec_from(mj, "--matrix"));
        m = t.a;
        implied = t.spectrum;
    } else {
        m = io::matrix_from(mj, "--matrix");
    }
    if (!a.spectrum.empty()) return {m, io::spectrum_data_from(io::load(a.spectrum, "--spectrum"), "--spectrum")};
    if (!implied) throw MalformedInput("--spectrum: required");
    return {m, *implied};
}

json run(const std::string& cmd, const Args& a, const Globals& g, bool& ok) {
    if (cmd == "roots") {
        require(a.poly, "--poly");
        return {{"roots", io::to_json(roots(io::polynomial_from(io::load(a.poly, "--poly"), "--poly"), g.tol))}};
    }
    if (cmd == "basis") {
        const auto ctx = context_arg(a, g);
        json delta = json::array();
        for (const auto& d : ctx->delta()) delta.push_back(io::to_json(d));
        json crit = json::array();
        for (const auto& c : ctx->critical().points) crit.push_back({{"point", io::to_json(c.center)}, {"multiplicity", c.multiplicity}});
        return {{"centers", io::to_json(ctx->centers())}, {"p", io::to_json(ctx->p())},     {"delta", delta},
                {"L", io::to_json(ctx->L())},             {"ell", io::to_json(ctx->ell())}, {"sigma", io::to_json(ctx->sigma())},
                {"critical_points", crit},                {"critical_values", io::to_json(ctx->critical().values)}};
    }
    if (cmd == "fiber") {
        const auto ctx = context_arg(a, g);
        return io::to_json(ctx->fiber(complex_arg(a.w, "--w")));
    }
    if (cmd == "gelfand") {
        const auto f = function_arg(a.f, "--f", a, g);
        require(a.z, "--z");
        json out = json::array();
        for (const cplx& z : complex_or_list(io::load(a.z, "--z"), "--z"))
            out.push_back({{"z", io::to_json(z)}, {"value", io::to_json(gelfand_eval(f, z))}});
        return {{"values", out}};
    }
    if (cmd == "invtransform") {
        const auto ctx = context_arg(a, g);
        require(a.phi, "--phi");
        const auto s = io::phi_samples_from(io::load(a.phi, "--phi"), "--phi");
        return {{"w", io::to_json(s.w)}, {"f", io::to_json(inverse_transform(*ctx, s.values, s.w))}};
    }
    if (cmd == "polyprod") {
        const auto f = function_arg(a.f, "--f", a, g);
        const auto h = io::rebind(f, function_arg(a.g, "--g", a, g), "--g");
        return io::to_json(polyprod(f, h));
    }
    if (cmd == "norm") {
        const auto f = function_arg(a.f, "--f", a, g);
        return {{"sup_norm", sup_norm(f)}, {"op_norm", op_norm(f)}};
    }
    if (cmd == "spectrum") {
        const auto f = function_arg(a.f, "--f", a, g);
        json out{{"spectrum", io::to_json(spectrum(f))},
                 {"multiset", io::to_json(spectrum_multiset(f))},
                 {"spectral_radius", spectral_radius(f)}};
        if (a.k_max) out["power_sequence"] = spectral_radius_iter(f, *a.k_max);
        if (!a.k0.empty()) out["quotient_spectrum"] = io::to_json(quotient_spectrum(f, io::complex_list_from(io::load(a.k0, "--k0"), "--k0")));
        return out;
    }
    if (cmd == "charfunc") return io::to_json(characteristic(function_arg(a.f, "--f", a, g)));
    if (cmd == "invert") {
        const auto f = function_arg(a.f, "--f", a, g);
        if (!a.lambda.empty()) return io::to_json(resolvent_bound_check(f, complex_arg(a.lambda, "--lambda")));
        return io::to_json(invert(f));
    }
    if (cmd == "characters") {
        const auto ctx = context_arg(a, g);
        return io::to_json(characters_at(*ctx, complex_arg(a.w, "--w0")));
    }
    if (cmd == "radical") {
        const auto ctx = context_arg(a, g);
        json basis = json::array();
        for (const auto& v : radical_basis_at(*ctx, complex_arg(a.w, "--w0"))) basis.push_back(io::to_json(v));
        return {{"basis", basis}};
    }
    if (cmd == "chi") {
        const auto [m, s] = matrix_and_spectrum(a);
        const auto f = function_arg(a.f, "--f", a, g);
        if (!a.poly.empty()) return io::to_json(chi_A(m, s, io::polynomial_from(io::load(a.poly, "--poly"), "--poly"), f));
        return io::to_json(chi_A(m, s, f));
    }
    if (cmd == "hermite") {
        const auto [m, s] = matrix_and_spectrum(a);
        require(a.values, "--values");
        return io::to_json(hermite_matrix_function(m, s, io::derivative_values_from(io::load(a.values, "--values"), "--values")));
    }
    if (cmd == "specmap") {
        const auto [m, s] = matrix_and_spectrum(a);
        return io::to_json(spectral_mapping_check(m, s, function_arg(a.f, "--f", a, g)));
    }
    if (cmd == "verify") {
        verify::Options o;
        o.seed = g.seed;
        o.tol = g.tol;
        o.d = a.d;
        o.samples = a.samples;
        o.trials = a.trials;
        json reports = json::array();
        for (const auto& r : verify::run(a.suite, o)) {
            ok = ok && r.passed();
            reports.push_back(io::to_json(r));
        }
        return {{"reports", reports}, {"pass", ok}};
    }
    throw MalformedInput("unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multicentric algebra and matrix functional calculus"};
    app.require_subcommand(1);
    Globals g;
    Args a;
    app.add_option("--tol", g.tol.eq_tol, "relative comparison tolerance")->capture_default_str();
    app.add_option("--crit-tol", g.tol.crit_tol, "critical-point distance")->capture_default_str();
    app.add_option("--root-tol", g.tol.root_tol, "root residual bound")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--output", g.output, "output file (default: stdout)");

    const auto add = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };
    const auto ctx_opts = [&](CLI::App* s) {
        s->add_option("--centers", a.centers, "centers: JSON list of [re,im] or {\"lambdas\": [...]}");
        s->add_option("--poly", a.poly, "monic polynomial {\"coeffs\": [...]} with simple roots");
    };
    const auto f_opt = [&](CLI::App* s) { s->add_option("--f", a.f, "VectorFunction JSON")->required(); };
    const auto mat_opts = [&](CLI::App* s) {
        s->add_option("--matrix", a.matrix, "matrix JSON or TestMatrixSpec JSON")->required();
        s->add_option("--spectrum", a.spectrum, "SpectrumData JSON");
    };

    auto* roots_cmd = add("roots", "roots of a polynomial");
    roots_cmd->add_option("--poly", a.poly, "polynomial JSON")->required();

    auto* basis = add("basis", "Lagrange basis, scaling matrices and critical data");
    ctx_opts(basis);
    auto* fib = add("fiber", "solutions of p(z) = w");
    ctx_opts(fib);
    fib->add_option("--w", a.w, "complex w")->required();

    auto* gel = add("gelfand", "multicentric representation f-hat at points z");
    ctx_opts(gel);
    f_opt(gel);
    gel->add_option("--z", a.z, "complex z or list")->required();

    auto* inv_t = add("invtransform", "recover f(w) from phi on the fiber over w");
    ctx_opts(inv_t);
    inv_t->add_option("--phi", a.phi, "phi-sample JSON")->required();

    auto* pp = add("polyprod", "polyproduct f * g");
    ctx_opts(pp);
    f_opt(pp);
    pp->add_option("--g", a.g, "VectorFunction JSON")->required();

    auto* nrm = add("norm", "sup norm and operator norm");
    ctx_opts(nrm);
    f_opt(nrm);

    auto* spec = add("spectrum", "spectrum, spectral radius, power sequence");
    ctx_opts(spec);
    f_opt(spec);
    spec->add_option("--k-max", a.k_max, "also report ||f^(2^k)||^(1/2^k), k = 0..k_max");
    spec->add_option("--k0", a.k0, "points z of K0 for the quotient spectrum");

    auto* cf = add("charfunc", "characteristic function coefficients");
    ctx_opts(cf);
    f_opt(cf);

    auto* inv = add("invert", "inverse element, or the resolvent report with --lambda");
    ctx_opts(inv);
    f_opt(inv);
    inv->add_option("--lambda", a.lambda, "complex lambda for the resolvent check");

    auto* chars = add("characters", "characters over w0");
    ctx_opts(chars);
    chars->add_option("--w0", a.w, "complex w0")->required();

    auto* rad = add("radical", "radical basis over w0");
    ctx_opts(rad);
    rad->add_option("--w0", a.w, "complex w0")->required();

    auto* chi = add("chi", "matrix functional calculus chi_A(f)");
    mat_opts(chi);
    f_opt(chi);
    chi->add_option("--centers", a.centers, "centers override");
    chi->add_option("--poly", a.poly, "variable changer p, checked against the centers of f");

    auto* herm = add("hermite", "classical matrix function from derivative data");
    mat_opts(herm);
    herm->add_option("--values", a.values, "per eigenvalue: [phi, phi', ...]")->required();

    auto* sm = add("specmap", "spectral mapping check");
    mat_opts(sm);
    f_opt(sm);
    sm->add_option("--centers", a.centers, "centers override");

    auto* ver = add("verify", "run acceptance suites");
    std::vector<std::string> names{"all"};
    for (const auto& [name, fn] : verify::suites()) names.push_back(name);
    ver->add_option("suite", a.suite, "suite name")->required()->check(CLI::IsMember(names));
    ver->add_option("--d", a.d, "number of centers (fixed)");
    ver->add_option("--samples", a.samples, "sample points per instance");
    ver->add_option("--trials", a.trials, "random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        g.tol.validate();
        bool ok = true;
        const json result = run(cmd, a, g, ok);
        const std::string text = g.format == "csv" ? io::to_csv(result) : result.dump(2) + "\n";
        if (g.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(g.output);
            if (!out) throw MalformedInput("--output: cannot open '" + g.output + "'");
            out << text;
        }
        return ok ? 0 : 1;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
