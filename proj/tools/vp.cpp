#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/functional.hpp"
#include "vp/perturb.hpp"
#include "vp/polar.hpp"
#include "vp/products.hpp"
#include "vp/rng.hpp"
#include "vp/suite.hpp"
#include "vp/volume.hpp"

namespace {

using nlohmann::json;

vp::ConvexBody load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vp::input_error("cannot open body file: " + path);
    json j;
    in >> j;
    return vp::body_from_json(j);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw vp::input_error("cannot open output file: " + out_path);
        out << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw vp::input_error("cannot open output file: " + out_path);
        out << text;
    }
}

json report_to_json(const vp::CheckReport& r) {
    json j = {{"name", r.name},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"relation", vp::relation_symbol(r.relation)},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
    if (r.seed.has_value()) j["seed"] = *r.seed;
    if (r.samples > 0) j["samples"] = r.samples;
    if (!r.flags.empty()) j["flags"] = r.flags;
    if (r.equality) j["equality"] = true;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

vp::Vec parse_direction(const std::string& text) {
    vp::Vec x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) x.push_back(std::stod(item));
    return x;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume-product verification toolkit for symmetric convex bodies"};
    app.require_subcommand(1);

    std::string in_path, out_path, format = "json";
    std::uint64_t seed = 1;
    std::uint64_t samples = 200000;
    double tol = 0.0;
    int jobs = 1;

    // body polar | body volume
    CLI::App* body_cmd = app.add_subcommand("body", "polar and volume of a body");
    CLI::App* body_polar = body_cmd->add_subcommand("polar", "emit the polar body as JSON");
    body_polar->add_option("--in", in_path, "body JSON file")->required();
    body_polar->add_option("--out", out_path, "output path (default stdout)");

    std::string method = "exact";
    CLI::App* body_volume = body_cmd->add_subcommand("volume", "volume of a body");
    body_volume->add_option("--in", in_path, "body JSON file")->required();
    body_volume->add_option("--method", method, "exact | mc | sphere (sphere = polar volume)");
    body_volume->add_option("--samples", samples, "Monte Carlo samples");
    body_volume->add_option("--seed", seed, "Monte Carlo seed");
    body_volume->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* volume_alias = app.add_subcommand("volume", "alias of `body volume`");
    volume_alias->add_option("--in", in_path)->required();
    volume_alias->add_option("--method", method);
    volume_alias->add_option("--samples", samples);
    volume_alias->add_option("--seed", seed);
    volume_alias->add_option("--out", out_path);

    CLI::App* mahler_cmd = app.add_subcommand("mahler", "volume product vol(K) vol(K*)");
    mahler_cmd->add_option("--in", in_path)->required();
    mahler_cmd->add_option("--method", method);
    mahler_cmd->add_option("--samples", samples);
    mahler_cmd->add_option("--seed", seed);
    mahler_cmd->add_option("--out", out_path);

    // verify <check>
    CLI::App* verify = app.add_subcommand("verify", "run one named verification check");
    std::string check_name, fn = "gaussian", witness = "cube", x_text;
    double p_exponent = 1.0, a_coeff = 1.0, extent = 8.0;
    int dim = 2, lattice_radius = 50, grid_m = 257;
    std::string verify_manifest;
    verify->add_option("check", check_name,
                       "santalo|bipolar|invariance|lemma33|lemma34|lemma35|zonoid|rho|eta|"
                       "poisson|plancherel|functional-santalo|functional-ball|ball|"
                       "santalo-reduction|batch")
        ->required();
    verify->add_option("--in", in_path, "body JSON file (body-based checks)");
    verify->add_option("--method", method, "exact | mc route (lemma33, lemma35)");
    verify->add_option("--manifest", verify_manifest, "manifest JSON (batch)");
    verify->add_option("--format", format, "json | csv (batch)");
    verify->add_option("--jobs", jobs, "concurrent checks (batch)");
    verify->add_option("--x", x_text, "direction, comma separated (lemma35)");
    verify->add_option("--p", p_exponent, "concavity exponent (lemma34)");
    verify->add_option("--a", a_coeff, "tent slope (lemma34)");
    verify->add_option("--fn", fn, "profile / catalog function name");
    verify->add_option("--body", witness, "cube | ball (rho)");
    verify->add_option("--dim", dim, "dimension for function checks");
    verify->add_option("--lattice-radius", lattice_radius, "truncation radius (eta, poisson)");
    verify->add_option("--extent", extent, "grid extent (functional checks)");
    verify->add_option("--m", grid_m, "grid points per axis (functional checks)");
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_option("--tol", tol, "override the pass tolerance");
    verify->add_option("--out", out_path);

    // functional polar
    CLI::App* functional = app.add_subcommand("functional", "grid-function operations");
    CLI::App* fpolar = functional->add_subcommand("polar", "polar of a grid function");
    fpolar->add_option("--fn", fn, "gaussian | indicator | exp-neg-gauge")->required();
    fpolar->add_option("--body", in_path, "body JSON (indicator / exp-neg-gauge)");
    fpolar->add_option("--dim", dim, "dimension (gaussian)");
    fpolar->add_option("--extent", extent);
    fpolar->add_option("--m", grid_m);
    fpolar->add_option("--out", out_path, "grid JSON output");

    // bm-distance
    CLI::App* bm = app.add_subcommand("bm-distance", "Banach-Mazur distance upper bound");
    std::string a_path, b_path;
    int restarts = 20, iterations = 400;
    bm->add_option("--a", a_path, "body K")->required();
    bm->add_option("--b", b_path, "body L")->required();
    bm->add_option("--restarts", restarts);
    bm->add_option("--iterations", iterations);
    bm->add_option("--seed", seed);
    bm->add_option("--out", out_path);

    // stability
    CLI::App* stability = app.add_subcommand("stability", "cube perturbation probe");
    std::string eps_text = "0.02,0.05,0.1";
    int trials = 50;
    int sdim = 3;
    stability->add_option("--dim", sdim, "2 or 3");
    stability->add_option("--eps", eps_text, "comma separated perturbation sizes");
    stability->add_option("--trials", trials);
    stability->add_option("--seed", seed);
    stability->add_option("--out", out_path, "CSV table output");

    // paper-suite
    CLI::App* suite = app.add_subcommand("paper-suite", "full verification battery");
    bool quick = false;
    suite->add_option("--seed", seed);
    suite->add_flag("--quick", quick, "divide sample budgets by 10");
    suite->add_option("--out", out_path);
    suite->add_option("--format", format, "json | csv");

    // run --manifest
    CLI::App* run = app.add_subcommand("run", "run a manifest of checks");
    std::string manifest_path;
    run->add_option("--manifest", manifest_path, "manifest JSON")->required();
    run->add_option("--jobs", jobs, "concurrent checks");
    run->add_option("--out", out_path, "override manifest output path");
    run->add_option("--format", format, "override manifest format");

    CLI11_PARSE(app, argc, argv);

    try {
        if (body_polar->parsed()) {
            emit(vp::body_to_json(vp::polar(load_body(in_path))), out_path);
            return 0;
        }
        if (body_volume->parsed() || volume_alias->parsed()) {
            vp::ConvexBody body = load_body(in_path);
            json out;
            if (method == "exact") {
                out = {{"value", vp::volume(body)}, {"method", "exact"}};
            } else if (method == "mc") {
                vp::McEstimate est = vp::volume_mc(body, samples, seed);
                out = {{"value", est.value}, {"std_error", est.std_error},
                       {"samples", est.samples}, {"seed", est.seed}, {"method", "mc"}};
            } else if (method == "sphere") {
                vp::McEstimate est = vp::polar_volume_sphere(body, samples, seed);
                out = {{"value", est.value}, {"std_error", est.std_error},
                       {"samples", est.samples}, {"seed", est.seed}, {"method", "sphere"},
                       {"note", "value estimates vol(K*)"}};
            } else {
                throw vp::input_error("unknown method \"" + method + "\"");
            }
            emit(out, out_path);
            return 0;
        }
        if (mahler_cmd->parsed()) {
            vp::ConvexBody body = load_body(in_path);
            json out;
            if (method == "mc") {
                vp::McEstimate est = vp::mahler_mc(body, samples, seed);
                out = {{"value", est.value}, {"std_error", est.std_error},
                       {"samples", est.samples}, {"seed", est.seed}, {"method", "mc"}};
            } else {
                out = {{"value", vp::mahler(body)}, {"method", "exact"}};
            }
            emit(out, out_path);
            return 0;
        }
        if (verify->parsed() && check_name == "batch") {
            if (verify_manifest.empty())
                throw vp::input_error("verify batch: --manifest is required");
            vp::RunManifest manifest;
            try {
                manifest = vp::manifest_from_file(verify_manifest);
            } catch (const vp::input_error& e) {
                std::fprintf(stderr, "manifest error: %s\n", e.what());
                return 2;
            }
            if (!out_path.empty()) manifest.output_path = out_path;
            if (verify->count("--format") > 0) manifest.format = format;
            vp::RunResult result = vp::run_manifest(manifest, jobs);
            if (manifest.format == "csv")
                emit_text(vp::report_csv(result.rows), manifest.output_path);
            else
                emit(vp::report_json(result.rows), manifest.output_path);
            return result.all_pass ? 0 : 1;
        }
        if (verify->parsed()) {
            json params;
            if (!in_path.empty()) {
                std::ifstream in(in_path);
                if (!in) throw vp::input_error("cannot open body file: " + in_path);
                json body_json;
                in >> body_json;
                params["body_inline"] = body_json;
            }
            if (!x_text.empty()) params["x"] = parse_direction(x_text);
            params["method"] = method;
            params["p"] = p_exponent;
            params["a"] = a_coeff;
            params["fn"] = fn;
            if (check_name == "rho") params["body"] = witness;
            params["dim"] = dim;
            params["lattice_radius"] = lattice_radius;
            params["extent"] = extent;
            if (verify->count("--m") > 0) params["m"] = grid_m; // else dim-aware default
            params["samples"] = samples;
            std::vector<vp::CheckReport> reports = vp::run_named_check(check_name, params, seed);
            bool all_pass = true;
            json arr = json::array();
            for (vp::CheckReport& r : reports) {
                if (tol > 0.0) {
                    vp::CheckReport redone = vp::make_report(r.name, r.lhs, r.rhs, r.relation, tol);
                    redone.flags = r.flags;
                    redone.notes = r.notes;
                    redone.seed = r.seed;
                    redone.samples = r.samples;
                    r = redone;
                }
                all_pass = all_pass && r.pass;
                arr.push_back(report_to_json(r));
            }
            emit(arr, out_path);
            return all_pass ? 0 : 1;
        }
        if (fpolar->parsed()) {
            vp::GridFunction grid;
            bool m_given = fpolar->count("--m") > 0;
            if (fn == "gaussian") {
                int m = m_given ? grid_m : (dim == 3 ? 65 : 257);
                grid = vp::grid_gaussian(dim, extent, m);
            } else {
                if (in_path.empty())
                    throw vp::input_error("functional polar: --body is required for " + fn);
                vp::ConvexBody body = load_body(in_path);
                int m = m_given ? grid_m : (body.dim() == 3 ? 65 : 257);
                grid = fn == "indicator" ? vp::grid_indicator(body, extent, m)
                                         : vp::grid_exp_neg_gauge(body, extent, m);
            }
            vp::PolarTransformResult res = vp::polar_function(grid);
            json out = vp::grid_to_json(res.polar);
            if (res.sup_error_vs_analytic)
                out["sup_error_vs_analytic"] = *res.sup_error_vs_analytic;
            emit(out, out_path);
            return 0;
        }
        if (bm->parsed()) {
            vp::ConvexBody a = load_body(a_path);
            vp::ConvexBody b = load_body(b_path);
            vp::BmCertificate cert = vp::bm_distance_upper(a, b, restarts, iterations, seed);
            json rows = json::array();
            for (std::size_t r = 0; r < cert.t.rows(); ++r) rows.push_back(cert.t.row(r));
            emit({{"d_upper", cert.d},
                  {"T", rows},
                  {"note", "upper bound with a sampled certificate; the infimum itself "
                           "is not certified"}},
                 out_path);
            return 0;
        }
        if (stability->parsed()) {
            std::vector<double> eps;
            std::stringstream ss(eps_text);
            std::string item;
            while (std::getline(ss, item, ',')) eps.push_back(std::stod(item));
            vp::StabilityResult res = vp::stability_experiment(sdim, eps, trials, seed);
            std::ostringstream csv;
            csv << "vp-stability-v1\n";
            csv << "epsilon,trial,deltaP,dhat_minus_1\n";
            char buf[128];
            for (const vp::StabilityRow& row : res.rows) {
                std::snprintf(buf, sizeof(buf), "%.12g,%d,%.12g,%.12g\n", row.epsilon, row.trial,
                              row.delta_p, row.dhat_minus_1);
                csv << buf;
            }
            emit_text(csv.str(), out_path);
            bool ok = true;
            for (const vp::CheckReport& rep : res.aggregates) {
                std::fprintf(stderr, "%s %s lhs=%.6g\n", rep.pass ? "PASS" : "FAIL",
                             rep.name.c_str(), rep.lhs);
                ok = ok && rep.pass;
            }
            std::fprintf(stderr, "note: %s\n", res.bias_note.c_str());
            return ok ? 0 : 1;
        }
        if (suite->parsed()) {
            vp::SuiteOptions opts;
            opts.seed = seed;
            opts.quick = quick;
            std::vector<vp::CheckReport> reports = vp::paper_suite(opts);
            bool ok = true;
            std::vector<vp::RunRow> rows;
            for (const vp::CheckReport& r : reports) {
                std::printf("%s  %-40s lhs=%-14.8g rhs=%-14.8g tol=%.3g\n",
                            r.pass ? "PASS" : "FAIL", r.name.c_str(), r.lhs, r.rhs, r.tolerance);
                ok = ok && r.pass;
                rows.push_back({r, 0.0});
            }
            if (!out_path.empty()) {
                if (format == "csv")
                    emit_text(vp::report_csv(rows), out_path);
                else
                    emit(vp::report_json(rows), out_path);
            }
            std::printf("%s: %zu checks\n", ok ? "ALL PASS" : "FAILURES", reports.size());
            return ok ? 0 : 1;
        }
        if (run->parsed()) {
            vp::RunManifest manifest;
            try {
                manifest = vp::manifest_from_file(manifest_path);
            } catch (const vp::input_error& e) {
                std::fprintf(stderr, "manifest error: %s\n", e.what());
                return 2;
            }
            if (!out_path.empty()) manifest.output_path = out_path;
            if (run->count("--format") > 0) manifest.format = format;
            if (manifest.checks.empty())
                std::fprintf(stderr, "warning: manifest contains no checks\n");
            vp::RunResult result = vp::run_manifest(manifest, jobs);
            if (manifest.format == "csv")
                emit_text(vp::report_csv(result.rows), manifest.output_path);
            else
                emit(vp::report_json(result.rows), manifest.output_path);
            return result.all_pass ? 0 : 1;
        }
    } catch (const vp::input_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const vp::precondition_error& e) {
        std::fprintf(stderr, "precondition error: %s\n", e.what());
        return 2;
    } catch (const vp::capability_error& e) {
        std::fprintf(stderr, "capability error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
