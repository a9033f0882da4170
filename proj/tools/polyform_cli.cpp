#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyform/polyform.hpp"

namespace {

using polyform::Complex;

constexpr int kExitParse = 2;
constexpr int kExitSize = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitConvergence = 5;
constexpr int kExitInfeasible = 6;
constexpr int kExitVerifyFailed = 7;

Complex parse_complex_arg(const std::string& s) {
    double re = 0.0, im = 0.0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2)
        throw polyform::ParseError("expected re,im but got '" + s + "'");
    return Complex{re, im};
}

std::string cx(const Complex& z) {
    return "(" + polyform::format_double(z.real()) + "," +
           polyform::format_double(z.imag()) + ")";
}

polyform::Polygon random_polygon(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> v(n);
    for (Complex& z : v) z = Complex{dist(rng), dist(rng)};
    return polyform::Polygon{std::move(v)};
}

// geometric-mean per-step ratio of distances inside [1e-9, 1e-2]
std::optional<double> fitted_rate(const polyform::Trajectory& t) {
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t i = 1; i < t.frames.size(); ++i) {
        const auto& prev = t.frames[i - 1].distance_to_target;
        const auto& cur = t.frames[i].distance_to_target;
        if (!prev || !cur) continue;
        if (*prev < 1e-9 || *prev > 1e-2 || *cur < 1e-9 || *cur > 1e-2) continue;
        log_sum += std::log(*cur / *prev);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return std::exp(log_sum / count);
}

int cmd_iterate(const std::string& polygon_path, const std::string& weights_path,
                std::size_t steps, const std::string& target_path,
                const std::string& svg_path, const std::string& out_path) {
    polyform::Polygon p{{0, 1, 2}};
    polyform::WeightVector w{{0, 0, 0}};
    std::optional<polyform::Polygon> target;
    try {
        p = polyform::read_polygon_file(polygon_path);
        w = polyform::read_weights_file(weights_path);
        if (!target_path.empty()) target = polyform::read_polygon_file(target_path);
    } catch (const polyform::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        polyform::Trajectory t = polyform::iterate(p, w, steps, target);
        polyform::write_text_file(out_path, polyform::trajectory_to_jsonl(t));
        if (!svg_path.empty())
            polyform::write_text_file(svg_path, polyform::trajectory_svg(t));
        if (t.collapsed)
            std::cerr << "warning: iterate collapsed to a point polygon; trajectory truncated\n";
        return 0;
    } catch (const polyform::SizeMismatch& e) {
        std::cerr << "size mismatch: " << e.what() << "\n";
        return kExitSize;
    } catch (const polyform::DegeneratePolygon& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

int cmd_spectrum(const std::string& weights_path, bool as_json) {
    polyform::WeightVector w{{0, 0, 0}};
    try {
        w = polyform::read_weights_file(weights_path);
    } catch (const polyform::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    polyform::Spectrum s;
    try {
        bool has_zero = false;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == Complex{0.0, 0.0}) has_zero = true;
        s = has_zero ? polyform::eigenvalues_case1(w) : polyform::eigenvalues_general(w);
    } catch (const polyform::ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    }
    polyform::CharPoly p = polyform::char_poly(w);
    const double scale = 1.0 + p.max_coefficient_magnitude();

    if (as_json) std::cout << "[";
    for (std::size_t i = 0; i < s.eigenvalues_of_M.size(); ++i) {
        const Complex& mu = s.eigenvalues_of_M[i];
        const char* prov = s.provenance[i] == polyform::RootProvenance::ClosedForm
                               ? "closed-form"
                               : "numeric";
        const double residual = std::abs(p.eval(mu - Complex{1.0, 0.0})) / scale;
        if (as_json) {
            if (i) std::cout << ",";
            std::cout << "{\"re\":" << polyform::format_double(mu.real())
                      << ",\"im\":" << polyform::format_double(mu.imag())
                      << ",\"provenance\":\"" << prov << "\""
                      << ",\"residual\":" << polyform::format_double(residual) << "}";
        } else {
            std::cout << cx(mu) << " " << prov << " residual="
                      << polyform::format_double(residual) << "\n";
        }
    }
    if (as_json) std::cout << "]\n";
    return 0;
}

int cmd_design(const std::string& target_path, unsigned seed,
               const std::string& out_path, bool report) {
    polyform::Polygon v{{0, 1, 2}};
    try {
        v = polyform::read_polygon_file(target_path);
    } catch (const polyform::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    polyform::DesignResult r = polyform::design_general(v, seed);
    if (r.status == polyform::DesignStatus::DegenerateTarget) {
        std::cerr << "degenerate target: " << r.note << "\n";
        return kExitDegenerate;
    }
    if (r.status == polyform::DesignStatus::Infeasible) {
        std::cerr << "infeasible: " << r.note << "\n";
        return kExitInfeasible;
    }
    if (!out_path.empty())
        polyform::write_text_file(out_path, polyform::weights_to_json(r.weights));
    if (report) {
        std::cout << "lambda=" << cx(r.lambda) << "\n";
        std::cout << "dominant=" << cx(r.dominant) << "\n";
        for (const Complex& c : r.competing) std::cout << "competing=" << cx(c) << "\n";
        std::cout << "predicted_rate=" << polyform::format_double(r.predicted_rate)
                  << "\n";
        std::cout << "margin=" << polyform::format_double(1.0 - r.predicted_rate)
                  << "\n";
        polyform::Polygon anchored = polyform::translate_to_anchor(v);
        if (anchored.size() > 3) {
            for (const Complex& mu : polyform::competing_mus(anchored)) {
                polyform::LambdaRegion reg = polyform::lambda_region(mu);
                std::cout << "region mu=" << cx(mu) << " kind="
                          << polyform::region_kind_name(reg.kind) << "\n";
            }
        }
    }
    return 0;
}

int cmd_region(const std::vector<std::string>& mu_args, std::size_t samples,
               const std::string& svg_path) {
    std::vector<Complex> mus;
    try {
        for (const std::string& s : mu_args) mus.push_back(parse_complex_arg(s));
    } catch (const polyform::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    std::vector<polyform::LambdaRegion> regions;
    for (const Complex& mu : mus) {
        polyform::LambdaRegion r = polyform::lambda_region(mu);
        std::cout << "mu=" << cx(mu) << " kind=" << polyform::region_kind_name(r.kind);
        if (r.omega)
            std::cout << " center=" << cx(*r.omega) << " radius="
                      << polyform::format_double(std::abs(*r.omega));
        if (r.direction) std::cout << " direction=" << cx(*r.direction);
        std::cout << "\n";
        regions.push_back(r);
    }

    const double extent = 10.0;
    const std::size_t side = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples)))));
    std::size_t inside = 0, total = 0;
    std::vector<Complex> hits;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const Complex lambda{-extent + 2 * extent * (i + 0.5) / side,
                                 -extent + 2 * extent * (j + 0.5) / side};
            bool all = true;
            for (const polyform::LambdaRegion& r : regions)
                if (!polyform::region_contains(r, lambda)) {
                    all = false;
                    break;
                }
            ++total;
            if (all) {
                ++inside;
                if (hits.size() < 2000) hits.push_back(lambda);
            }
        }
    }
    std::cout << "intersection_fraction="
              << polyform::format_double(static_cast<double>(inside) / total) << "\n";
    if (!svg_path.empty())
        polyform::write_text_file(svg_path, polyform::regions_svg(regions, hits, extent));
    return 0;
}

int cmd_verify(const std::string& target_path, const std::string& weights_path,
               std::size_t steps, unsigned seed) {
    polyform::Polygon v{{0, 1, 2}};
    polyform::WeightVector w{{0, 0, 0}};
    try {
        v = polyform::read_polygon_file(target_path);
        w = polyform::read_weights_file(weights_path);
    } catch (const polyform::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    if (v.size() != w.size()) {
        std::cerr << "size mismatch: target has " << v.size() << " vertices, weights "
                  << w.size() << "\n";
        return kExitSize;
    }
    try {
        // eigen residual of the target vector under the given weights
        polyform::Polygon anchored = polyform::translate_to_anchor(v);
        polyform::Polygon mv = polyform::apply_step(anchored, w);
        Complex num{0.0, 0.0};
        double den = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            num += mv[i] * std::conj(anchored[i]);
            den += std::norm(anchored[i]);
        }
        const Complex mu_est = num / den;
        double res = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            res += std::norm(mv[i] - mu_est * anchored[i]);
        res = std::sqrt(res / den);
        std::cout << "target_eigenvalue=" << cx(mu_est) << "\n";
        std::cout << "target_residual=" << polyform::format_double(res) << "\n";

        bool has_zero = false;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == Complex{0.0, 0.0}) has_zero = true;
        polyform::Spectrum s =
            has_zero ? polyform::eigenvalues_case1(w) : polyform::eigenvalues_general(w);
        bool dominant = true;
        for (const Complex& mu : s.eigenvalues_of_M) {
            if (std::abs(mu - mu_est) <= 1e-6 * (1.0 + std::abs(mu_est))) continue;
            if (std::abs(mu - Complex{1.0, 0.0}) <= 1e-9) continue; // ones direction
            if (std::abs(mu) >= std::abs(mu_est)) dominant = false;
        }
        std::cout << "dominant=" << (dominant ? "true" : "false") << "\n";

        std::mt19937 rng(seed);
        polyform::Polygon start = random_polygon(v.size(), rng);
        polyform::Trajectory t = polyform::iterate(start, w, steps, v);
        const double final_distance = t.frames.back().distance_to_target.value_or(2.0);
        std::cout << "final_distance=" << polyform::format_double(final_distance)
                  << "\n";
        if (auto rate = fitted_rate(t))
            std::cout << "fitted_rate=" << polyform::format_double(*rate) << "\n";
        return final_distance < 1e-6 ? 0 : kExitVerifyFailed;
    } catch (const polyform::SizeMismatch& e) {
        std::cerr << "size mismatch: " << e.what() << "\n";
        return kExitSize;
    } catch (const polyform::DegeneratePolygon& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterative linear polygon transformations and inverse weight design"};
    app.require_subcommand(1);

    // iterate
    std::string it_polygon, it_weights, it_target, it_svg, it_out = "trajectory.jsonl";
    std::size_t it_steps = 10;
    auto* it = app.add_subcommand("iterate", "run the transformation and record frames");
    it->add_option("polygon", it_polygon, "start polygon JSON file")->required();
    it->add_option("weights", it_weights, "weights JSON file")->required();
    it->add_option("--steps", it_steps, "number of steps");
    it->add_option("--target", it_target, "target polygon for distance tracking");
    it->add_option("--svg", it_svg, "write an SVG of the frames");
    it->add_option("--out", it_out, "output JSON-lines path");

    // spectrum
    std::string sp_weights;
    bool sp_json = false;
    auto* sp = app.add_subcommand("spectrum", "eigenvalues of the transition matrix");
    sp->add_option("weights", sp_weights, "weights JSON file")->required();
    sp->add_flag("--json", sp_json, "JSON array output");

    // design
    std::string de_target, de_out;
    unsigned de_seed = 0;
    bool de_report = false;
    auto* de = app.add_subcommand("design", "construct weights for a target polygon");
    de->add_option("target", de_target, "target polygon JSON file")->required();
    de->add_option("--seed", de_seed, "search seed");
    de->add_option("--out", de_out, "output weights JSON path");
    de->add_flag("--report", de_report, "print the design report");

    // region
    std::vector<std::string> re_mus;
    std::size_t re_samples = 10000;
    std::string re_svg;
    auto* re = app.add_subcommand("region", "describe dominance regions for eigenvalues");
    re->add_option("--mu", re_mus, "competing eigenvalue as re,im (repeatable)")
        ->required();
    re->add_option("--samples", re_samples, "grid samples for the intersection fraction");
    re->add_option("--svg", re_svg, "write an SVG of the regions");

    // verify
    std::string ve_target, ve_weights;
    std::size_t ve_steps = 100;
    unsigned ve_seed = 0;
    auto* ve = app.add_subcommand("verify", "check that weights drive iterates to a target");
    ve->add_option("target", ve_target, "target polygon JSON file")->required();
    ve->add_option("weights", ve_weights, "weights JSON file")->required();
    ve->add_option("--steps", ve_steps, "iteration steps");
    ve->add_option("--seed", ve_seed, "random start seed");

    CLI11_PARSE(app, argc, argv);

    if (it->parsed()) return cmd_iterate(it_polygon, it_weights, it_steps, it_target, it_svg, it_out);
    if (sp->parsed()) return cmd_spectrum(sp_weights, sp_json);
    if (de->parsed()) return cmd_design(de_target, de_seed, de_out, de_report);
    if (re->parsed()) return cmd_region(re_mus, re_samples, re_svg);
    if (ve->parsed()) return cmd_verify(ve_target, ve_weights, ve_steps, ve_seed);
    return 1;
}
