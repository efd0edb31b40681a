// rgfp: command-line front end for model checks, certificates, fixed points
// and orbits.
//
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 definitive refutation of a
// certificate, 4 no fixed-point crossing, 64 usage, 65 malformed model file,
// 66 unreadable input, 70 internal error.

#include "rgfp/certificate.hpp"
#include "rgfp/conditions.hpp"
#include "rgfp/model_file.hpp"
#include "rgfp/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;
using namespace rgfp;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitNoCrossing = 4;
constexpr int kExitUsage = 64;
constexpr int kExitDataError = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    bool no_timings = false;
    unsigned jobs = 1;
    unsigned max_elevation = 0;  // 0: per-slice default
    std::string json_out;

    std::optional<unsigned> elevation_cap() const {
        return max_elevation == 0 ? std::nullopt : std::optional<unsigned>(max_elevation);
    }
};

void add_common(CLI::App& cmd, Common& c, bool with_certificates) {
    cmd.add_flag("--no-timings", c.no_timings, "Leave timings out of the JSON report");
    cmd.add_option("--json", c.json_out, "Write a JSON report to this path ('-' for standard output)");
    if (!with_certificates) return;
    cmd.add_option("--jobs", c.jobs, "Worker threads for certificate slices")->check(CLI::PositiveNumber);
    cmd.add_option("--max-elevation", c.max_elevation, "Cap on the total degree of the (z, 1-z) basis per slice")
        ->envname("RGFP_MAX_ELEVATION")
        ->check(CLI::PositiveNumber);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sha256(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

WModel read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    try {
        return parse_model(in);
    } catch (const ModelFileError& e) {
        throw DataError(path + ": " + e.what());
    }
}

json model_json(const std::string& path, const WModel& m) {
    return {{"path", path}, {"mode", to_string(m.mode())}, {"sha256", sha256(serialize_model(m))}};
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(json report, const Common& c, const Stopwatch& clock) {
    if (c.json_out.empty()) return;
    if (!c.no_timings) report["timings"] = {{"total_ms", clock.ms()}};
    const std::string text = report.dump(2) + "\n";
    if (c.json_out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(c.json_out);
    if (!out) throw InputError("cannot write '" + c.json_out + "'");
    out << text;
}

int exit_code(Status s) {
    switch (s) {
        case Status::pass: return kExitPass;
        case Status::fail: return kExitFail;
        case Status::inconclusive: return kExitInconclusive;
    }
    return kExitInternal;
}

json condition_json(const ConditionReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"witnesses", c.witnesses}});
    json out{{"status", to_string(rep.status())}, {"checks", checks}};
    if (rep.r_values) {
        json r = json::array();
        for (const auto& v : *rep.r_values) r.push_back(v.to_string());
        out["r_values"] = r;
    }
    if (rep.degree_gap) out["degree_gap"] = *rep.degree_gap;
    if (rep.elevation_degree) out["elevation_degree"] = *rep.elevation_degree;
    if (rep.reconstructed) out["reconstructed"] = serialize_model(*rep.reconstructed);
    return out;
}

void print_conditions(const ConditionReport& rep) {
    for (const auto& c : rep.checks) {
        std::printf("%-13s %s\n", to_string(c.status), c.name.c_str());
        for (const auto& w : c.witnesses) std::printf("              %s\n", w.c_str());
    }
    if (rep.r_values) {
        std::string line;
        for (const auto& v : *rep.r_values) line += (line.empty() ? "" : ", ") + v.to_string();
        std::printf("R5..R10 = (%s)\n", line.c_str());
    }
}

// check

struct CheckArgs {
    Common common;
    std::string model;
    bool existence_only = false;
};

int run_check(const CheckArgs& a) {
    const Stopwatch clock;
    const WModel m = read_model(a.model);
    const ConditionReport rep = a.existence_only
                                    ? check_existence(ModelAlgebra(m), a.common.elevation_cap(), a.common.jobs)
                                    : check_model(m, a.common.elevation_cap(), a.common.jobs);
    std::printf("model %s (%s)\n", a.model.c_str(), to_string(m.mode()));
    print_conditions(rep);
    std::printf("result: %s\n", to_string(rep.status()));
    emit({{"command", "check"}, {"model", model_json(a.model, m)}, {"conditions", condition_json(rep)}}, a.common,
         clock);
    return exit_code(rep.status());
}

// certify

struct CertifyArgs {
    Common common;
    std::string mode = "both";
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    bool symbolic = false;
    std::string out;
    std::string model;
};

json failures_json(const CertifyOutcome& o) {
    json out = json::array();
    for (const auto& f : o.failures) {
        json j{{"slice", f.key.to_string()}, {"kind", to_string(f.failure.kind)}, {"polynomial", f.slice.to_string()}};
        if (f.failure.witness_z) j["witness_z"] = f.failure.witness_z->to_string();
        if (f.failure.witness_value) j["witness_value"] = f.failure.witness_value->to_string();
        out.push_back(j);
    }
    return out;
}

/// Exit code for a certification outcome.
int outcome_code(const CertifyOutcome& o) {
    if (o.success()) return kExitPass;
    return o.definitive_failure() ? kExitRefuted : kExitInconclusive;
}

void print_failures(const CertifyOutcome& o) {
    for (const auto& f : o.failures) std::printf("  %s\n  slice polynomial: %s\n", detail::describe(f).c_str(),
                                                 f.slice.to_string().c_str());
}

int combine(int a, int b) {
    // Refutation outranks mismatch, which outranks inconclusive.
    auto rank = [](int c) { return c == kExitRefuted ? 3 : c == kExitFail ? 2 : c == kExitInconclusive ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

int run_certify(const CertifyArgs& a) {
    const Stopwatch clock;
    json report{{"command", "certify"}, {"mode", a.mode}};
    int code = kExitPass;

    if (a.mode == "appendix" || a.mode == "both") {
        json app;
        const IdentityReport rep = verify_identity_randomized(a.trials, a.seed);
        std::printf("tabulated identity, randomized: %zu of %zu trials equal (seed %llu)\n",
                    rep.trials.size() - rep.mismatches(), rep.trials.size(),
                    static_cast<unsigned long long>(a.seed));
        json trials = json::array();
        for (const auto& t : rep.trials) {
            json params = json::array();
            for (const auto& p : t.parameters) params.push_back(p.to_string());
            trials.push_back({{"index", t.index}, {"equal", t.equal}, {"parameters", params},
                              {"differing_monomials", t.differing_monomials}});
            if (!t.equal) {
                std::printf("  trial %zu differs:\n", t.index);
                for (const auto& d : t.differing_monomials) std::printf("    %s\n", d.c_str());
            }
        }
        app["seed"] = a.seed;
        app["trials"] = trials;
        app["mismatches"] = rep.mismatches();
        if (!rep.all_equal()) code = combine(code, kExitFail);
        if (a.symbolic) {
            const SparsePoly diff = verify_identity_symbolic();
            std::printf("tabulated identity, symbolic: %s\n",
                        diff.is_zero() ? "difference is zero" : "difference is non-zero");
            app["symbolic_difference_terms"] = diff.terms().size();
            app["symbolic_listing"] = detail::list_terms(diff, IdentityReport::kMaxListed);
            if (!diff.is_zero()) code = combine(code, kExitFail);
        }
        report["appendix"] = app;
    }

    if (a.mode == "independent" || a.mode == "both") {
        const IndependentCertificate ic = certify_independent(a.common.elevation_cap(), a.common.jobs);
        json ind{{"x_powers", {ic.min_x_power, ic.max_x_power}}, {"slices", ic.outcome.slice_count}};
        if (ic.outcome.certificate) {
            const Certificate& cert = *ic.outcome.certificate;
            const std::string text = cert.serialize();
            std::printf("independent certificate: %zu terms over %zu slices, x^%u..x^%u, max elevation %u\n",
                        cert.terms.size(), ic.outcome.slice_count, ic.min_x_power, ic.max_x_power,
                        cert.max_elevation_used);
            if (ic.a4_x9_zs2)
                std::printf("coefficient of a^4 x^9 z s^2: %s\n", ic.a4_x9_zs2->to_string().c_str());
            ind["status"] = "certified";
            ind["terms"] = cert.terms.size();
            ind["max_elevation"] = cert.max_elevation_used;
            ind["sha256"] = sha256(text);
            if (ic.a4_x9_zs2) ind["a4_x9_z_s2"] = ic.a4_x9_zs2->to_string();
            if (!a.out.empty()) {
                std::ofstream f(a.out, std::ios::binary);
                if (!f) throw InputError("cannot write '" + a.out + "'");
                f << text;
                std::printf("certificate written to %s\n", a.out.c_str());
            }
        } else {
            std::printf("independent certificate: %s\n",
                        ic.outcome.definitive_failure() ? "refuted" : "inconclusive");
            print_failures(ic.outcome);
            ind["status"] = ic.outcome.definitive_failure() ? "refuted" : "inconclusive";
            ind["failures"] = failures_json(ic.outcome);
        }
        report["independent"] = ind;
        code = combine(code, outcome_code(ic.outcome));
    }

    if (!a.model.empty()) {
        const WModel m = read_model(a.model);
        const CertifyOutcome o = certify_R_nonneg(ModelAlgebra(m), a.common.elevation_cap(), a.common.jobs);
        std::printf("R >= 0 certificate for %s: %s\n", a.model.c_str(),
                    o.success() ? "certified" : o.definitive_failure() ? "refuted" : "inconclusive");
        print_failures(o);
        json mj{{"model", model_json(a.model, m)},
                {"status", o.success() ? "certified" : o.definitive_failure() ? "refuted" : "inconclusive"},
                {"failures", failures_json(o)}};
        if (o.certificate) mj["sha256"] = sha256(o.certificate->serialize());
        report["model_slices"] = mj;
        code = combine(code, outcome_code(o));
    }

    emit(report, a.common, clock);
    return code;
}

// fixpoint

const char* region_label(Point2<double> p, double r) {
    if (p.x <= r || p.y <= r || std::abs(p.y - p.x * p.x) <= r) return "boundary of y <= x^2";
    return p.y > p.x * p.x ? "outside y <= x^2" : "interior";
}

struct FixpointArgs {
    Common common;
    std::string model;
    double tol = 1e-12;
    unsigned scan = 0;
    bool whole_quadrant = false;
    bool force = false;
};

int run_fixpoint(const FixpointArgs& a) {
    const Stopwatch clock;
    const WModel m = read_model(a.model);
    const ConditionReport rep = check_model(m, a.common.elevation_cap(), a.common.jobs);
    if (rep.status() != Status::pass) {
        if (!a.force) {
            std::fprintf(stderr, "rgfp: model does not pass 'check' (%s); use --force to solve anyway\n",
                         to_string(rep.status()));
            return exit_code(rep.status());
        }
        std::fprintf(stderr, "rgfp: warning: model does not pass 'check' (%s); continuing because of --force\n",
                     to_string(rep.status()));
    }

    const ModelAlgebra alg(m);
    SolverOptions opt;
    opt.tol = a.tol;
    FixedPointResult fp;
    try {
        fp = solve_fixed_point(alg, opt);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "rgfp: class violation: %s\n", e.what());
        emit({{"command", "fixpoint"}, {"model", model_json(a.model, m)}, {"error", e.what()}}, a.common, clock);
        return kExitNoCrossing;
    }

    std::printf("fixed point (x_f, y_f) = (%s, %s)\n", fmt(fp.x_f).c_str(), fmt(fp.y_f).c_str());
    std::printf("z_f = y_f / x_f^2 = %s\n", fmt(fp.z_f).c_str());
    std::printf("residual max|Phi(p) - p| = %.3g (exact evaluation %.3g)\n", fp.residual, fp.exact_residual);
    std::printf("newton: %s after %u iterations, %u bisection steps\n", to_string(fp.newton_status),
                fp.newton_iterations, fp.bisection_iterations);
    std::printf("interior of y <= x^2: %s\n", fp.interior_xi ? "yes" : "no");
    std::printf("inside G <= 1, F <= 1: %s\n", fp.in_xi_prime ? "yes" : "no");
    std::printf("F = 1 crossings on the G = 1 contour: %zu\n", fp.crossings.size());
    std::printf("eigenvalues of D Phi (extension): %s, %s\n", fmt(fp.jacobian_eigenvalues[0]).c_str(),
                fmt(fp.jacobian_eigenvalues[1]).c_str());

    json fj{{"x_f", fp.x_f},
            {"y_f", fp.y_f},
            {"z_f", fp.z_f},
            {"residual", fp.residual},
            {"exact_residual", fp.exact_residual},
            {"newton_status", to_string(fp.newton_status)},
            {"newton_iterations", fp.newton_iterations},
            {"bisection_iterations", fp.bisection_iterations},
            {"interior_xi", fp.interior_xi},
            {"in_xi_prime", fp.in_xi_prime},
            {"crossings", fp.crossings},
            {"extension_jacobian_eigenvalues", fp.jacobian_eigenvalues}};

    if (const auto primed = primed_rational_system(alg)) {
        const double r = primed_residual(*primed, {fp.x_f, fp.y_f});
        std::printf("primed coordinates (x/sqrt3, y/3) = (%s, %s) solve the rational-coefficient system, "
                    "residual %.3g\n",
                    fmt(fp.x_f / std::sqrt(3.0)).c_str(), fmt(fp.y_f / 3).c_str(), r);
        fj["primed"] = {{"x", fp.x_f / std::sqrt(3.0)}, {"y", fp.y_f / 3}, {"residual", r}};
    }

    json report{{"command", "fixpoint"}, {"model", model_json(a.model, m)}, {"conditions", to_string(rep.status())},
                {"fixed_point", fj}};

    if (a.scan != 0) {
        ScanOptions so;
        so.grid_n = a.scan;
        so.whole_quadrant = a.whole_quadrant;
        const UniquenessReport ur = scan_uniqueness(alg, so);
        const std::size_t n = ur.interior_count();
        std::printf("scan %ux%u%s: %zu interior fixed point%s, %zu fixed points in total\n", a.scan, a.scan,
                    a.whole_quadrant ? " over the positive quadrant" : "", n, n == 1 ? "" : "s",
                    ur.clusters.size());
        json clusters = json::array();
        for (const auto& c : ur.clusters) {
            std::printf("  (%s, %s)  %s, %zu starts, residual %.3g\n", fmt(c.point.x).c_str(), fmt(c.point.y).c_str(),
                        region_label(c.point, so.cluster_radius), c.hits, c.residual);
            clusters.push_back({{"x", c.point.x}, {"y", c.point.y}, {"interior_xi", c.interior_xi},
                                {"region", region_label(c.point, so.cluster_radius)}, {"hits", c.hits}, {"residual", c.residual}});
        }
        json sj{{"grid", a.scan}, {"whole_quadrant", a.whole_quadrant}, {"starts", ur.starts},
                {"converged", ur.converged}, {"interior_count", n}, {"clusters", clusters}};
        if (!a.whole_quadrant) {
            std::printf("J_GF > 0 at %zu of %zu sampled strip points with F <= 1\n", ur.jgf_positive,
                        ur.jgf_samples);
            sj["jgf_samples"] = ur.jgf_samples;
            sj["jgf_positive"] = ur.jgf_positive;
        }
        report["scan"] = sj;
    }
    emit(report, a.common, clock);
    return kExitPass;
}

// iterate

struct IterateArgs {
    Common common;
    std::string model;
    std::string from;
    unsigned steps = 1000;
    double escape_radius = 1e6;
};

Point2<double> parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw CLI::ValidationError("--from", "expected x,y");
    Point2<double> p;
    try {
        std::size_t used = 0;
        const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
        p.x = std::stod(xs, &used);
        if (used != xs.size()) throw std::invalid_argument(xs);
        p.y = std::stod(ys, &used);
        if (used != ys.size()) throw std::invalid_argument(ys);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--from", "malformed point '" + text + "'");
    }
    if (!(p.x >= 0 && p.y >= 0) || !std::isfinite(p.x) || !std::isfinite(p.y))
        throw CLI::ValidationError("--from", "point must lie in the closed positive quadrant");
    return p;
}

int run_iterate(const IterateArgs& a) {
    const Stopwatch clock;
    const Point2<double> p0 = parse_point(a.from);
    const WModel m = read_model(a.model);
    const ModelAlgebra alg(m);
    std::optional<Point2<double>> fixed;
    try {
        const auto fp = solve_fixed_point(alg);
        fixed = Point2<double>{fp.x_f, fp.y_f};
    } catch (const SolverError&) {
        // Without a fixed point the orbit can still reach the origin or escape.
    }
    OrbitOptions opt;
    opt.max_steps = a.steps;
    opt.escape_radius = a.escape_radius;
    const OrbitRecord rec = iterate_map(alg, p0, opt, fixed);

    std::printf("%6s %25s %25s\n", "step", "x", "y");
    json orbit = json::array();
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        std::printf("%6zu %25s %25s\n", i, fmt(rec.points[i].x).c_str(), fmt(rec.points[i].y).c_str());
        orbit.push_back({rec.points[i].x, rec.points[i].y});
    }
    std::printf("classification: %s after %u steps\n", to_string(rec.classification), rec.steps);
    if (rec.left_xi) std::printf("the orbit visits points with y > x^2\n");
    json report{{"command", "iterate"},
                {"model", model_json(a.model, m)},
                {"from", {p0.x, p0.y}},
                {"classification", to_string(rec.classification)},
                {"steps", rec.steps},
                {"left_xi", rec.left_xi},
                {"orbit", orbit}};
    if (fixed) report["fixed_point"] = {fixed->x, fixed->y};
    emit(report, a.common, clock);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks, certificates and fixed points for renormalization maps grad W"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* c = app.add_subcommand("check", "Run the condition suite on a model");
    c->add_option("model", check.model, "Model file")->required();
    c->add_flag("--existence-only", check.existence_only, "Skip the R5..R10 and term-list checks");
    add_common(*c, check.common, true);

    CertifyArgs cert;
    auto* ce = app.add_subcommand("certify", "Verify the tabulated identity and certify e - e_c");
    ce->add_option("--mode", cert.mode, "appendix, independent or both")
        ->check(CLI::IsMember({"appendix", "independent", "both"}));
    ce->add_option("--trials", cert.trials, "Random trials for the identity check")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
    ce->add_option("--seed", cert.seed, "Seed for the identity check");
    ce->add_flag("--symbolic", cert.symbolic, "Also compare the identity over the full coefficient ring");
    ce->add_option("--out", cert.out, "Write the independent certificate to this file");
    ce->add_option("--model", cert.model, "Also certify R >= 0 slice by slice for this model");
    add_common(*ce, cert.common, true);

    FixpointArgs fix;
    auto* f = app.add_subcommand("fixpoint", "Locate the non-trivial fixed point");
    f->add_option("model", fix.model, "Model file")->required();
    f->add_option("--tol", fix.tol, "Bracket width for the G = 1 contour")->check(CLI::PositiveNumber);
    f->add_option("--scan", fix.scan, "Multi-start Newton scan on an N x N grid")->check(CLI::Range(10U, 2000U));
    f->add_flag("--whole-quadrant", fix.whole_quadrant, "Scan [0, 2] x [0, 2] instead of the strip");
    f->add_flag("--force", fix.force, "Solve even if the model fails 'check'");
    add_common(*f, fix.common, true);

    IterateArgs it;
    auto* i = app.add_subcommand("iterate", "Iterate the map from a start point");
    i->add_option("model", it.model, "Model file")->required();
    i->add_option("--from", it.from, "Start point x,y")->required();
    i->add_option("--steps", it.steps, "Maximum number of steps");
    i->add_option("--escape-radius", it.escape_radius, "Orbits beyond this norm count as diverged")
        ->check(CLI::PositiveNumber);
    add_common(*i, it.common, false);

    try {
        app.parse(argc, argv);
        if (*c) return run_check(check);
        if (*ce) return run_certify(cert);
        if (*f) return run_fixpoint(fix);
        return run_iterate(it);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    } catch (const DataError& e) {
        std::fprintf(stderr, "rgfp: %s\n", e.what());
        return kExitDataError;
    } catch (const InputError& e) {
        std::fprintf(stderr, "rgfp: %s\n", e.what());
        return kExitNoInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rgfp: internal error: %s\n", e.what());
        return kExitInternal;
    }
}
