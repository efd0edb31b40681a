#pragma once

// Fixed points of Phi = grad W: the G = 1 contour x*(z), the crossing
// F(x*(z), z) = 1 located by bisection, Newton polishing, orbits and
// multi-start scans.

#include "rgfp/certificate.hpp"
#include "rgfp/conditions.hpp"
#include "rgfp/errors.hpp"
#include "rgfp/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rgfp {

struct SolverOptions {
    double tol = 1e-12;            // relative width of the x*(z) bracket
    double z_width = 1e-10;        // final width of the z bracket
    unsigned z_scan_intervals = 64;
    double newton_tol = 1e-12;
    unsigned newton_max_iter = 50;
};

enum class NewtonStatus { converged, singular, max_iterations, non_finite };

inline const char* to_string(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::converged: return "converged";
        case NewtonStatus::singular: return "singular";
        case NewtonStatus::max_iterations: return "max-iterations";
        case NewtonStatus::non_finite: return "non-finite";
    }
    return "?";
}

struct NewtonResult {
    Point2<double> point;
    unsigned iterations = 0;
    double residual = 0;
    NewtonStatus status = NewtonStatus::converged;
};

struct FixedPointResult {
    double x_f = 0, y_f = 0, z_f = 0;
    double residual = 0;        // max |Phi(p) - p|, binary64
    double exact_residual = 0;  // same, evaluated exactly at the binary64 point
    unsigned bisection_iterations = 0;
    unsigned newton_iterations = 0;
    NewtonStatus newton_status = NewtonStatus::converged;
    bool interior_xi = false;
    bool in_xi_prime = false;
    std::vector<double> crossings;  // every z* with F(x*(z*), z*) = 1 found by the scan
    std::array<double, 2> jacobian_eigenvalues{};  // extension: eigenvalues of D Phi at the point
};

namespace detail {

inline double residual(const ModelAlgebra& alg, Point2<double> p) {
    const auto q = alg.phi(p);
    return std::max(std::abs(q.x - p.x), std::abs(q.y - p.y));
}

/// Eigenvalues of the symmetric 2x2 matrix {{a, b}, {b, d}}.
inline std::array<double, 2> symmetric_eigenvalues(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), b);
    return {mean - radius, mean + radius};
}

}  // namespace detail

/// max |Phi(p) - p| computed in exact arithmetic at the binary64 point p.
inline double exact_residual(const ModelAlgebra& alg, Point2<double> p) {
    const Point2<ExactScalar> e{ExactScalar(mpq_class(p.x)), ExactScalar(mpq_class(p.y))};
    const auto q = alg.phi(e);
    const ExactScalar dx = q.x - e.x, dy = q.y - e.y;
    return std::max(std::abs(dx.to_double()), std::abs(dy.to_double()));
}

/// The unique x > 0 with G(x, z) = 1.
inline double solve_G_contour(const ModelAlgebra& alg, double z, double tol = 1e-12) {
    if (!(tol > 0)) throw std::invalid_argument("solve_G_contour: tol must be positive");
    double lo = 0, hi = tol;
    while (alg.G_at(hi, z) < 1) {
        lo = hi;
        hi *= 2;
        if (!(hi < 1e150)) throw SolverError("G(x, z) stays below 1: no bracket for the G = 1 contour");
    }
    while (hi - lo > tol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (alg.G_at(mid, z) < 1 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// h(z) = F(x*(z), z) - 1.
inline double contour_excess(const ModelAlgebra& alg, double z, double tol = 1e-12) {
    return alg.F_at(solve_G_contour(alg, z, tol), z) - 1;
}

/// Newton iteration on Phi(p) - p with the exact-polynomial Jacobian.
inline NewtonResult newton_refine(const ModelAlgebra& alg, Point2<double> p, double tol = 1e-12,
                                  unsigned max_iter = 50) {
    NewtonResult out{p, 0, detail::residual(alg, p), NewtonStatus::converged};
    while (out.residual >= tol) {
        if (out.iterations == max_iter) {
            out.status = NewtonStatus::max_iterations;
            return out;
        }
        const auto q = alg.phi(out.point);
        const auto j = alg.phi_jacobian(out.point);
        const double a = j[0] - 1, b = j[1], c = j[2], d = j[3] - 1;
        const double det = a * d - b * c;
        const double norm = std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d));
        const double inv_norm = std::max(std::abs(d) + std::abs(b), std::abs(c) + std::abs(a)) / std::abs(det);
        if (det == 0 || !(norm * inv_norm <= 1e14)) {
            out.status = NewtonStatus::singular;
            return out;
        }
        const double fx = q.x - out.point.x, fy = q.y - out.point.y;
        out.point.x -= (d * fx - b * fy) / det;
        out.point.y -= (a * fy - c * fx) / det;
        ++out.iterations;
        out.residual = detail::residual(alg, out.point);
        if (!std::isfinite(out.residual) || !std::isfinite(out.point.x) || !std::isfinite(out.point.y)) {
            out.status = NewtonStatus::non_finite;
            return out;
        }
    }
    return out;
}

/// Bisection on h over [0, 1], then Newton from (x*(z*), x*(z*)^2 z*).
/// Requires the basic and O(x) conditions; throws SolverError otherwise or
/// when h has no sign change.
inline FixedPointResult solve_fixed_point(const ModelAlgebra& alg, const SolverOptions& opt = {}) {
    if (check_basic(alg.model()).status() != Status::pass || check_O_x(alg).status() != Status::pass)
        throw SolverError("model violates the basic or O(x) conditions");

    auto h = [&](double z) { return contour_excess(alg, z, opt.tol); };
    FixedPointResult out;
    unsigned bisections = 0;
    double z_prev = 0, h_prev = h(0);
    for (unsigned k = 1; k <= opt.z_scan_intervals; ++k) {
        const double z = static_cast<double>(k) / opt.z_scan_intervals;
        const double hz = h(z);
        if ((h_prev < 0) != (hz < 0)) {
            double lo = z_prev, hi = z;
            const bool rising = h_prev < 0;
            while (hi - lo > opt.z_width) {
                const double mid = 0.5 * (lo + hi);
                ((h(mid) < 0) == rising ? lo : hi) = mid;
                ++bisections;
            }
            out.crossings.push_back(0.5 * (lo + hi));
        }
        z_prev = z;
        h_prev = hz;
    }
    if (out.crossings.empty()) throw SolverError("F(x*(z), z) - 1 has no sign change on [0, 1]");

    const double zs = out.crossings.front();
    const double xs = solve_G_contour(alg, zs, opt.tol);
    const NewtonResult nr = newton_refine(alg, {xs, xs * xs * zs}, opt.newton_tol, opt.newton_max_iter);
    // A failed Newton keeps the bisection answer.
    const Point2<double> p = nr.status == NewtonStatus::converged ? nr.point : Point2<double>{xs, xs * xs * zs};
    out.x_f = p.x;
    out.y_f = p.y;
    out.z_f = p.y / (p.x * p.x);
    out.residual = detail::residual(alg, p);
    out.exact_residual = exact_residual(alg, p);
    out.bisection_iterations = bisections;
    out.newton_iterations = nr.iterations;
    out.newton_status = nr.status;
    out.interior_xi = in_interior_Xi(p);
    // G = F = 1 at the point, so allow rounding on both constraints.
    out.in_xi_prime = out.z_f > 0 && out.z_f < 1 && alg.G_at(p.x, out.z_f) <= 1 + 1e-9 &&
                      alg.F_at(p.x, out.z_f) <= 1 + 1e-9;
    const auto j = alg.phi_jacobian(p);
    out.jacobian_eigenvalues = detail::symmetric_eigenvalues(j[0], j[1], j[3]);
    return out;
}

/// The map in coordinates u = x / sqrt3, v = y / 3, i.e.
/// (u, v) -> (X(sqrt3 u, 3 v) / sqrt3, Y(sqrt3 u, 3 v) / 3), when all its
/// coefficients are rational.  Returned in the variables x, y.
inline std::optional<std::pair<SparsePoly, SparsePoly>> primed_rational_system(const ModelAlgebra& alg) {
    const SparsePoly u = SparsePoly::var(Var::x).scaled(ExactScalar::sqrt3());
    const SparsePoly v = SparsePoly::var(Var::y).scaled(3);
    auto primed = [&](const SparsePoly& p, const ExactScalar& scale) {
        return p.substitute(Var::x, u).substitute(Var::y, v).scaled(scale.inverse());
    };
    std::pair<SparsePoly, SparsePoly> out{primed(alg.X(), ExactScalar::sqrt3()), primed(alg.Y(), ExactScalar(3))};
    for (const SparsePoly* p : {&out.first, &out.second})
        for (const auto& [m, c] : p->terms())
            if (!c.is_rational()) return std::nullopt;
    return out;
}

/// max |P(q) - q| for the primed system at q = (x / sqrt3, y / 3).
inline double primed_residual(const std::pair<SparsePoly, SparsePoly>& system, Point2<double> p) {
    const double u = p.x / std::sqrt(3.0), v = p.y / 3;
    const CompiledPoly2 pu(system.first, Var::x, Var::y), pv(system.second, Var::x, Var::y);
    return std::max(std::abs(pu(u, v) - u), std::abs(pv(u, v) - v));
}

enum class OrbitClass { converged_to_origin, converged_to_fixed_point, diverged, left_xi, undecided };

inline const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::converged_to_origin: return "converged-to-origin";
        case OrbitClass::converged_to_fixed_point: return "converged-to-fixed-point";
        case OrbitClass::diverged: return "diverged";
        case OrbitClass::left_xi: return "left-xi";
        case OrbitClass::undecided: return "undecided";
    }
    return "?";
}

struct OrbitOptions {
    unsigned max_steps = 1000;
    double escape_radius = 1e6;
    double origin_threshold = 1e-9;
    double fixed_point_threshold = 1e-9;
};

struct OrbitRecord {
    std::vector<Point2<double>> points;  // p0, Phi(p0), ...
    OrbitClass classification = OrbitClass::undecided;
    unsigned steps = 0;
    bool left_xi = false;  // some iterate outside y <= x^2
};

inline OrbitRecord iterate_map(const ModelAlgebra& alg, Point2<double> p0, const OrbitOptions& opt = {},
                               std::optional<Point2<double>> fixed_point = std::nullopt) {
    if (!(p0.x >= 0 && p0.y >= 0) || !std::isfinite(p0.x) || !std::isfinite(p0.y))
        throw std::invalid_argument("iterate_map: start point must lie in the closed positive quadrant");
    OrbitRecord rec;
    Point2<double> p = p0;
    for (unsigned step = 0;; ++step) {
        rec.points.push_back(p);
        rec.steps = step;
        if (!in_Xi(p)) rec.left_xi = true;
        const double norm = std::hypot(p.x, p.y);
        if (norm < opt.origin_threshold) {
            rec.classification = OrbitClass::converged_to_origin;
            return rec;
        }
        if (fixed_point && std::hypot(p.x - fixed_point->x, p.y - fixed_point->y) < opt.fixed_point_threshold) {
            rec.classification = OrbitClass::converged_to_fixed_point;
            return rec;
        }
        if (!(norm <= opt.escape_radius)) {
            rec.classification = OrbitClass::diverged;
            return rec;
        }
        if (step == opt.max_steps) break;
        p = alg.phi(p);
    }
    rec.classification = rec.left_xi ? OrbitClass::left_xi : OrbitClass::undecided;
    return rec;
}

struct ScanOptions {
    unsigned grid_n = 40;
    bool whole_quadrant = false;     // grid over [0, x_hi] x [0, y_hi] instead of the strip
    std::optional<double> x_hi;      // strip default 1.25 x*(0); quadrant default 2
    double y_hi = 2.0;
    double cluster_radius = 1e-6;
    double accept_residual = 1e-10;
};

struct FixedPointCluster {
    Point2<double> point;
    double residual = 0;
    std::size_t hits = 0;
    bool interior_xi = false;
};

struct UniquenessReport {
    std::vector<FixedPointCluster> clusters;  // in order of first discovery
    std::size_t starts = 0;
    std::size_t converged = 0;
    std::size_t jgf_samples = 0;  // strip nodes with F <= 1
    std::size_t jgf_positive = 0;
    std::size_t jgf_nonpositive = 0;

    std::size_t interior_count() const {
        return static_cast<std::size_t>(
            std::count_if(clusters.begin(), clusters.end(), [](const auto& c) { return c.interior_xi; }));
    }
};

/// Multi-start Newton over a grid; converged points are merged into clusters.
inline UniquenessReport scan_uniqueness(const ModelAlgebra& alg, const ScanOptions& opt = {}) {
    if (opt.grid_n < 10) throw std::invalid_argument("scan_uniqueness: grid_n must be at least 10");
    UniquenessReport rep;
    const unsigned n = opt.grid_n;
    const double x_hi = opt.x_hi.value_or(opt.whole_quadrant ? 2.0 : 1.25 * solve_G_contour(alg, 0.0));

    const RationalFunction j = compute_JGF(alg);
    const CompiledPoly2 j_num(j.numerator, Var::x, Var::z);

    auto record = [&](Point2<double> seed) {
        ++rep.starts;
        const NewtonResult nr = newton_refine(alg, seed);
        if (nr.status != NewtonStatus::converged || nr.residual >= opt.accept_residual) return;
        if (nr.point.x < -opt.cluster_radius || nr.point.y < -opt.cluster_radius) return;
        ++rep.converged;
        for (auto& c : rep.clusters) {
            if (std::max(std::abs(c.point.x - nr.point.x), std::abs(c.point.y - nr.point.y)) < opt.cluster_radius) {
                ++c.hits;
                return;
            }
        }
        const Point2<double> p = nr.point;
        const bool interior = p.x > opt.cluster_radius && p.y > opt.cluster_radius && p.y < p.x * p.x;
        rep.clusters.push_back({p, nr.residual, 1, interior});
    };

    for (unsigned i = 0; i < n; ++i) {
        for (unsigned k = 0; k < n; ++k) {
            const double v = static_cast<double>(k) / (n - 1);
            if (opt.whole_quadrant) {
                record({x_hi * i / (n - 1), opt.y_hi * v});
                continue;
            }
            const double x = x_hi * (i + 1) / n;
            record({x, x * x * v});
            if (v > 0 && v < 1 && alg.F_at(x, v) <= 1) {
                ++rep.jgf_samples;
                (j_num(x, v) > 0 ? rep.jgf_positive : rep.jgf_nonpositive)++;
            }
        }
    }
    return rep;
}

}  // namespace rgfp
