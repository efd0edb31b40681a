// Loads a model file (default: the three-dimensional example), runs the
// condition suite, finds the fixed point and follows two nearby orbits.

#include "rgfp/conditions.hpp"
#include "rgfp/model_file.hpp"
#include "rgfp/solver.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    using namespace rgfp;
    const std::string path = argc > 1 ? argv[1] : std::string(RGFP_MODELS_DIR) + "/w3.model";
    const WModel m = load_model(path);
    std::printf("W = %s\n\n", m.polynomial().to_string().c_str());

    const ConditionReport rep = check_model(m);
    for (const auto& c : rep.checks) std::printf("  [%s] %s\n", to_string(c.status), c.name.c_str());
    if (rep.status() != Status::pass) {
        std::printf("model is outside the class, stopping\n");
        return 1;
    }

    const ModelAlgebra alg(m);
    std::printf("\nR(x, z) = X(x, x^2 z)^2 - Y(x, x^2 z) = %s\n", alg.R().to_string().c_str());

    const FixedPointResult fp = solve_fixed_point(alg);
    std::printf("\nfixed point (%.15f, %.15f), residual %.2e\n", fp.x_f, fp.y_f, fp.residual);
    std::printf("D Phi eigenvalues %.6f, %.6f\n", fp.jacobian_eigenvalues[0], fp.jacobian_eigenvalues[1]);

    // The fixed point is a saddle: nudging x decides between the two basins.
    const Point2<double> f{fp.x_f, fp.y_f};
    for (const double scale : {0.99, 1.01}) {
        const OrbitRecord orbit = iterate_map(alg, {f.x * scale, f.y}, {}, f);
        std::printf("start x = %.3f x_f: %s after %u steps\n", scale, to_string(orbit.classification), orbit.steps);
    }
    return 0;
}
