#include "wavefem/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "wavefem/analysis.hpp"

namespace wavefem {

namespace {

constexpr double kPi = 3.14159265358979323846;

void reject_compensator_overrides(const PresetOverrides& ov, const std::string& name) {
    if (ov.beta.has_value())
        throw std::invalid_argument("'beta' override only applies to example7, not " + name);
    if (ov.delta.has_value())
        throw std::invalid_argument("'delta' override only applies to example7, not " + name);
}

/// All examples share the product mode sin(pi x) sin(pi y) as spatial shape.
SpatialFn mode_u0() {
    return [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
}

/// u = exp(-pi t) sin(pi x) sin(pi y), the manufactured solution of
/// examples 1, 3, 4, 5.
SpaceTimeFn mode_exact() {
    return [](double x, double y, double t) {
        return std::exp(-kPi * t) * (std::sin(kPi * x) * std::sin(kPi * y));
    };
}

SpaceTimeGradFn mode_exact_grad() {
    return [](double x, double y, double t) {
        const double decay = std::exp(-kPi * t);
        return std::pair<double, double>(decay * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                         decay * kPi * std::sin(kPi * x) * std::cos(kPi * y));
    };
}

void common_mode_data(SimConfig& sim) {
    sim.u0 = mode_u0();
    sim.u1 = [](double x, double y) {
        return -kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    sim.utt0 = [](double x, double y) {
        return kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
}

PresetInstance build_example1(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example1");
    const double alpha = ov.alpha.has_value() ? *ov.alpha : 3.0 * kPi;
    if (alpha < 0.0) throw std::invalid_argument("example1 requires alpha >= 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    common_mode_data(sim);

    // At the paper value alpha = 3 pi the mode is an exact homogeneous
    // solution; other alphas keep it exact through a manufactured load.
    const double coef = 3.0 * kPi * kPi - alpha * kPi;
    if (coef != 0.0)
        sim.forcing = [coef](double x, double y, double t) {
            return coef * std::exp(-kPi * t) * (std::sin(kPi * x) * std::sin(kPi * y));
        };

    inst.has_exact = true;
    inst.exact = mode_exact();
    inst.exact_grad = mode_exact_grad();
    return inst;
}

PresetInstance build_example2(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example2");
    const double alpha = ov.alpha.has_value() ? *ov.alpha : 8.9;
    const double disc = alpha * alpha / 4.0 - 2.0 * kPi * kPi;
    if (disc < 0.0)
        throw std::invalid_argument(
            "example2 requires alpha >= 2*sqrt(2)*pi (about 8.886) for a real exponent");
    const double r = -alpha / 2.0 + std::sqrt(disc);

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    sim.u0 = mode_u0();
    sim.u1 = [r](double x, double y) {
        return r * (std::sin(kPi * x) * std::sin(kPi * y));
    };
    sim.utt0 = [r](double x, double y) {
        return r * r * (std::sin(kPi * x) * std::sin(kPi * y));
    };

    inst.has_exact = true;
    inst.exact = [r](double x, double y, double t) {
        return std::exp(r * t) * (std::sin(kPi * x) * std::sin(kPi * y));
    };
    inst.exact_grad = [r](double x, double y, double t) {
        const double decay = std::exp(r * t);
        return std::pair<double, double>(decay * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                         decay * kPi * std::sin(kPi * x) * std::cos(kPi * y));
    };
    return inst;
}

PresetInstance build_example3(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example3");
    const double alpha = ov.alpha.has_value() ? *ov.alpha : 0.1;
    if (alpha < 0.0) throw std::invalid_argument("example3 requires alpha >= 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    common_mode_data(sim);

    const double coef = 3.0 * kPi * kPi - alpha * kPi;
    sim.forcing = [coef](double x, double y, double t) {
        return coef * std::exp(-kPi * t) * (std::sin(kPi * x) * std::sin(kPi * y));
    };

    inst.has_exact = true;
    inst.exact = mode_exact();
    inst.exact_grad = mode_exact_grad();
    return inst;
}

PresetInstance build_example4(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example4");
    const double alpha0 = ov.alpha.has_value() ? *ov.alpha : 1.0;
    if (!(alpha0 > 0.0)) throw std::invalid_argument("example4 requires alpha > 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.x0 = 1.0;
    sim.x1 = 2.0;
    sim.y0 = 1.0;
    sim.y1 = 2.0;
    sim.damping = CoefficientField::function([alpha0](double x, double y) {
        (void)y;
        return alpha0 * std::pow(std::fabs(x), -0.5);
    });
    common_mode_data(sim);

    sim.forcing = [alpha0](double x, double y, double t) {
        return (3.0 * kPi * kPi - kPi * (alpha0 * std::pow(std::fabs(x), -0.5))) *
               std::exp(-kPi * t) * (std::sin(kPi * x) * std::sin(kPi * y));
    };

    inst.has_exact = true;
    inst.exact = mode_exact();
    inst.exact_grad = mode_exact_grad();
    return inst;
}

PresetInstance build_example5(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example5");
    const double alpha = ov.alpha.has_value() ? *ov.alpha : 4.0;
    if (alpha < 0.0) throw std::invalid_argument("example5 requires alpha >= 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    sim.semilinear = true;
    common_mode_data(sim);

    // g so that the decaying mode solves u'' + alpha u' - Lap u + u^3 - u = g.
    const double coef = 3.0 * kPi * kPi - alpha * kPi - 1.0;
    sim.forcing = [coef](double x, double y, double t) {
        const double w = std::exp(-kPi * t) * (std::sin(kPi * x) * std::sin(kPi * y));
        return coef * w + w * w * w;
    };

    inst.has_exact = true;
    inst.exact = mode_exact();
    inst.exact_grad = mode_exact_grad();
    return inst;
}

PresetInstance build_example6(int N, const PresetOverrides& ov) {
    reject_compensator_overrides(ov, "example6");
    const double alpha = ov.alpha.has_value() ? *ov.alpha : 1.0;
    if (alpha < 0.0) throw std::invalid_argument("example6 requires alpha >= 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    sim.semilinear = true;
    sim.u0 = mode_u0();
    sim.u1 = [](double x, double y) {
        return -kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    sim.utt0 = [alpha](double x, double y) {
        const double s = std::sin(kPi * x) * std::sin(kPi * y);
        return (alpha * kPi - 2.0 * kPi * kPi + 1.0) * s - s * s * s;
    };
    return inst;
}

PresetInstance build_example7(int N, const PresetOverrides& ov) {
    const double delta = ov.delta.has_value() ? *ov.delta : 2.0;
    auto [alpha_c, beta_c] = compensator_params(delta);
    const double alpha = ov.alpha.has_value() ? *ov.alpha : alpha_c;
    const double beta = ov.beta.has_value() ? *ov.beta : beta_c;
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("example7 requires alpha >= 0 and beta >= 0");

    PresetInstance inst;
    SimConfig& sim = inst.sim;
    sim.nx = sim.ny = N;
    sim.damping = CoefficientField::constant(alpha);
    sim.beta = beta;
    sim.u0 = mode_u0();
    sim.u1 = [](double x, double y) {
        return -kPi * std::sin(kPi * x) * std::sin(kPi * y);
    };
    sim.utt0 = [alpha, beta](double x, double y) {
        const double s = std::sin(kPi * x) * std::sin(kPi * y);
        return (alpha * kPi - 2.0 * kPi * kPi - beta) * s;
    };
    return inst;
}

}  // namespace

const std::vector<ExperimentPreset>& all_presets() {
    static const std::vector<ExperimentPreset> presets = {
        {"example1", "decaying product mode, constant damping (default alpha = 3*pi)",
         {5, 10, 15, 20, 25}, 16, build_example1},
        {"example2", "modal launch with exact slow exponent (default alpha = 8.9)",
         {6, 12, 18, 24, 30}, 16, build_example2},
        {"example3", "manufactured forcing, light damping (default alpha = 0.1)",
         {6, 12, 18, 24, 30}, 16, build_example3},
        {"example4", "space-dependent damping alpha*|x|^(-1/2) on (1,2)^2",
         {6, 12, 18, 24, 30}, 16, build_example4},
        {"example5", "semilinear u^3 - u with manufactured forcing (default alpha = 4)",
         {8, 16, 24, 32, 40}, 16, build_example5},
        {"example6", "homogeneous semilinear decay study (default alpha = 1)",
         {}, 16, build_example6},
        {"example7", "viscous damping with compensator (default delta = 2)",
         {}, 16, build_example7},
    };
    return presets;
}

const ExperimentPreset& get_preset(const std::string& name) {
    for (const ExperimentPreset& p : all_presets())
        if (p.name == name) return p;
    std::string names;
    for (const ExperimentPreset& p : all_presets()) {
        if (!names.empty()) names += ", ";
        names += p.name;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (known: " + names + ")");
}

bool is_preset_name(const std::string& name) {
    for (const ExperimentPreset& p : all_presets())
        if (p.name == name) return true;
    return false;
}

}  // namespace wavefem
