#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "stickslip/stepper.hpp"

using namespace stickslip;

TEST_SUITE("stepper") {

TEST_CASE("step coefficients") {
    const StepCoefficients c = step_coefficients({1.0, 1.0}, {1.0, 1.0}, 1.0);
    CHECK(c.A == 2.0);
    CHECK(c.D == 3.0);
    CHECK(c.dt == 1.0);
}

TEST_CASE("predictor is the force that would freeze the mass") {
    State rest;
    rest.F_s = 0.5;
    CHECK(predictor({1.0, 100.0}, rest, 0.0, 1e-4) == -0.5);

    State moving;
    moving.v = 3.0;
    moving.F_s = 1.0;
    CHECK(predictor({2.0, 1.0}, moving, 7.0, 0.5) == 18.0);
}

TEST_CASE("closed-form corrector on unit parameters") {
    const SystemParams params{1.0, 1.0};
    const BinghamLaw law{1.0, 1.0};

    // A = 2, D = 3: trial force 4 leaves excess 1 past the threshold.
    const CorrectorResult slip = corrector_bingham(params, law, 4.0, 1.0);
    CHECK(slip.mode == StepMode::Slip);
    CHECK(slip.F_d == 2.0);
    CHECK(slip.v == 1.0);

    const CorrectorResult mirror = corrector_bingham(params, law, -4.0, 1.0);
    CHECK(mirror.mode == StepMode::Slip);
    CHECK(mirror.F_d == -2.0);
    CHECK(mirror.v == -1.0);

    const CorrectorResult stick = corrector_bingham(params, law, 0.8, 1.0);
    CHECK(stick.mode == StepMode::Stick);
    CHECK(stick.F_d == 0.8);
    CHECK(stick.v == 0.0);

    // The threshold itself still sticks; the trial force is kept verbatim.
    CHECK(corrector_bingham(params, law, 1.0, 1.0).mode == StepMode::Stick);
    CHECK(corrector_bingham(params, law, 1.0, 1.0).F_d == 1.0);
}

TEST_CASE("corrector is continuous across the breakaway point") {
    const SystemParams params{1.0, 100.0};
    const BinghamLaw law{1.0, 1.0};
    const double dt = 1e-4;

    const CorrectorResult below = corrector_bingham(params, law, 1.0 - 1e-12, dt);
    const CorrectorResult above = corrector_bingham(params, law, 1.0 + 1e-12, dt);
    CHECK(below.mode == StepMode::Stick);
    CHECK(below.v == 0.0);
    CHECK(above.mode == StepMode::Slip);
    CHECK(above.v > 0.0);
    CHECK(std::abs(above.v - below.v) < 1e-13);
    CHECK(std::abs(above.F_d - below.F_d) < 1e-11);
}

TEST_CASE("corrector solves the discrete momentum equation exactly") {
    // m v / dt + dt k v + F_d = Ftilde is the defining equation of both
    // branches; it must hold to rounding for arbitrary parameters.
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double m = std::pow(10.0, -1.0 + 3.0 * uni(rng));
        const double k = std::pow(10.0, -1.0 + 4.0 * uni(rng));
        const double gamma = std::pow(10.0, -2.0 + 4.0 * uni(rng));
        const double threshold = 10.0 * uni(rng);
        const double dt = std::pow(10.0, -5.0 + 5.0 * uni(rng));
        const double Ftilde = -100.0 + 200.0 * uni(rng);

        const SystemParams params{m, k};
        const BinghamLaw law{gamma, threshold};
        const CorrectorResult out = corrector_bingham(params, law, Ftilde, dt);

        const double lhs = (params.m / dt) * out.v + dt * params.k * out.v + out.F_d;
        CHECK(std::abs(lhs - Ftilde) <= 1e-12 * std::max(1.0, std::abs(Ftilde)));
        CHECK(sign(out.F_d) == sign(Ftilde));
        if (out.mode == StepMode::Slip) {
            CHECK(sign(out.v) == sign(Ftilde));
            CHECK(std::abs(out.F_d) >= law.threshold);
        } else {
            CHECK(out.v == 0.0);
            CHECK(out.F_d == Ftilde);
        }
    }
}

TEST_CASE("generic corrector reproduces the closed form") {
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double m = std::pow(10.0, -1.0 + 3.0 * uni(rng));
        const double k = std::pow(10.0, -1.0 + 4.0 * uni(rng));
        const double gamma = std::pow(10.0, -2.0 + 4.0 * uni(rng));
        const double threshold = 10.0 * uni(rng);
        const double dt = std::pow(10.0, -5.0 + 5.0 * uni(rng));
        const double Ftilde = -100.0 + 200.0 * uni(rng);

        const SystemParams params{m, k};
        const BinghamLaw law{gamma, threshold};
        const CorrectorResult closed = corrector_bingham(params, law, Ftilde, dt);
        const CorrectorResult solved = corrector_generic(params, DashpotLaw{law}, Ftilde, dt);

        CHECK(std::abs(solved.v - closed.v) <= 1e-10);
        CHECK(std::abs(solved.F_d - closed.F_d) <= 1e-10);
        CHECK(solved.mode == closed.mode);
    }
}

TEST_CASE("generic corrector on a linear viscous dashpot") {
    // A = 2: h(F_d) = 2 F_d + (F_d - 3), root F_d = 1, v = 1.
    const CorrectorResult out =
        corrector_generic({1.0, 1.0}, DashpotLaw{LinearViscousLaw{1.0}}, 3.0, 1.0);
    CHECK(out.mode == StepMode::Slip);
    CHECK(out.F_d == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generic corrector sticks exactly at zero trial force") {
    const CorrectorResult out =
        corrector_generic({1.0, 1.0}, DashpotLaw{LinearViscousLaw{1.0}}, 0.0, 1.0);
    CHECK(out.mode == StepMode::Stick);
    CHECK(out.v == 0.0);
    CHECK(out.F_d == 0.0);
}

TEST_CASE("stiff dashpot pins the force to the threshold") {
    const SystemParams params{1.0, 100.0};
    const BinghamLaw law{1e9, 1.0};
    for (const double Ftilde : {1.5, 5.0, 1e3, -2.0, -1e6}) {
        const CorrectorResult out = corrector_bingham(params, law, Ftilde, 1e-4);
        CHECK(std::abs(out.F_d - sign(Ftilde)) <= 1e-6);
    }
}

TEST_CASE("one explicit slip step") {
    const StepResult result =
        step({1.0, 1.0}, DashpotLaw{BinghamLaw{1.0, 1.0}}, State{}, 4.0, 1.0);
    CHECK(result.mode == StepMode::Slip);
    CHECK(result.state.t == 1.0);
    CHECK(result.state.v == 1.0);
    CHECK(result.state.F_d == 2.0);
    CHECK(result.state.F_s == 1.0);
    CHECK(result.state.x == 1.0);
}

TEST_CASE("one stick step freezes position and spring force") {
    State init;
    init.x = 0.005;
    init.v = 0.0;
    init.F_s = 0.5;
    const StepResult result =
        step({1.0, 100.0}, DashpotLaw{BinghamLaw{1.0, 1.0}}, init, 0.0, 1e-4);
    CHECK(result.mode == StepMode::Stick);
    CHECK(result.state.x == 0.005);
    CHECK(result.state.F_s == 0.5);
    CHECK(result.state.v == 0.0);
    CHECK(result.state.F_d == -0.5);
    CHECK(result.state.t == 1e-4);
}

TEST_CASE("simulate walks the uniform grid") {
    const SystemParams params{1.0, 100.0};
    const DashpotLaw law = BinghamLaw{1.0, 1.0};
    const State init = consistent_init(params, law, 0.005);
    const Trajectory traj = simulate(params, law, ZeroForcing{}, init, 1e-4, 0.01);

    REQUIRE(traj.states.size() == 101);
    REQUIRE(traj.modes.size() == 100);
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        CHECK(traj.states[n].t == static_cast<double>(n) * 1e-4);
        CHECK(traj.states[n].x == 0.005);
        CHECK(traj.states[n].v == 0.0);
    }
    for (const StepMode mode : traj.modes) {
        CHECK(mode == StepMode::Stick);
    }
}

TEST_CASE("simulate validates its inputs") {
    const SystemParams params{1.0, 100.0};
    const DashpotLaw law = BinghamLaw{1.0, 1.0};
    const State init = consistent_init(params, law, 0.0);
    CHECK_THROWS_AS(simulate(params, law, ZeroForcing{}, init, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(simulate(params, law, ZeroForcing{}, init, -1e-4, 1.0), ValidationError);
    CHECK_THROWS_AS(simulate(params, law, ZeroForcing{}, init, 1e-4, -1.0), ValidationError);
    CHECK_THROWS_AS(simulate(params, law, ZeroForcing{}, init, 1e-4, 1.0, 10), NumericalError);
    CHECK_THROWS_AS(
        simulate(params, DashpotLaw{BinghamLaw{-1.0, 1.0}}, ZeroForcing{}, init, 1e-4, 1.0),
        ValidationError);
}

TEST_CASE("residuals of a genuine run are at rounding level") {
    const SystemParams params{1.0, 100.0};
    const DashpotLaw law = BinghamLaw{1.0, 1.0};
    const State init = consistent_init(params, law, 0.5);
    const Trajectory traj = simulate(params, law, ZeroForcing{}, init, 1e-4, 0.2);

    const ResidualReport report = residual_check(traj);
    CHECK(report.max_momentum_residual <= 1e-10);
    CHECK(report.max_spring_residual <= 1e-10);
    CHECK(report.max_constitutive_residual <= 1e-10);
}

TEST_CASE("residual check pins a corrupted node") {
    const SystemParams params{1.0, 100.0};
    const DashpotLaw law = BinghamLaw{1.0, 1.0};
    const State init = consistent_init(params, law, 0.5);
    Trajectory traj = simulate(params, law, ZeroForcing{}, init, 1e-4, 0.05);

    traj.states[200].F_d += 0.1;
    const ResidualReport report = residual_check(traj);
    // The forged force breaks the momentum balance of the arriving step.
    CHECK(report.max_momentum_residual > 1e-3);
    CHECK(report.worst_step_index == 199);
}

TEST_CASE("self-convergence toward a finer reference") {
    const SystemParams params{1.0, 100.0};
    const DashpotLaw law = BinghamLaw{1.0, 1.0};
    const Forcing forcing = WindowedSinusoid{10.0, 5.0 * std::numbers::pi, 1.0};
    const State init = consistent_init(params, law, 0.0);

    const auto points =
        convergence_study(params, law, forcing, init, 0.1, {4e-4, 2e-4, 1e-4});
    REQUIRE(points.size() == 3);
    CHECK_FALSE(points[0].observed_order.has_value());
    CHECK(points[0].error > points[1].error);
    CHECK(points[1].error > points[2].error);
    for (std::size_t i = 1; i < points.size(); ++i) {
        REQUIRE(points[i].observed_order.has_value());
        CHECK(*points[i].observed_order > 0.4);
        CHECK(*points[i].observed_order < 1.6);
    }

    CHECK_THROWS_AS(convergence_study(params, law, forcing, init, 0.1, {1e-4, 2e-4}),
                    ValidationError);
    CHECK_THROWS_AS(convergence_study(params, law, forcing, init, 0.1, {}), ValidationError);
}

TEST_CASE("mode names") {
    CHECK(to_string(StepMode::Stick) == "stick");
    CHECK(to_string(StepMode::Slip) == "slip");
}

} // TEST_SUITE
