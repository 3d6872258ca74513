#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fea/free_energy.hpp"
#include "oracles.hpp"

using namespace fea;

namespace {

WorldConfig small_world() {
    WorldConfig cfg;
    cfg.n = 4;
    cfg.psi0 = 2;
    return cfg;
}

} // namespace

TEST_CASE("generative joint on the 4-cell ring") {
    const WorldConfig cfg = small_world();
    const BrainState b(4, 0.0);
    const GenerativeSlice slice = generative_joint(cfg, b, Sensation::High, Action::Clockwise);

    CHECK(slice.marginal == doctest::Approx(0.8424755716040176).epsilon(1e-15));

    // With a uniform prior the marginal is just the average sensor value.
    double mean_high = 0.0;
    for (int psi = 0; psi < 4; ++psi) mean_high += sensation_prob(cfg, Sensation::High, psi);
    CHECK(slice.marginal == doctest::Approx(mean_high / 4.0).epsilon(1e-14));

    const std::vector<double> brute = oracle::brute_joint(cfg, b, Sensation::High, Action::Clockwise);
    for (int j = 0; j < 4; ++j) CHECK(slice.joint[j] == doctest::Approx(brute[j]).epsilon(1e-15));
}

TEST_CASE("generative joint matches the brute-force sum on random inputs") {
    const WorldConfig cfg;
    Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const BrainState b = oracle::random_brain(rng, cfg.n);
        const Sensation s = oracle::random_sensation(rng);
        const Action a = oracle::random_action(rng);
        const GenerativeSlice slice = generative_joint(cfg, b, s, a);
        const std::vector<double> brute = oracle::brute_joint(cfg, b, s, a);
        double sum = 0.0;
        for (int j = 0; j < cfg.n; ++j) {
            CHECK(slice.joint[j] == doctest::Approx(brute[j]).epsilon(1e-13));
            sum += slice.joint[j];
        }
        CHECK(slice.marginal == doctest::Approx(sum).epsilon(1e-13));
        CHECK(slice.marginal > 0.0);
        CHECK(slice.marginal < 1.0);
    }
}

TEST_CASE("free energy of the uniform state on the 4-cell ring") {
    const WorldConfig cfg = small_world();
    const BrainState zero(4, 0.0);
    const double f = free_energy(cfg, zero, zero, Sensation::High, Action::Clockwise);
    CHECK(f == doctest::Approx(0.17258306162546688).epsilon(1e-14));

    // energy/entropy decomposition, both terms computed directly here
    const GenerativeSlice slice = generative_joint(cfg, zero, Sensation::High, Action::Clockwise);
    const Belief q = softmax(zero);
    double energy = 0.0;
    for (int j = 0; j < 4; ++j) energy += q[j] * std::log(slice.joint[j]);
    CHECK(f == doctest::Approx(-energy - entropy(q)).epsilon(1e-14));
}

TEST_CASE("free energy equals divergence from the posterior plus surprisal") {
    const WorldConfig cfg;
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const BrainState b_next = oracle::random_brain(rng, cfg.n);
        const BrainState b = oracle::random_brain(rng, cfg.n);
        const Sensation s = oracle::random_sensation(rng);
        const Action a = oracle::random_action(rng);
        const double f = free_energy(cfg, b_next, b, s, a);
        const GenerativeSlice slice = generative_joint(cfg, b, s, a);
        const Belief posterior = exact_posterior(cfg, b, s, a);
        const double expected = kl_divergence(softmax(b_next), posterior) - std::log(slice.marginal);
        CHECK(f == doctest::Approx(expected).epsilon(1e-12));
        CHECK(f >= -std::log(slice.marginal) - 1e-12); // surprisal is the floor
    }
}

TEST_CASE("free energy bottoms out at the posterior") {
    const WorldConfig cfg;
    Rng rng(37);
    const BrainState b = oracle::random_brain(rng, cfg.n);
    const Belief posterior = exact_posterior(cfg, b, Sensation::High, Action::Clockwise);
    BrainState at_posterior(cfg.n);
    for (int j = 0; j < cfg.n; ++j) at_posterior[j] = std::log(posterior[j]);
    const GenerativeSlice slice = generative_joint(cfg, b, Sensation::High, Action::Clockwise);
    const double f_min = free_energy(slice, at_posterior);
    CHECK(f_min == doctest::Approx(-std::log(slice.marginal)).epsilon(1e-12));
    for (int trial = 0; trial < 20; ++trial)
        CHECK(free_energy(slice, oracle::random_brain(rng, cfg.n)) >= f_min - 1e-12);
}

TEST_CASE("exact posterior on the 4-cell ring") {
    const WorldConfig cfg = small_world();
    const Belief post = exact_posterior(cfg, BrainState(4, 0.0), Sensation::High, Action::Clockwise);
    const double expected[4] = {0.24435386982452406, 0.23399882142578135, 0.25517752419937134,
                                0.2664697845503232};
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
        CHECK(post[j] == doctest::Approx(expected[j]).epsilon(1e-14));
        sum += post[j];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("prediction prior pushes beliefs through the motion kernel") {
    const WorldConfig cfg;
    const Belief uniform = prediction_prior(cfg, BrainState(cfg.n, 0.0), Action::Clockwise);
    for (double v : uniform) CHECK(v == doctest::Approx(1.0 / 16).epsilon(1e-14));

    BrainState sharp(cfg.n, -400.0);
    sharp[4] = 0.0;
    const Belief moved = prediction_prior(cfg, sharp, Action::Clockwise);
    CHECK(moved[5] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(moved[4] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("impossible cells drive free energy to infinity but not the gradient") {
    WorldConfig cfg = small_world();
    cfg.rho = 1.0;
    BrainState b(4, -2000.0);
    b[0] = 0.0; // softmax underflows to a point mass at cell 0
    const BrainState uniform(4, 0.0);
    const double f = free_energy(cfg, uniform, b, Sensation::High, Action::Clockwise);
    CHECK(std::isinf(f));
    CHECK(f > 0.0);
    for (double g : free_energy_grad(cfg, uniform, b, Sensation::High, Action::Clockwise))
        CHECK(std::isfinite(g));
}

TEST_CASE("zero marginal is a domain error") {
    WorldConfig cfg = small_world();
    cfg.k_max = 1.0; // sensor certain at the source, so Low is impossible there
    BrainState point(4, -2000.0);
    point[2] = 0.0;
    CHECK_THROWS_AS(exact_posterior(cfg, point, Sensation::Low, Action::Clockwise),
                    std::domain_error);
}

TEST_CASE("gradient matches central finite differences") {
    const WorldConfig cfg;
    Rng rng(41);
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const BrainState b_next = oracle::random_brain(rng, cfg.n);
        const BrainState b = oracle::random_brain(rng, cfg.n);
        const Sensation s = oracle::random_sensation(rng);
        const Action a = oracle::random_action(rng);
        const std::vector<double> grad = free_energy_grad(cfg, b_next, b, s, a);
        const std::vector<double> fd = oracle::finite_diff_grad(cfg, b_next, b, s, a);
        double scale = 0.0, err = 0.0;
        for (int j = 0; j < cfg.n; ++j) {
            scale = std::max(scale, std::abs(fd[j]));
            err = std::max(err, std::abs(grad[j] - fd[j]));
        }
        worst = std::max(worst, err / scale);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("gradient components sum to zero") {
    // Softmax ignores a common offset, so the directional derivative along
    // the all-ones vector must vanish.
    const WorldConfig cfg;
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> grad =
            free_energy_grad(cfg, oracle::random_brain(rng, cfg.n), oracle::random_brain(rng, cfg.n),
                             oracle::random_sensation(rng), oracle::random_action(rng));
        double sum = 0.0;
        for (double g : grad) sum += g;
        CHECK(std::abs(sum) < 1e-12);
    }
}

TEST_CASE("gradient vanishes at the posterior") {
    const WorldConfig cfg;
    Rng rng(47);
    const BrainState b = oracle::random_brain(rng, cfg.n);
    const Belief posterior = exact_posterior(cfg, b, Sensation::Low, Action::Anticlockwise);
    BrainState at_posterior(cfg.n);
    for (int j = 0; j < cfg.n; ++j) at_posterior[j] = std::log(posterior[j]);
    for (double g : free_energy_grad(cfg, at_posterior, b, Sensation::Low, Action::Anticlockwise))
        CHECK(std::abs(g) < 1e-12);
}
