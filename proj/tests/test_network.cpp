#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>

#include "tsc/nn/network.hpp"

using namespace tsc;

namespace {

// Test-local reference forward pass, kept deliberately separate from the
// implementation: nested vectors, no buffer reuse.
std::vector<double> reference_forward(const nn::FeedForwardNet &net,
                                      const std::vector<double> &input) {
    std::vector<double> act = input;
    const auto &layers = net.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        std::vector<std::vector<double>> w(static_cast<std::size_t>(layers[l].out));
        for (int o = 0; o < layers[l].out; ++o)
            for (int i = 0; i < layers[l].in; ++i)
                w[o].push_back(layers[l].w[static_cast<std::size_t>(o * layers[l].in + i)]);
        std::vector<double> next;
        for (int o = 0; o < layers[l].out; ++o) {
            double z = layers[l].b[static_cast<std::size_t>(o)];
            for (int i = 0; i < layers[l].in; ++i)
                z += w[o][static_cast<std::size_t>(i)] * act[static_cast<std::size_t>(i)];
            if (l + 1 < layers.size())
                z = std::max(0.0, z);
            next.push_back(z);
        }
        act = next;
    }
    return act;
}

std::vector<double> random_input(int n, Rng &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double &x : v)
        x = dist(rng);
    return v;
}

} // namespace

TEST_CASE("seeded initialization is reproducible") {
    Rng a(42), b(42), c(7);
    nn::FeedForwardNet n1 = nn::make_q_network(60, 5, a);
    nn::FeedForwardNet n2 = nn::make_q_network(60, 5, b);
    nn::FeedForwardNet n3 = nn::make_q_network(60, 5, c);
    for (std::size_t l = 0; l < n1.layers().size(); ++l) {
        CHECK(n1.layers()[l].w == n2.layers()[l].w);
        CHECK(n1.layers()[l].b == n2.layers()[l].b);
    }
    CHECK(n1.layers()[0].w != n3.layers()[0].w);
}

TEST_CASE("fresh networks map zero input to zero output") {
    Rng rng(1);
    nn::FeedForwardNet net = nn::make_q_network(60, 5, rng);
    const std::vector<double> zeros(60, 0.0);
    for (double q : net.forward(zeros))
        CHECK(q == 0.0);
}

TEST_CASE("q-network has the fixed hidden stack and parameter count") {
    Rng rng(1);
    nn::FeedForwardNet net = nn::make_q_network(60, 5, rng);
    CHECK(net.layer_sizes() == std::vector<int>{60, 32, 64, 64, 5});

    std::size_t expected = 0;
    const auto &sizes = net.layer_sizes();
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
        expected += static_cast<std::size_t>(sizes[l]) * sizes[l + 1] + sizes[l + 1];
    CHECK(net.parameter_count() == expected);
    CHECK(net.parameter_count() == 8549); // 60*32+32 + 32*64+64 + 64*64+64 + 64*5+5
}

TEST_CASE("forward matches the reference implementation") {
    Rng rng(123);
    nn::FeedForwardNet net = nn::make_q_network(24, 4, rng);
    for (int trial = 0; trial < 10; ++trial) {
        const auto input = random_input(24, rng);
        const auto got = net.forward(input);
        const auto want = reference_forward(net, input);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-10);
    }
}

TEST_CASE("forward rejects dimension mismatches") {
    Rng rng(1);
    nn::FeedForwardNet net = nn::make_q_network(8, 3, rng);
    const std::vector<double> bad(7, 0.0);
    CHECK_THROWS_AS(net.forward(bad), std::invalid_argument);
}

TEST_CASE("zero weights leave only the output biases") {
    Rng rng(9);
    nn::FeedForwardNet net = nn::make_q_network(8, 3, rng);
    for (auto &layer : net.layers())
        std::fill(layer.w.begin(), layer.w.end(), 0.0);
    net.layers().back().b = {1.5, -2.0, 0.25};
    const auto q = net.forward(random_input(8, rng));
    CHECK(q == std::vector<double>{1.5, -2.0, 0.25});
}

TEST_CASE("td loss is zero at the fixed point") {
    Rng rng(5);
    nn::FeedForwardNet net = nn::make_q_network(8, 3, rng);
    const auto input = random_input(8, rng);
    const double y = net.forward(input)[1];
    const auto [loss, grads] = nn::td_gradients(net, input, 1, y);
    CHECK(loss == 0.0);
    for (const auto &layer : grads.layers) {
        for (double g : layer.w)
            CHECK(g == 0.0);
        for (double g : layer.b)
            CHECK(g == 0.0);
    }
}

TEST_CASE("single linear unit gradient is 2(w - y)") {
    Rng rng(3);
    nn::FeedForwardNet net({1, 1}, rng);
    net.layers()[0].w = {0.7};
    net.layers()[0].b = {0.0};
    const std::vector<double> input{1.0};
    const auto [loss, grads] = nn::td_gradients(net, input, 0, 2.0);
    CHECK(loss == doctest::Approx((2.0 - 0.7) * (2.0 - 0.7)));
    CHECK(grads.layers[0].w[0] == doctest::Approx(2.0 * (0.7 - 2.0)));
}

TEST_CASE("gradients match central finite differences") {
    Rng rng(2024);
    nn::FeedForwardNet net = nn::make_q_network(4, 3, rng);
    const auto input = random_input(4, rng);
    const int action = 2;
    const double target = 0.8;
    const auto [loss, grads] = nn::td_gradients(net, input, action, target);

    const double eps = 1e-5;
    auto loss_at = [&]() {
        const double q = net.forward(input)[action];
        return (target - q) * (target - q);
    };
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        auto check_component = [&](double &param, double analytic) {
            const double saved = param;
            param = saved + eps;
            const double up = loss_at();
            param = saved - eps;
            const double down = loss_at();
            param = saved;
            const double fd = (up - down) / (2.0 * eps);
            const double denom = std::max({std::abs(fd), std::abs(analytic), 1e-8});
            CHECK(std::abs(fd - analytic) / denom < 1e-4);
        };
        for (std::size_t i = 0; i < net.layers()[l].w.size(); i += 7)
            check_component(net.layers()[l].w[i], grads.layers[l].w[i]);
        for (std::size_t i = 0; i < net.layers()[l].b.size(); i += 3)
            check_component(net.layers()[l].b[i], grads.layers[l].b[i]);
    }
    CHECK(loss >= 0.0);
}

TEST_CASE("minibatch gradient is the mean of per-sample gradients") {
    Rng rng(77);
    nn::FeedForwardNet net = nn::make_q_network(6, 2, rng);
    std::vector<std::vector<double>> inputs;
    std::vector<int> actions{0, 1, 0};
    std::vector<double> targets{0.3, -0.2, 1.1};
    for (int i = 0; i < 3; ++i)
        inputs.push_back(random_input(6, rng));

    nn::Gradients acc = net.zero_gradients();
    for (int i = 0; i < 3; ++i)
        nn::accumulate_td_gradients(net, inputs[static_cast<std::size_t>(i)],
                                    actions[static_cast<std::size_t>(i)],
                                    targets[static_cast<std::size_t>(i)], acc);
    acc.scale(1.0 / 3.0);

    nn::Gradients mean = net.zero_gradients();
    for (int i = 0; i < 3; ++i) {
        auto [loss, g] = nn::td_gradients(net, inputs[static_cast<std::size_t>(i)],
                                          actions[static_cast<std::size_t>(i)],
                                          targets[static_cast<std::size_t>(i)]);
        g.scale(1.0 / 3.0);
        mean.add(g);
    }
    for (std::size_t l = 0; l < acc.layers.size(); ++l)
        for (std::size_t i = 0; i < acc.layers[l].w.size(); ++i)
            CHECK(acc.layers[l].w[i] == doctest::Approx(mean.layers[l].w[i]).epsilon(1e-12));
}

TEST_CASE("rmsprop with zero gradients changes nothing") {
    Rng rng(8);
    nn::FeedForwardNet net = nn::make_q_network(8, 3, rng);
    const auto before = net.layers()[0].w;
    nn::rmsprop_step(net, net.zero_gradients());
    CHECK(net.layers()[0].w == before);
}

TEST_CASE("rmsprop scalar step matches the update formula") {
    Rng rng(8);
    nn::FeedForwardNet net({1, 1}, rng);
    net.layers()[0].w = {1.0};
    nn::Gradients g = net.zero_gradients();
    g.layers[0].w[0] = 1.0;
    nn::rmsprop_step(net, g, 1e-4, 0.9, 1e-8);
    const double expected_step = 1e-4 / std::sqrt(0.1 * 1.0 + 1e-8);
    CHECK(net.layers()[0].w[0] == doctest::Approx(1.0 - expected_step).epsilon(1e-12));
    CHECK(expected_step == doctest::Approx(3.1623e-4).epsilon(1e-4));
}

TEST_CASE("repeated identical gradients drive the accumulator toward g^2") {
    Rng rng(8);
    nn::FeedForwardNet net({1, 1}, rng);
    nn::Gradients g = net.zero_gradients();
    g.layers[0].w[0] = 2.0;
    for (int i = 0; i < 200; ++i)
        nn::rmsprop_step(net, g);
    CHECK(net.layers()[0].w_acc[0] == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("copy_parameters copies weights but not optimizer state") {
    Rng rng(11);
    nn::FeedForwardNet src = nn::make_q_network(8, 3, rng);
    nn::FeedForwardNet dst = nn::make_q_network(8, 3, rng);
    const auto input = random_input(8, rng);

    nn::copy_parameters(src, dst);
    CHECK(src.forward(input) == dst.forward(input));

    // a training step on src makes them diverge again
    auto [loss, grads] = nn::td_gradients(src, input, 0, 5.0);
    nn::rmsprop_step(src, grads, 1e-2);
    CHECK(src.forward(input) != dst.forward(input));

    // idempotent
    nn::copy_parameters(src, dst);
    const auto once = dst.forward(input);
    nn::copy_parameters(src, dst);
    CHECK(dst.forward(input) == once);

    nn::FeedForwardNet other = nn::make_q_network(9, 3, rng);
    CHECK_THROWS_AS(nn::copy_parameters(src, other), std::invalid_argument);
}

TEST_CASE("snapshot round trip preserves parameters and zeroes accumulators") {
    Rng rng(13);
    nn::FeedForwardNet net = nn::make_q_network(12, 5, rng);
    const auto input = random_input(12, rng);
    auto [loss, grads] = nn::td_gradients(net, input, 3, 1.0);
    nn::rmsprop_step(net, grads); // non-zero accumulators before saving

    const std::string path = (std::filesystem::temp_directory_path() / "tsc_net_test.bin").string();
    nn::save_parameters(net, path);
    nn::FeedForwardNet back = nn::load_parameters(path);

    CHECK(back.layer_sizes() == net.layer_sizes());
    CHECK(back.forward(input) == net.forward(input));
    for (const auto &layer : back.layers()) {
        for (double a : layer.w_acc)
            CHECK(a == 0.0);
        for (double a : layer.b_acc)
            CHECK(a == 0.0);
    }
    std::filesystem::remove(path);
}
