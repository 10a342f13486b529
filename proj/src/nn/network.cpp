#include "tsc/nn/network.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tsc::nn {

void Gradients::scale(double s) {
    for (auto &layer : layers) {
        for (double &g : layer.w)
            g *= s;
        for (double &g : layer.b)
            g *= s;
    }
}

void Gradients::add(const Gradients &other) {
    if (layers.size() != other.layers.size())
        throw std::invalid_argument("gradient shapes differ");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].w.size(); ++i)
            layers[l].w[i] += other.layers[l].w[i];
        for (std::size_t i = 0; i < layers[l].b.size(); ++i)
            layers[l].b[i] += other.layers[l].b[i];
    }
}

FeedForwardNet::FeedForwardNet(std::vector<int> layer_sizes, Rng &rng)
    : sizes_(std::move(layer_sizes)) {
    if (sizes_.size() < 2)
        throw std::invalid_argument("a network needs at least input and output layers");
    for (int s : sizes_)
        if (s < 1)
            throw std::invalid_argument("layer sizes must be positive");
    layers_.resize(sizes_.size() - 1);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        Layer &layer = layers_[l];
        layer.in = sizes_[l];
        layer.out = sizes_[l + 1];
        const std::size_t n = static_cast<std::size_t>(layer.in) * layer.out;
        layer.w.resize(n);
        layer.b.assign(static_cast<std::size_t>(layer.out), 0.0);
        layer.w_acc.assign(n, 0.0);
        layer.b_acc.assign(static_cast<std::size_t>(layer.out), 0.0);
        const double scale = 1.0 / std::sqrt(static_cast<double>(layer.in));
        std::uniform_real_distribution<double> dist(-scale, scale);
        for (double &w : layer.w)
            w = dist(rng);
    }
}

std::size_t FeedForwardNet::parameter_count() const {
    std::size_t n = 0;
    for (const Layer &l : layers_)
        n += l.w.size() + l.b.size();
    return n;
}

std::vector<double> FeedForwardNet::forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_dim())
        throw std::invalid_argument("input dimension mismatch");
    std::vector<double> act(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer &layer = layers_[l];
        next.assign(static_cast<std::size_t>(layer.out), 0.0);
        const bool hidden = l + 1 < layers_.size();
        for (int o = 0; o < layer.out; ++o) {
            const double *row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            double z = layer.b[static_cast<std::size_t>(o)];
            for (int i = 0; i < layer.in; ++i)
                z += row[i] * act[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(o)] = hidden && z < 0.0 ? 0.0 : z;
        }
        act.swap(next);
    }
    return act;
}

Gradients FeedForwardNet::zero_gradients() const {
    Gradients g;
    g.layers.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        g.layers[l].w.assign(layers_[l].w.size(), 0.0);
        g.layers[l].b.assign(layers_[l].b.size(), 0.0);
    }
    return g;
}

FeedForwardNet make_q_network(int input_dim, int action_count, Rng &rng) {
    if (input_dim < 1 || action_count < 1)
        throw std::invalid_argument("input_dim and action_count must be positive");
    return FeedForwardNet({input_dim, 32, 64, 64, action_count}, rng);
}

double accumulate_td_gradients(const FeedForwardNet &net, std::span<const double> input,
                               int action_index, double target, Gradients &acc) {
    if (action_index < 0 || action_index >= net.output_dim())
        throw std::invalid_argument("action index out of range");
    const auto &layers = net.layers();

    // Forward pass keeping post-activation values per layer.
    std::vector<std::vector<double>> act(layers.size() + 1);
    act[0].assign(input.begin(), input.end());
    if (static_cast<int>(act[0].size()) != net.input_dim())
        throw std::invalid_argument("input dimension mismatch");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const Layer &layer = layers[l];
        const bool hidden = l + 1 < layers.size();
        act[l + 1].assign(static_cast<std::size_t>(layer.out), 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double *row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            double z = layer.b[static_cast<std::size_t>(o)];
            for (int i = 0; i < layer.in; ++i)
                z += row[i] * act[l][static_cast<std::size_t>(i)];
            act[l + 1][static_cast<std::size_t>(o)] = hidden && z < 0.0 ? 0.0 : z;
        }
    }

    const double q = act.back()[static_cast<std::size_t>(action_index)];
    const double diff = target - q;
    const double loss = diff * diff;

    // Backward pass. Only the selected output carries error.
    std::vector<double> delta(static_cast<std::size_t>(net.output_dim()), 0.0);
    delta[static_cast<std::size_t>(action_index)] = -2.0 * diff;
    for (std::size_t l = layers.size(); l-- > 0;) {
        const Layer &layer = layers[l];
        LayerGrad &g = acc.layers[l];
        for (int o = 0; o < layer.out; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d == 0.0)
                continue;
            g.b[static_cast<std::size_t>(o)] += d;
            double *grow = g.w.data() + static_cast<std::size_t>(o) * layer.in;
            const double *a = act[l].data();
            for (int i = 0; i < layer.in; ++i)
                grow[i] += d * a[i];
        }
        if (l == 0)
            break;
        std::vector<double> prev(static_cast<std::size_t>(layer.in), 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d == 0.0)
                continue;
            const double *row = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i)
                prev[static_cast<std::size_t>(i)] += row[i] * d;
        }
        // ReLU derivative: post-activation is zero exactly where z <= 0.
        for (int i = 0; i < layer.in; ++i)
            if (act[l][static_cast<std::size_t>(i)] <= 0.0)
                prev[static_cast<std::size_t>(i)] = 0.0;
        delta.swap(prev);
    }
    return loss;
}

std::pair<double, Gradients> td_gradients(const FeedForwardNet &net,
                                          std::span<const double> input, int action_index,
                                          double target) {
    Gradients g = net.zero_gradients();
    const double loss = accumulate_td_gradients(net, input, action_index, target, g);
    return {loss, std::move(g)};
}

void rmsprop_step(FeedForwardNet &net, const Gradients &grads, double lr, double decay,
                  double eps) {
    auto &layers = net.layers();
    if (grads.layers.size() != layers.size())
        throw std::invalid_argument("gradient shapes differ from network");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Layer &layer = layers[l];
        const LayerGrad &g = grads.layers[l];
        if (g.w.size() != layer.w.size() || g.b.size() != layer.b.size())
            throw std::invalid_argument("gradient shapes differ from network");
        for (std::size_t i = 0; i < layer.w.size(); ++i) {
            const double gi = g.w[i];
            layer.w_acc[i] = decay * layer.w_acc[i] + (1.0 - decay) * gi * gi;
            layer.w[i] -= lr * gi / std::sqrt(layer.w_acc[i] + eps);
        }
        for (std::size_t i = 0; i < layer.b.size(); ++i) {
            const double gi = g.b[i];
            layer.b_acc[i] = decay * layer.b_acc[i] + (1.0 - decay) * gi * gi;
            layer.b[i] -= lr * gi / std::sqrt(layer.b_acc[i] + eps);
        }
    }
}

void copy_parameters(const FeedForwardNet &src, FeedForwardNet &dst) {
    if (src.layer_sizes() != dst.layer_sizes())
        throw std::invalid_argument("cannot copy parameters between different architectures");
    for (std::size_t l = 0; l < src.layers().size(); ++l) {
        dst.layers()[l].w = src.layers()[l].w;
        dst.layers()[l].b = src.layers()[l].b;
    }
}

void save_parameters(const FeedForwardNet &net, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    const auto put_u32 = [&](std::uint32_t v) {
        out.write(reinterpret_cast<const char *>(&v), sizeof(v));
    };
    put_u32(static_cast<std::uint32_t>(net.layer_sizes().size()));
    for (int s : net.layer_sizes())
        put_u32(static_cast<std::uint32_t>(s));
    for (const Layer &layer : net.layers()) {
        out.write(reinterpret_cast<const char *>(layer.w.data()),
                  static_cast<std::streamsize>(layer.w.size() * sizeof(double)));
        out.write(reinterpret_cast<const char *>(layer.b.data()),
                  static_cast<std::streamsize>(layer.b.size() * sizeof(double)));
    }
    if (!out)
        throw std::runtime_error("short write to " + path);
}

FeedForwardNet load_parameters(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    const auto get_u32 = [&]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char *>(&v), sizeof(v));
        return v;
    };
    const std::uint32_t count = get_u32();
    if (!in || count < 2 || count > 64)
        throw std::runtime_error("corrupt network snapshot header in " + path);
    std::vector<int> sizes(count);
    for (auto &s : sizes)
        s = static_cast<int>(get_u32());
    Rng dummy(0);
    FeedForwardNet net(sizes, dummy);
    for (Layer &layer : net.layers()) {
        in.read(reinterpret_cast<char *>(layer.w.data()),
                static_cast<std::streamsize>(layer.w.size() * sizeof(double)));
        in.read(reinterpret_cast<char *>(layer.b.data()),
                static_cast<std::streamsize>(layer.b.size() * sizeof(double)));
        std::fill(layer.w_acc.begin(), layer.w_acc.end(), 0.0);
        std::fill(layer.b_acc.begin(), layer.b_acc.end(), 0.0);
    }
    if (!in)
        throw std::runtime_error("truncated network snapshot " + path);
    return net;
}

} // namespace tsc::nn
