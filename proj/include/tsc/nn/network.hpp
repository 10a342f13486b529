#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsc/rng.hpp"

namespace tsc::nn {

struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;     // out x in, row-major
    std::vector<double> b;     // out
    std::vector<double> w_acc; // RMS accumulators, same shapes
    std::vector<double> b_acc;
};

struct LayerGrad {
    std::vector<double> w;
    std::vector<double> b;
};

// Gradients shape-congruent with the network they came from.
struct Gradients {
    std::vector<LayerGrad> layers;

    void scale(double s);
    void add(const Gradients &other);
};

// Dense feed-forward network, ReLU hidden activations, linear output.
// Weights initialize uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases
// and RMS accumulators zero.
class FeedForwardNet {
  public:
    FeedForwardNet() = default;
    FeedForwardNet(std::vector<int> layer_sizes, Rng &rng);

    const std::vector<int> &layer_sizes() const { return sizes_; }
    const std::vector<Layer> &layers() const { return layers_; }
    std::vector<Layer> &layers() { return layers_; }
    int input_dim() const { return sizes_.front(); }
    int output_dim() const { return sizes_.back(); }
    std::size_t parameter_count() const;

    std::vector<double> forward(std::span<const double> input) const;

    Gradients zero_gradients() const;

  private:
    std::vector<int> sizes_;
    std::vector<Layer> layers_;
};

// The Q-value approximator used by every agent: three hidden layers of
// 32, 64 and 64 units between the observation encoding and one output per
// action.
FeedForwardNet make_q_network(int input_dim, int action_count, Rng &rng);

// Squared TD error on the selected action: loss = (target - q[action])^2.
// The target is a constant; gradients flow only through q[action].
std::pair<double, Gradients> td_gradients(const FeedForwardNet &net,
                                          std::span<const double> input, int action_index,
                                          double target);

// Accumulating form for minibatches; returns the sample loss.
double accumulate_td_gradients(const FeedForwardNet &net, std::span<const double> input,
                               int action_index, double target, Gradients &acc);

// acc <- decay*acc + (1-decay)*g^2 ; param <- param - lr*g/sqrt(acc+eps)
void rmsprop_step(FeedForwardNet &net, const Gradients &grads, double lr = 1e-4,
                  double decay = 0.9, double eps = 1e-8);

// Copies weights and biases; the destination's RMS accumulators are left
// untouched. Throws on architecture mismatch.
void copy_parameters(const FeedForwardNet &src, FeedForwardNet &dst);

// Flat little-endian snapshot: u32 layer count, u32 sizes, then per layer
// f64 weights row-major followed by f64 biases.
void save_parameters(const FeedForwardNet &net, const std::string &path);
FeedForwardNet load_parameters(const std::string &path);

} // namespace tsc::nn
