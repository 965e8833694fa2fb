#pragma once
// Fully connected value network: input -> hidden (rectified linear) -> linear
// output, double precision, seeded init, hand-written backward pass. The
// fixed input_scale is a constant preprocessing gain, not a learned
// parameter, so analytic gradients stay exact.

#include <cstdint>
#include <span>
#include <vector>

#include "twinforge/errors.hpp"

namespace twinforge {

struct QNetwork {
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> w;  // row-major out x in
        std::vector<double> b;
    };

    std::vector<Layer> layers;
    double input_scale = 1.0;

    static QNetwork make(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                         std::size_t output_dim, std::uint64_t seed);

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out; }
    std::size_t n_params() const;

    double get_param(std::size_t flat) const;
    void set_param(std::size_t flat, double v);

    std::vector<double> forward(std::span<const double> x) const;  // ShapeMismatch

    bool same_shape(const QNetwork& o) const;
};

/// Per-layer activation cache from one forward pass, consumed by backward().
struct ForwardTrace {
    std::vector<std::vector<double>> pre;   // pre-activation per layer
    std::vector<std::vector<double>> post;  // post-activation per layer (post.back() == output)
    std::vector<double> scaled_input;
};

ForwardTrace forward_trace(const QNetwork& net, std::span<const double> x);

struct Gradients {
    std::vector<QNetwork::Layer> layers;  // same shapes, w/b hold dL/dw, dL/db

    static Gradients zeros_like(const QNetwork& net);
    void accumulate_scaled(const Gradients& o, double s);
    double l2_norm() const;
    void scale(double s);
};

/// Backprop of dL/d(output) through the trace; accumulates into grads.
void backward(const QNetwork& net, const ForwardTrace& trace,
              std::span<const double> dloss_dout, Gradients& grads);

/// In-place SGD step: p -= lr * g, after clipping the global gradient norm.
void sgd_step(QNetwork& net, const Gradients& grads, double lr, double clip_norm);

/// Copies parameters (and input scale) so both nets compute identically.
void sync_target(const QNetwork& net, QNetwork& target);  // ShapeMismatch

}  // namespace twinforge
