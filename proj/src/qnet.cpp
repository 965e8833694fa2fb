#include "twinforge/qnet.hpp"

#include <cmath>
#include <string>

#include "twinforge/rng.hpp"

namespace twinforge {

QNetwork QNetwork::make(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                        std::size_t output_dim, std::uint64_t seed) {
    if (input_dim == 0 || output_dim == 0) throw ShapeMismatch("zero-sized network layer");
    QNetwork net;
    Rng rng = Rng(seed).fork("qnet-init");
    std::size_t prev = input_dim;
    auto add_layer = [&](std::size_t out) {
        Layer l;
        l.in = prev;
        l.out = out;
        l.w.resize(out * prev);
        l.b.assign(out, 0.0);
        const double stddev = std::sqrt(2.0 / static_cast<double>(prev));
        for (auto& v : l.w) v = stddev * rng.normal();
        net.layers.push_back(std::move(l));
        prev = out;
    };
    for (std::size_t h : hidden) {
        if (h == 0) throw ShapeMismatch("zero-sized hidden layer");
        add_layer(h);
    }
    add_layer(output_dim);
    return net;
}

std::size_t QNetwork::n_params() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

double QNetwork::get_param(std::size_t flat) const {
    for (const auto& l : layers) {
        if (flat < l.w.size()) return l.w[flat];
        flat -= l.w.size();
        if (flat < l.b.size()) return l.b[flat];
        flat -= l.b.size();
    }
    throw ShapeMismatch("parameter index out of range");
}

void QNetwork::set_param(std::size_t flat, double v) {
    for (auto& l : layers) {
        if (flat < l.w.size()) {
            l.w[flat] = v;
            return;
        }
        flat -= l.w.size();
        if (flat < l.b.size()) {
            l.b[flat] = v;
            return;
        }
        flat -= l.b.size();
    }
    throw ShapeMismatch("parameter index out of range");
}

bool QNetwork::same_shape(const QNetwork& o) const {
    if (layers.size() != o.layers.size()) return false;
    for (std::size_t i = 0; i < layers.size(); ++i)
        if (layers[i].in != o.layers[i].in || layers[i].out != o.layers[i].out) return false;
    return true;
}

namespace {

void affine(const QNetwork::Layer& l, std::span<const double> x, std::vector<double>& y) {
    y.assign(l.out, 0.0);
    for (std::size_t r = 0; r < l.out; ++r) {
        const double* wr = l.w.data() + r * l.in;
        double acc = l.b[r];
        for (std::size_t c = 0; c < l.in; ++c) acc += wr[c] * x[c];
        y[r] = acc;
    }
}

}  // namespace

std::vector<double> QNetwork::forward(std::span<const double> x) const {
    if (x.size() != input_dim())
        throw ShapeMismatch("input length " + std::to_string(x.size()) + " != " +
                            std::to_string(input_dim()));
    std::vector<double> cur(x.begin(), x.end());
    for (auto& v : cur) v *= input_scale;
    std::vector<double> next;
    for (std::size_t li = 0; li < layers.size(); ++li) {
        affine(layers[li], cur, next);
        if (li + 1 < layers.size())
            for (auto& v : next) v = v > 0.0 ? v : 0.0;
        cur.swap(next);
    }
    return cur;
}

ForwardTrace forward_trace(const QNetwork& net, std::span<const double> x) {
    if (x.size() != net.input_dim()) throw ShapeMismatch("forward_trace: bad input length");
    ForwardTrace tr;
    tr.scaled_input.assign(x.begin(), x.end());
    for (auto& v : tr.scaled_input) v *= net.input_scale;
    tr.pre.resize(net.layers.size());
    tr.post.resize(net.layers.size());
    const std::vector<double>* cur = &tr.scaled_input;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        affine(net.layers[li], *cur, tr.pre[li]);
        tr.post[li] = tr.pre[li];
        if (li + 1 < net.layers.size())
            for (auto& v : tr.post[li]) v = v > 0.0 ? v : 0.0;
        cur = &tr.post[li];
    }
    return tr;
}

Gradients Gradients::zeros_like(const QNetwork& net) {
    Gradients g;
    for (const auto& l : net.layers) {
        QNetwork::Layer gl;
        gl.in = l.in;
        gl.out = l.out;
        gl.w.assign(l.w.size(), 0.0);
        gl.b.assign(l.b.size(), 0.0);
        g.layers.push_back(std::move(gl));
    }
    return g;
}

void Gradients::accumulate_scaled(const Gradients& o, double s) {
    for (std::size_t li = 0; li < layers.size(); ++li) {
        for (std::size_t k = 0; k < layers[li].w.size(); ++k) layers[li].w[k] += s * o.layers[li].w[k];
        for (std::size_t k = 0; k < layers[li].b.size(); ++k) layers[li].b[k] += s * o.layers[li].b[k];
    }
}

double Gradients::l2_norm() const {
    double sq = 0.0;
    for (const auto& l : layers) {
        for (double v : l.w) sq += v * v;
        for (double v : l.b) sq += v * v;
    }
    return std::sqrt(sq);
}

void Gradients::scale(double s) {
    for (auto& l : layers) {
        for (auto& v : l.w) v *= s;
        for (auto& v : l.b) v *= s;
    }
}

void backward(const QNetwork& net, const ForwardTrace& trace,
              std::span<const double> dloss_dout, Gradients& grads) {
    const std::size_t L = net.layers.size();
    if (dloss_dout.size() != net.output_dim()) throw ShapeMismatch("backward: bad output grad");

    std::vector<double> delta(dloss_dout.begin(), dloss_dout.end());
    for (std::size_t li = L; li-- > 0;) {
        const auto& layer = net.layers[li];
        const std::vector<double>& input =
            li == 0 ? trace.scaled_input : trace.post[li - 1];
        auto& gl = grads.layers[li];
        for (std::size_t r = 0; r < layer.out; ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            gl.b[r] += d;
            double* gw = gl.w.data() + r * layer.in;
            for (std::size_t c = 0; c < layer.in; ++c) gw[c] += d * input[c];
        }
        if (li == 0) break;
        std::vector<double> prev_delta(layer.in, 0.0);
        for (std::size_t r = 0; r < layer.out; ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            const double* wr = layer.w.data() + r * layer.in;
            for (std::size_t c = 0; c < layer.in; ++c) prev_delta[c] += d * wr[c];
        }
        // rectifier gate of the upstream layer
        const auto& pre = trace.pre[li - 1];
        for (std::size_t c = 0; c < prev_delta.size(); ++c)
            if (pre[c] <= 0.0) prev_delta[c] = 0.0;
        delta.swap(prev_delta);
    }
}

void sgd_step(QNetwork& net, const Gradients& grads, double lr, double clip_norm) {
    double s = 1.0;
    if (clip_norm > 0.0) {
        const double norm = grads.l2_norm();
        if (norm > clip_norm) s = clip_norm / norm;
    }
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        auto& l = net.layers[li];
        const auto& gl = grads.layers[li];
        for (std::size_t k = 0; k < l.w.size(); ++k) l.w[k] -= lr * s * gl.w[k];
        for (std::size_t k = 0; k < l.b.size(); ++k) l.b[k] -= lr * s * gl.b[k];
    }
}

void sync_target(const QNetwork& net, QNetwork& target) {
    if (!net.same_shape(target)) throw ShapeMismatch("sync_target: shape mismatch");
    target.layers = net.layers;
    target.input_scale = net.input_scale;
}

}  // namespace twinforge
