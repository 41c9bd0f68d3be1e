#include "sai/net.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sai/random.hpp"

namespace sai {

size_t NetworkWeights::expected_size(int i) const {
    const int n2 = board_size * board_size;
    const int f = filters;
    if (i == 0) return static_cast<size_t>(f) * kFeaturePlanes * 9;
    if (i == 1 || i == 2) return f;
    int j = i - 3;
    if (j < 6 * blocks) {
        switch (j % 6) {
            case 0: case 3: return static_cast<size_t>(f) * f * 9;
            default: return f;
        }
    }
    j -= 6 * blocks;
    switch (j) {
        case 0: return static_cast<size_t>(2) * f;          // policy conv
        case 1: case 2: return 2;                           // policy scale/bias
        case 3: return static_cast<size_t>(n2 + 1) * 2 * n2;  // policy fc W
        case 4: return n2 + 1;                              // policy fc b
        case 5: return static_cast<size_t>(value_filters) * f;
        case 6: case 7: return value_filters;
        case 8: return static_cast<size_t>(alpha_width) * value_filters * n2;
        case 9: return alpha_width;
        case 10: return alpha_width;                        // alpha fc2 W
        case 11: return 1;
        case 12: return static_cast<size_t>(beta_width) * value_filters * n2;
        case 13: return beta_width;
        case 14: return beta_width;                         // beta fc2 W
        case 15: return 1;
    }
    throw std::out_of_range("tensor index");
}

void NetworkWeights::validate() const {
    if (static_cast<int>(tensors.size()) != tensor_count()) {
        throw ShapeMismatchError("wrong tensor count");
    }
    for (int i = 0; i < tensor_count(); ++i) {
        if (tensors[i].size() != expected_size(i)) {
            throw ShapeMismatchError("tensor " + std::to_string(i) + " has size " +
                                     std::to_string(tensors[i].size()) + ", expected " +
                                     std::to_string(expected_size(i)));
        }
    }
}

NetworkWeights make_empty_weights(int board_size, int blocks, int filters,
                                  int value_filters, int alpha_width, int beta_width) {
    NetworkWeights w;
    w.board_size = board_size;
    w.blocks = blocks;
    w.filters = filters;
    w.value_filters = value_filters;
    w.alpha_width = alpha_width;
    w.beta_width = beta_width;
    w.tensors.resize(w.tensor_count());
    for (int i = 0; i < w.tensor_count(); ++i) w.tensors[i].assign(w.expected_size(i), 0.0f);
    return w;
}

NetworkWeights random_weights(int board_size, int blocks, int filters,
                              int value_filters, int alpha_width, int beta_width,
                              uint64_t seed, double scale) {
    NetworkWeights w = make_empty_weights(board_size, blocks, filters, value_filters,
                                          alpha_width, beta_width);
    Rng rng(seed);
    std::normal_distribution<double> dist(0.0, scale);
    for (auto& t : w.tensors)
        for (auto& v : t) v = static_cast<float>(dist(rng));
    // Keep folded batch-norm scales near one so activations do not vanish.
    int tc = 3 + 6 * blocks;
    auto bump = [&](int idx) { for (auto& v : w.tensors[idx]) v += 1.0f; };
    bump(1);
    for (int b = 0; b < blocks; ++b) { bump(3 + 6 * b + 1); bump(3 + 6 * b + 4); }
    bump(tc + 1);   // policy conv scale
    bump(tc + 6);   // value conv scale
    return w;
}

void save_weights(const NetworkWeights& w, std::ostream& os) {
    os << "SAIW1 " << w.board_size << " " << w.blocks << " " << w.filters << " "
       << w.value_filters << " " << w.alpha_width << " " << w.beta_width << "\n";
    char buf[64];
    for (const auto& t : w.tensors) {
        for (size_t i = 0; i < t.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(t[i]));
            if (i) os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

void save_weights_file(const NetworkWeights& w, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw WeightFormatError("cannot open " + path + " for writing");
    save_weights(w, os);
}

NetworkWeights load_weights(std::istream& is) {
    std::string magic;
    NetworkWeights w;
    if (!(is >> magic) || magic != "SAIW1") throw WeightFormatError("bad magic");
    if (!(is >> w.board_size >> w.blocks >> w.filters >> w.value_filters >>
          w.alpha_width >> w.beta_width)) {
        throw WeightFormatError("bad header");
    }
    std::string line;
    std::getline(is, line);  // rest of header line
    w.tensors.reserve(w.tensor_count());
    for (int i = 0; i < w.tensor_count(); ++i) {
        if (!std::getline(is, line)) throw WeightFormatError("missing tensor line");
        std::vector<float> t;
        t.reserve(w.expected_size(i));
        const char* s = line.c_str();
        char* end = nullptr;
        while (true) {
            float v = std::strtof(s, &end);
            if (end == s) break;
            t.push_back(v);
            s = end;
        }
        w.tensors.push_back(std::move(t));
    }
    w.validate();
    return w;
}

NetworkWeights load_weights_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw WeightFormatError("cannot open " + path);
    return load_weights(is);
}

namespace {

void relu(std::vector<float>& x) {
    for (auto& v : x) v = v > 0 ? v : 0;
}

// 3x3 convolution with zero padding, in [cin][n2] plane-major layout.
std::vector<float> conv3x3(const std::vector<float>& in, int cin, int cout, int size,
                           const std::vector<float>& w) {
    const int n2 = size * size;
    std::vector<float> out(static_cast<size_t>(cout) * n2, 0.0f);
    for (int oc = 0; oc < cout; ++oc) {
        for (int ic = 0; ic < cin; ++ic) {
            const float* plane = in.data() + static_cast<size_t>(ic) * n2;
            const float* k = w.data() + ((static_cast<size_t>(oc) * cin) + ic) * 9;
            float* op = out.data() + static_cast<size_t>(oc) * n2;
            for (int y = 0; y < size; ++y) {
                for (int x = 0; x < size; ++x) {
                    float acc = 0;
                    for (int dy = -1; dy <= 1; ++dy) {
                        int yy = y + dy;
                        if (yy < 0 || yy >= size) continue;
                        for (int dx = -1; dx <= 1; ++dx) {
                            int xx = x + dx;
                            if (xx < 0 || xx >= size) continue;
                            acc += plane[yy * size + xx] * k[(dy + 1) * 3 + (dx + 1)];
                        }
                    }
                    op[y * size + x] += acc;
                }
            }
        }
    }
    return out;
}

std::vector<float> conv1x1(const std::vector<float>& in, int cin, int cout, int size,
                           const std::vector<float>& w) {
    const int n2 = size * size;
    std::vector<float> out(static_cast<size_t>(cout) * n2, 0.0f);
    for (int oc = 0; oc < cout; ++oc) {
        for (int ic = 0; ic < cin; ++ic) {
            float k = w[static_cast<size_t>(oc) * cin + ic];
            const float* plane = in.data() + static_cast<size_t>(ic) * n2;
            float* op = out.data() + static_cast<size_t>(oc) * n2;
            for (int v = 0; v < n2; ++v) op[v] += plane[v] * k;
        }
    }
    return out;
}

void scale_bias(std::vector<float>& x, int channels, int n2,
                const std::vector<float>& scale, const std::vector<float>& bias) {
    for (int c = 0; c < channels; ++c) {
        float s = scale[c], b = bias[c];
        float* p = x.data() + static_cast<size_t>(c) * n2;
        for (int v = 0; v < n2; ++v) p[v] = p[v] * s + b;
    }
}

std::vector<float> dense(const std::vector<float>& in, int n_out,
                         const std::vector<float>& w, const std::vector<float>& b) {
    std::vector<float> out(n_out);
    const size_t n_in = in.size();
    for (int o = 0; o < n_out; ++o) {
        float acc = b[o];
        const float* row = w.data() + static_cast<size_t>(o) * n_in;
        for (size_t i = 0; i < n_in; ++i) acc += row[i] * in[i];
        out[o] = acc;
    }
    return out;
}

}  // namespace

EvalResult net_forward(const NetworkWeights& w, const FeatureTensor& f) {
    if (f.size != w.board_size) throw ShapeMismatchError("feature size mismatch");
    w.validate();
    const int size = w.board_size;
    const int n2 = size * size;
    const int ft = w.filters;

    std::vector<float> x = conv3x3(f.data, kFeaturePlanes, ft, size, w.tensors[0]);
    scale_bias(x, ft, n2, w.tensors[1], w.tensors[2]);
    relu(x);
    for (int b = 0; b < w.blocks; ++b) {
        const int t = 3 + 6 * b;
        std::vector<float> y = conv3x3(x, ft, ft, size, w.tensors[t]);
        scale_bias(y, ft, n2, w.tensors[t + 1], w.tensors[t + 2]);
        relu(y);
        y = conv3x3(y, ft, ft, size, w.tensors[t + 3]);
        scale_bias(y, ft, n2, w.tensors[t + 4], w.tensors[t + 5]);
        for (size_t i = 0; i < x.size(); ++i) y[i] += x[i];
        relu(y);
        x = std::move(y);
    }
    const int t = 3 + 6 * w.blocks;

    // Policy head.
    std::vector<float> ph = conv1x1(x, ft, 2, size, w.tensors[t]);
    scale_bias(ph, 2, n2, w.tensors[t + 1], w.tensors[t + 2]);
    relu(ph);
    std::vector<float> logits = dense(ph, n2 + 1, w.tensors[t + 3], w.tensors[t + 4]);
    float maxl = logits[0];
    for (float v : logits) maxl = std::max(maxl, v);
    EvalResult r;
    r.policy.resize(n2 + 1);
    double sum = 0;
    for (int i = 0; i <= n2; ++i) {
        r.policy[i] = std::exp(static_cast<double>(logits[i]) - maxl);
        sum += r.policy[i];
    }
    for (auto& p : r.policy) p /= sum;

    // Value head: shared 1x1 conv, then alpha and beta sub-heads.
    std::vector<float> vh = conv1x1(x, ft, w.value_filters, size, w.tensors[t + 5]);
    scale_bias(vh, w.value_filters, n2, w.tensors[t + 6], w.tensors[t + 7]);
    relu(vh);
    std::vector<float> a1 = dense(vh, w.alpha_width, w.tensors[t + 8], w.tensors[t + 9]);
    relu(a1);
    std::vector<float> a2 = dense(a1, 1, w.tensors[t + 10], w.tensors[t + 11]);
    std::vector<float> b1 = dense(vh, w.beta_width, w.tensors[t + 12], w.tensors[t + 13]);
    relu(b1);
    std::vector<float> b2 = dense(b1, 1, w.tensors[t + 14], w.tensors[t + 15]);
    r.params.alpha = a2[0];
    r.params.beta = std::exp(static_cast<double>(b2[0]));
    return r;
}

EvalResult NetEvaluator::evaluate(const Position& p, int symmetry) const {
    FeatureTensor f = extract_features(p);
    if (symmetry != 0) f = transform_features(f, symmetry);
    EvalResult r = net_forward(weights_, f);
    if (symmetry != 0) {
        std::vector<double> policy(r.policy.size());
        for (size_t i = 0; i < r.policy.size(); ++i) {
            policy[i] = r.policy[transform_vertex_index(static_cast<int>(i), p.size(), symmetry)];
        }
        r.policy = std::move(policy);
    }
    return r;
}

}  // namespace sai
