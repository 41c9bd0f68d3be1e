#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sai/evaluator.hpp"

namespace sai {

class ShapeMismatchError : public std::runtime_error {
public:
    explicit ShapeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

class WeightFormatError : public std::runtime_error {
public:
    explicit WeightFormatError(const std::string& what) : std::runtime_error(what) {}
};

// Inference weights for the residual policy/value network. Batch-norm comes
// pre-folded into per-channel scale+bias. Text format: a header line
//   SAIW1 <N> <blocks> <filters> <vh_filters> <wa> <wb>
// followed by one tensor per line, decimal floats, in the order:
//   input conv [f][17][3][3], scale [f], bias [f];
//   per block: conv1 [f][f][3][3], scale, bias, conv2 [f][f][3][3], scale, bias;
//   policy conv [2][f], scale [2], bias [2]; policy fc W [N*N+1][2*N*N], b;
//   value conv [vf][f], scale [vf], bias [vf];
//   alpha fc1 W [wa][vf*N*N], b [wa]; alpha fc2 W [1][wa], b [1];
//   beta fc1 W [wb][vf*N*N], b [wb]; beta fc2 W [1][wb], b [1].
struct NetworkWeights {
    int board_size = 9;
    int blocks = 1;
    int filters = 8;
    int value_filters = 2;
    int alpha_width = 384;
    int beta_width = 256;
    std::vector<std::vector<float>> tensors;

    int tensor_count() const { return 3 + 6 * blocks + 5 + 3 + 4 + 4; }
    // Expected element count of tensor i; used to validate shapes.
    size_t expected_size(int i) const;
    void validate() const;
};

NetworkWeights make_empty_weights(int board_size, int blocks, int filters,
                                  int value_filters = 2, int alpha_width = 384,
                                  int beta_width = 256);
NetworkWeights random_weights(int board_size, int blocks, int filters,
                              int value_filters, int alpha_width, int beta_width,
                              uint64_t seed, double scale = 0.1);

void save_weights(const NetworkWeights& w, std::ostream& os);
void save_weights_file(const NetworkWeights& w, const std::string& path);
NetworkWeights load_weights(std::istream& is);
NetworkWeights load_weights_file(const std::string& path);

EvalResult net_forward(const NetworkWeights& w, const FeatureTensor& f);

class NetEvaluator : public Evaluator {
public:
    explicit NetEvaluator(NetworkWeights w) : weights_(std::move(w)) {}
    EvalResult evaluate(const Position& p, int symmetry = 0) const override;
    const NetworkWeights& weights() const { return weights_; }

private:
    NetworkWeights weights_;
};

}  // namespace sai
