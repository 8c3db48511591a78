#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace citytess {

enum class Activation { kLinear, kSigmoid, kRelu };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

struct LstmSpec {
    int input_size = 1;
    int hidden = 10;
    int layers = 1;
    Activation head_activation = Activation::kLinear;
};

// One contiguous slice of the flat parameter vector.
struct ParamBlock {
    std::string name;
    std::size_t offset = 0;
    std::size_t size = 0;
};

// Stacked no-peephole LSTM with a scalar regression head. Parameters live in
// one flat vector; per layer the blocks are W (4n x in, input-to-hidden),
// U (4n x n, hidden-to-hidden) and b (4n), with gate rows ordered
// [input, forget, candidate, output]. The head is a linear map from the final
// hidden state through the configured activation.
class LstmNetwork {
public:
    LstmNetwork() = default;
    explicit LstmNetwork(const LstmSpec& spec);

    // uniform(-1/sqrt(n), 1/sqrt(n)) weights, forget-gate bias 1, other biases 0.
    void init_weights(std::uint64_t seed);

    const LstmSpec& spec() const { return spec_; }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    const std::vector<ParamBlock>& blocks() const { return blocks_; }

    int layer_input_size(int layer) const { return layer == 0 ? spec_.input_size : spec_.hidden; }
    const double* layer_w(int layer) const { return params_.data() + w_off_[layer]; }
    const double* layer_u(int layer) const { return params_.data() + u_off_[layer]; }
    const double* layer_b(int layer) const { return params_.data() + b_off_[layer]; }
    const double* head_w() const { return params_.data() + head_w_off_; }
    double head_b() const { return params_[head_b_off_]; }

    std::size_t w_offset(int layer) const { return w_off_[layer]; }
    std::size_t u_offset(int layer) const { return u_off_[layer]; }
    std::size_t b_offset(int layer) const { return b_off_[layer]; }
    std::size_t head_w_offset() const { return head_w_off_; }
    std::size_t head_b_offset() const { return head_b_off_; }

private:
    LstmSpec spec_;
    std::vector<double> params_;
    std::vector<ParamBlock> blocks_;
    std::vector<std::size_t> w_off_, u_off_, b_off_;
    std::size_t head_w_off_ = 0, head_b_off_ = 0;
};

// Inverted-scaling dropout masks for one sample: entries are 0 or 1/(1-p).
// `inter[l]` masks layer l's hidden sequence feeding layer l+1 (steps x n);
// `head` masks the final hidden state before the head (n values).
struct DropoutMasks {
    std::vector<std::vector<double>> inter;
    std::vector<double> head;
};

// Single cell step on raw gate blocks; the reference semantics behind the
// runner below. Gates i,f,o are logistic, the candidate is tanh;
// c' = f*c + i*g, h' = o*tanh(c').
void lstm_cell_forward(const double* x, int input_size, const double* h_prev,
                       const double* c_prev, const double* w, const double* u, const double* b,
                       int hidden, double* h_out, double* c_out);

// Forward/backward engine with preallocated scratch. backward() consumes the
// caches written by the latest forward(..., true, ...) call, so one runner
// serves one sample at a time.
class LstmRunner {
public:
    LstmRunner(const LstmSpec& spec, int max_steps);

    // `window` is steps x input_size, row-major. Masks may be null (no dropout).
    double forward(const LstmNetwork& net, const double* window, int steps, bool keep_cache,
                   const DropoutMasks* masks);

    // Accumulates d(loss)/d(theta) into `grad` given d(loss)/d(prediction).
    void backward(const LstmNetwork& net, const double* window, int steps, double dloss_dpred,
                  const DropoutMasks* masks, std::vector<double>& grad);

private:
    LstmSpec spec_;
    int max_steps_;
    // caches, indexed [layer][step * width]
    std::vector<std::vector<double>> gates_;   // 4n per step, post-activation
    std::vector<std::vector<double>> cells_;   // n per step
    std::vector<std::vector<double>> tanh_c_;  // n per step
    std::vector<std::vector<double>> hidden_;  // n per step, pre-dropout
    std::vector<std::vector<double>> dropped_; // n per step, post-dropout (next layer's input)
    double head_z_ = 0.0;
    double prediction_ = 0.0;
    int cached_steps_ = 0;
    // backward scratch
    std::vector<double> dh_seq_, dx_seq_, dh_carry_, dc_carry_, dpre_, dh_, dc_;
};

} // namespace citytess
