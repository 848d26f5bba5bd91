#ifndef NEEDSTACK_SGNS_H_
#define NEEDSTACK_SGNS_H_

// The skip-gram negative-sampling update for one (center, context) pair.
//
// For center input vector v, positive output vector u_c and negative output
// vectors u_1..u_n the objective is
//
//   L = log s(u_c . v) + sum_i log s(-u_i . v)
//
// and one gradient-ascent step with learning rate lr is
//
//   v   += lr * [(1 - s(u_c . v)) u_c - sum_i s(u_i . v) u_i]
//   u_c += lr * (1 - s(u_c . v)) v
//   u_i += lr * (-s(u_i . v)) v
//
// with every right-hand side evaluated at the pre-step values. The trainer
// instantiates this with float and the lookup-table sigmoid; tests
// instantiate it with double and the exact sigmoid.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace needstack {

template <typename T>
T exact_sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

// Logistic function tabulated on [-6, 6]; saturates to 0 / 1 outside.
class SigmoidTable {
 public:
  static constexpr int kSize = 512;
  static constexpr float kMax = 6.0f;

  SigmoidTable() {
    for (int i = 0; i < kSize; ++i) {
      double x = (static_cast<double>(i) / kSize * 2.0 - 1.0) * kMax;
      table_[i] = static_cast<float>(exact_sigmoid(x));
    }
  }

  float operator()(float x) const {
    if (x >= kMax) return 1.0f;
    if (x <= -kMax) return 0.0f;
    int i = static_cast<int>((x + kMax) * (kSize / kMax / 2.0f));
    if (i >= kSize) i = kSize - 1;
    return table_[i];
  }

 private:
  std::array<float, kSize> table_{};
};

// outputs[0] is the positive context row, outputs[1..] the negatives.
// `scratch` must hold center.size() elements.
template <typename T, typename Sigmoid>
void sgns_update(std::span<T> center, std::span<const std::span<T>> outputs,
                 T lr, const Sigmoid &sigmoid, std::span<T> scratch) {
  const std::size_t dim = center.size();
  for (std::size_t d = 0; d < dim; ++d) scratch[d] = T(0);
  for (std::size_t j = 0; j < outputs.size(); ++j) {
    std::span<T> out = outputs[j];
    T f = T(0);
    for (std::size_t d = 0; d < dim; ++d) f += center[d] * out[d];
    const T label = j == 0 ? T(1) : T(0);
    const T g = (label - sigmoid(f)) * lr;
    for (std::size_t d = 0; d < dim; ++d) scratch[d] += g * out[d];
    for (std::size_t d = 0; d < dim; ++d) out[d] += g * center[d];
  }
  for (std::size_t d = 0; d < dim; ++d) center[d] += scratch[d];
}

}  // namespace needstack

#endif  // NEEDSTACK_SGNS_H_
