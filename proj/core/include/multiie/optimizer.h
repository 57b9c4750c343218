// Copyright 2026 The MultiIE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTIIE_OPTIMIZER_H_
#define MULTIIE_OPTIMIZER_H_

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "multiie/error.h"
#include "multiie/params.h"

namespace multiie {

enum class OptimizerKind { kSgd, kAdam };

OptimizerKind ParseOptimizerKind(std::string_view name);
std::string_view OptimizerName(OptimizerKind kind);

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::kSgd;
  double learning_rate = 1.0;
  // Decoupled: w <- w - lr * weight_decay * w, applied before the gradient step.
  double weight_decay = 0.0;
  // Rescales the whole gradient to this global L2 norm when it is larger.
  // Zero disables clipping.
  double clip_norm = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
};

// Parameter update with optional moment state (Adam). Plain SGD without
// clipping performs exactly SgdUpdate.
template <class P>
class Optimizer {
 public:
  Optimizer(const OptimizerOptions& options, const P& like) : options_(options) {
    if (options.kind == OptimizerKind::kAdam) {
      first_ = ZerosLike(like);
      second_ = ZerosLike(like);
    }
  }

  const OptimizerOptions& options() const { return options_; }
  std::size_t steps() const { return steps_; }

  void Step(P& params, P grads) {
    ++steps_;
    if (options_.clip_norm > 0.0) {
      double sq = 0.0;
      grads.ForEachTensor([&](std::string_view, const Matrix& m) {
        for (double v : m.data()) sq += v * v;
      });
      const double norm = std::sqrt(sq);
      if (norm > options_.clip_norm) {
        const double scale = options_.clip_norm / norm;
        grads.ForEachTensor([&](std::string_view, Matrix& m) { m *= scale; });
      }
    }
    if (options_.kind == OptimizerKind::kSgd) {
      SgdUpdate(params, grads, options_.learning_rate, options_.weight_decay);
      return;
    }
    auto w = TensorPointers(params);
    auto g = TensorPointers(grads);
    auto m1 = TensorPointers(first_);
    auto m2 = TensorPointers(second_);
    if (w.size() != g.size() || w.size() != m1.size()) {
      throw ShapeError("Optimizer: parameter layouts differ");
    }
    const double t = static_cast<double>(steps_);
    const double correction1 = 1.0 - std::pow(options_.beta1, t);
    const double correction2 = 1.0 - std::pow(options_.beta2, t);
    const double lr = options_.learning_rate;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto wd = w[i]->data();
      auto gd = g[i]->data();
      auto a = m1[i]->data();
      auto b = m2[i]->data();
      for (std::size_t k = 0; k < wd.size(); ++k) {
        a[k] = options_.beta1 * a[k] + (1.0 - options_.beta1) * gd[k];
        b[k] = options_.beta2 * b[k] + (1.0 - options_.beta2) * gd[k] * gd[k];
        const double update = (a[k] / correction1) /
                              (std::sqrt(b[k] / correction2) + options_.adam_epsilon);
        if (options_.weight_decay != 0.0) wd[k] -= lr * options_.weight_decay * wd[k];
        wd[k] -= lr * update;
      }
    }
  }

 private:
  OptimizerOptions options_;
  P first_;
  P second_;
  std::size_t steps_ = 0;
};

}  // namespace multiie

#endif  // MULTIIE_OPTIMIZER_H_
