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

#ifndef MULTIIE_FGM_H_
#define MULTIIE_FGM_H_

#include <cmath>
#include <string>
#include <utility>

#include "multiie/error.h"
#include "multiie/optimizer.h"
#include "multiie/params.h"
#include "multiie/tensor.h"

namespace multiie {

// r_adv = epsilon * g / ||g||_F over the whole embedding sequence. A zero
// gradient gives a zero perturbation. Throws ArgumentError for a negative or
// non-finite epsilon.
Matrix FgmPerturb(const Matrix& grad, double epsilon);

// What a loss callback reports: the scalar loss and dL/dx for the embedding
// sequence it was given.
struct LossAndInputGrad {
  double loss = 0.0;
  Matrix dx;
};

struct FgmStepResult {
  double clean_loss = 0.0;
  double adversarial_loss = 0.0;  // 0 when epsilon == 0
};

// One adversarial training step.
//
// `loss_fn(x, grads)` evaluates the loss at embedding sequence x with the
// current params, adds parameter gradients into `grads` (including any
// embedding-table scatter of dx), and returns the loss with dL/dx.
//
// The clean pass runs at x. For epsilon > 0 a second pass runs at
// x + FgmPerturb(dx, epsilon) and its gradients are summed with the clean
// ones. x itself is never modified. Then one optimizer step is applied.
// Throws TrainingError on a non-finite loss.
template <class P, class LossFn>
FgmStepResult FgmStep(P& params, const Matrix& x, LossFn&& loss_fn, double epsilon,
                      Optimizer<P>& optimizer) {
  P grads = ZerosLike(params);
  FgmStepResult result;
  LossAndInputGrad clean = loss_fn(x, grads);
  if (!std::isfinite(clean.loss)) {
    throw TrainingError("non-finite clean loss " + std::to_string(clean.loss) + " on a " +
                        std::to_string(x.rows()) + "-token input");
  }
  result.clean_loss = clean.loss;
  if (epsilon > 0.0) {
    Matrix adversarial = x + FgmPerturb(clean.dx, epsilon);
    LossAndInputGrad adv = loss_fn(adversarial, grads);
    if (!std::isfinite(adv.loss)) {
      throw TrainingError("non-finite adversarial loss " + std::to_string(adv.loss) +
                          " (clean loss " + std::to_string(clean.loss) + ", epsilon " +
                          std::to_string(epsilon) + ")");
    }
    result.adversarial_loss = adv.loss;
  }
  optimizer.Step(params, std::move(grads));
  return result;
}

}  // namespace multiie

#endif  // MULTIIE_FGM_H_
