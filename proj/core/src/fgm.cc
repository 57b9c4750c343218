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

#include "multiie/fgm.h"

#include <algorithm>

namespace multiie {

Matrix FgmPerturb(const Matrix& grad, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ArgumentError("FGM epsilon must be finite and >= 0, got " + std::to_string(epsilon));
  }
  Matrix out(grad.rows(), grad.cols());
  if (epsilon == 0.0) return out;
  // Rescale by the largest magnitude first so tiny or huge gradients do not
  // underflow or overflow in the sum of squares.
  double peak = 0.0;
  for (double v : grad.data()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return out;
  auto g = grad.data();
  auto o = out.data();
  for (std::size_t i = 0; i < g.size(); ++i) o[i] = g[i] / peak;
  const double norm = FrobeniusNorm(out);
  for (double& v : o) v = epsilon * (v / norm);
  return out;
}

}  // namespace multiie
