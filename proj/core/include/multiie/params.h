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

#ifndef MULTIIE_PARAMS_H_
#define MULTIIE_PARAMS_H_

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "multiie/error.h"
#include "multiie/tensor.h"

// Helpers over parameter structs. A parameter struct exposes
//
//   template <class F> void ForEachTensor(F&& f);        // f(name, Matrix&)
//   template <class F> void ForEachTensor(F&& f) const;  // f(name, const Matrix&)
//
// visiting its tensors in a fixed order. Gradients use the same struct type.

namespace multiie {

// Visits the tensors of `sub` with names prefixed by "<prefix>.".
template <class P, class F>
void ForEachNested(std::string_view prefix, P& sub, F& f) {
  sub.ForEachTensor([&](std::string_view name, auto& m) {
    std::string full(prefix);
    full += '.';
    full += name;
    f(std::string_view(full), m);
  });
}

template <class P>
std::vector<Matrix*> TensorPointers(P& params) {
  std::vector<Matrix*> out;
  params.ForEachTensor([&](std::string_view, Matrix& m) { out.push_back(&m); });
  return out;
}

template <class P>
std::vector<const Matrix*> TensorPointers(const P& params) {
  std::vector<const Matrix*> out;
  params.ForEachTensor([&](std::string_view, const Matrix& m) { out.push_back(&m); });
  return out;
}

// Same shapes, all zeros.
template <class P>
P ZerosLike(const P& params) {
  P out = params;
  out.ForEachTensor([](std::string_view, Matrix& m) { m.Fill(0.0); });
  return out;
}

template <class P>
void AddInto(P& dst, const P& src, double scale = 1.0) {
  auto d = TensorPointers(dst);
  auto s = TensorPointers(src);
  if (d.size() != s.size()) throw ShapeError("AddInto: parameter layouts differ");
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto dd = d[i]->data();
    auto sd = s[i]->data();
    if (dd.size() != sd.size()) throw ShapeError("AddInto: tensor sizes differ");
    for (std::size_t k = 0; k < dd.size(); ++k) dd[k] += scale * sd[k];
  }
}

template <class P>
std::size_t ParameterCount(const P& params) {
  std::size_t n = 0;
  params.ForEachTensor([&](std::string_view, const Matrix& m) { n += m.size(); });
  return n;
}

template <class P>
bool AllFinite(const P& params) {
  bool ok = true;
  params.ForEachTensor([&](std::string_view, const Matrix& m) { ok = ok && m.AllFinite(); });
  return ok;
}

// Plain SGD with optional decoupled weight decay:
//   w <- w - lr * g - lr * weight_decay * w
template <class P>
void SgdUpdate(P& params, const P& grads, double learning_rate, double weight_decay = 0.0) {
  auto w = TensorPointers(params);
  auto g = TensorPointers(grads);
  if (w.size() != g.size()) throw ShapeError("SgdUpdate: parameter layouts differ");
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto wd = w[i]->data();
    auto gd = g[i]->data();
    for (std::size_t k = 0; k < wd.size(); ++k) {
      if (weight_decay != 0.0) wd[k] -= learning_rate * weight_decay * wd[k];
      wd[k] -= learning_rate * gd[k];
    }
  }
}

}  // namespace multiie

#endif  // MULTIIE_PARAMS_H_
