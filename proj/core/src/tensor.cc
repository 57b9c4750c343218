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

#include "multiie/tensor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "multiie/error.h"

namespace multiie {
namespace {

std::string Dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + Dims(a) + " vs " + Dims(b));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("Matrix: data length " + std::to_string(data_.size()) + " != " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Matrix::FromRows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Uniform(std::size_t rows, std::size_t cols, double scale, Rng& rng) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix m(rows, cols);
  for (double& v : m.data_) v = dist(rng);
  return m;
}

Matrix Matrix::RowVector(std::span<const double> values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

void Matrix::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  RequireSameShape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  RequireSameShape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double scale) { return a *= scale; }

Tensor3::Tensor3(std::size_t d0, std::size_t d1, std::size_t d2, double fill)
    : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, fill) {}

Matrix Tensor3::Slice(std::size_t i) const {
  const std::size_t n = d1_ * d2_;
  return Matrix(d1_, d2_, std::vector<double>(data_.begin() + i * n, data_.begin() + (i + 1) * n));
}

void Tensor3::SetSlice(std::size_t i, const Matrix& slice) {
  if (slice.rows() != d1_ || slice.cols() != d2_) {
    throw ShapeError("Tensor3::SetSlice: slice is " + Dims(slice));
  }
  std::copy(slice.data().begin(), slice.data().end(), data_.begin() + i * d1_ * d2_);
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("MatMul: " + Dims(a) + " times " + Dims(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

Matrix MatMulTransA(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("MatMulTransA: " + Dims(a) + "^T times " + Dims(b));
  }
  Matrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto a_row = a.row(k);
    auto b_row = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a_row[i];
      if (aki == 0.0) continue;
      auto out_row = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aki * b_row[j];
    }
  }
  return out;
}

Matrix MatMulTransB(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("MatMulTransB: " + Dims(a) + " times " + Dims(b) + "^T");
  }
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = Dot(a.row(i), b.row(j));
  }
  return out;
}

Matrix Transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Matrix Hadamard(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "Hadamard");
  Matrix out = a;
  auto o = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bd[i];
  return out;
}

void AddRowBroadcast(Matrix& m, const Matrix& bias) {
  if (bias.rows() != 1 || bias.cols() != m.cols()) {
    throw ShapeError("AddRowBroadcast: bias " + Dims(bias) + " for " + Dims(m));
  }
  auto b = bias.row(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += b[j];
  }
}

Matrix ColumnSums(const Matrix& m) {
  Matrix out(1, m.cols());
  auto o = out.row(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) o[j] += r[j];
  }
  return out;
}

double FrobeniusNorm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("Dot: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Matrix Sigmoid(const Matrix& m) {
  Matrix out = m;
  for (double& v : out.data()) v = Sigmoid(v);
  return out;
}

Matrix Tanh(const Matrix& m) {
  Matrix out = m;
  for (double& v : out.data()) v = std::tanh(v);
  return out;
}

std::vector<double> Softmax(std::span<const double> v) {
  if (v.empty()) throw ArgumentError("Softmax: empty input");
  const double max = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - max);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
  return out;
}

Matrix SoftmaxRows(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto s = Softmax(m.row(i));
    std::copy(s.begin(), s.end(), out.row(i).begin());
  }
  return out;
}

std::vector<double> SoftmaxBackward(std::span<const double> y, std::span<const double> dy) {
  const double inner = Dot(y, dy);
  std::vector<double> dx(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = y[i] * (dy[i] - inner);
  return dx;
}

Matrix Affine(const Matrix& x, const Matrix& weight, const Matrix& bias) {
  Matrix y = MatMul(x, weight);
  AddRowBroadcast(y, bias);
  return y;
}

Matrix AffineBackward(const Matrix& x, const Matrix& weight, const Matrix& dy, Matrix& dweight,
                      Matrix& dbias) {
  dweight += MatMulTransA(x, dy);
  dbias += ColumnSums(dy);
  return MatMulTransB(dy, weight);
}

LayerNormParams LayerNormParams::Init(std::size_t dim) {
  return {Matrix(1, dim, 1.0), Matrix(1, dim, 0.0)};
}

Matrix LayerNorm(const Matrix& x, const LayerNormParams& params, LayerNormCache* cache) {
  const std::size_t d = x.cols();
  if (params.gain.cols() != d || params.bias.cols() != d) {
    throw ShapeError("LayerNorm: params for dim " + std::to_string(params.gain.cols()) +
                     ", input " + Dims(x));
  }
  Matrix normalized(x.rows(), d);
  std::vector<double> inv_std(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    inv_std[i] = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    auto n = normalized.row(i);
    for (std::size_t j = 0; j < d; ++j) n[j] = (r[j] - mean) * inv_std[i];
  }
  Matrix y(x.rows(), d);
  auto g = params.gain.row(0);
  auto b = params.bias.row(0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto n = normalized.row(i);
    auto o = y.row(i);
    for (std::size_t j = 0; j < d; ++j) o[j] = g[j] * n[j] + b[j];
  }
  if (cache != nullptr) {
    cache->normalized = std::move(normalized);
    cache->inv_std = std::move(inv_std);
  }
  return y;
}

Matrix LayerNormBackward(const LayerNormCache& cache, const LayerNormParams& params,
                         const Matrix& dy, LayerNormParams& grads) {
  const Matrix& xhat = cache.normalized;
  const std::size_t d = xhat.cols();
  auto g = params.gain.row(0);
  auto dg = grads.gain.row(0);
  auto db = grads.bias.row(0);
  Matrix dx(xhat.rows(), d);
  std::vector<double> dxhat(d);
  for (std::size_t i = 0; i < xhat.rows(); ++i) {
    auto n = xhat.row(i);
    auto dyr = dy.row(i);
    double mean_dxhat = 0.0;
    double mean_dxhat_xhat = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dg[j] += dyr[j] * n[j];
      db[j] += dyr[j];
      dxhat[j] = dyr[j] * g[j];
      mean_dxhat += dxhat[j];
      mean_dxhat_xhat += dxhat[j] * n[j];
    }
    mean_dxhat /= static_cast<double>(d);
    mean_dxhat_xhat /= static_cast<double>(d);
    auto out = dx.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      out[j] = cache.inv_std[i] * (dxhat[j] - mean_dxhat - n[j] * mean_dxhat_xhat);
    }
  }
  return dx;
}

}  // namespace multiie
