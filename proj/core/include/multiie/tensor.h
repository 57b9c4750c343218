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

#ifndef MULTIIE_TENSOR_H_
#define MULTIIE_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace multiie {

using Rng = std::mt19937_64;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix Identity(std::size_t n);
  // Entries drawn uniformly from [-scale, scale].
  static Matrix Uniform(std::size_t rows, std::size_t cols, double scale, Rng& rng);
  static Matrix RowVector(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  void Fill(double value);
  bool AllFinite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double scale);

// Dense 3-D array (dim0 x dim1 x dim2), last axis fastest.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2, double fill = 0.0);

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * d1_ + j) * d2_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * d1_ + j) * d2_ + k];
  }

  // Copy of the d1 x d2 matrix at index i of the first axis.
  Matrix Slice(std::size_t i) const;
  void SetSlice(std::size_t i, const Matrix& slice);

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const Tensor3& other) const = default;

 private:
  std::size_t d0_ = 0;
  std::size_t d1_ = 0;
  std::size_t d2_ = 0;
  std::vector<double> data_;
};

Matrix MatMul(const Matrix& a, const Matrix& b);
// a^T * b without materializing the transpose.
Matrix MatMulTransA(const Matrix& a, const Matrix& b);
// a * b^T without materializing the transpose.
Matrix MatMulTransB(const Matrix& a, const Matrix& b);
Matrix Transpose(const Matrix& a);
Matrix Hadamard(const Matrix& a, const Matrix& b);

// Adds the 1 x cols row vector `bias` to every row of `m`.
void AddRowBroadcast(Matrix& m, const Matrix& bias);
// 1 x cols row of column sums.
Matrix ColumnSums(const Matrix& m);

double FrobeniusNorm(const Matrix& m);
double Dot(std::span<const double> a, std::span<const double> b);

double Sigmoid(double x);
Matrix Sigmoid(const Matrix& m);
Matrix Tanh(const Matrix& m);

// Numerically stable softmax (max-subtracted). Throws ArgumentError on empty input.
std::vector<double> Softmax(std::span<const double> v);
Matrix SoftmaxRows(const Matrix& m);
// Given y = softmax(x) and dL/dy, returns dL/dx.
std::vector<double> SoftmaxBackward(std::span<const double> y, std::span<const double> dy);

// y = x * weight + bias, with weight in x in_dim x out_dim and bias 1 x out_dim.
Matrix Affine(const Matrix& x, const Matrix& weight, const Matrix& bias);
// Accumulates dweight/dbias and returns dx for y = Affine(x, weight, bias).
Matrix AffineBackward(const Matrix& x, const Matrix& weight, const Matrix& dy, Matrix& dweight,
                      Matrix& dbias);

struct LayerNormParams {
  Matrix gain;  // 1 x d
  Matrix bias;  // 1 x d

  static LayerNormParams Init(std::size_t dim);

  template <class F>
  void ForEachTensor(F&& f) {
    f("gain", gain);
    f("bias", bias);
  }
  template <class F>
  void ForEachTensor(F&& f) const {
    f("gain", gain);
    f("bias", bias);
  }
};

struct LayerNormCache {
  Matrix normalized;
  std::vector<double> inv_std;
};

inline constexpr double kLayerNormEpsilon = 1e-5;

Matrix LayerNorm(const Matrix& x, const LayerNormParams& params, LayerNormCache* cache = nullptr);
Matrix LayerNormBackward(const LayerNormCache& cache, const LayerNormParams& params,
                         const Matrix& dy, LayerNormParams& grads);

}  // namespace multiie

#endif  // MULTIIE_TENSOR_H_
