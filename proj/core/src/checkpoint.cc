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

#include "multiie/checkpoint.h"

#include <bit>
#include <cstring>

#include <json.hpp>

#include "multiie/error.h"

namespace multiie {
namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'M', 'I', 'I', 'E'};

template <class T>
T ToLittle(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <class T>
void Put(std::ostream& out, T v) {
  v = ToLittle(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T Get(std::istream& in, const char* what) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw DataError(std::string("checkpoint truncated while reading ") + what);
  }
  return ToLittle(v);
}

std::string GetBytes(std::istream& in, std::uint64_t n, const char* what) {
  constexpr std::uint64_t kLimit = 1ull << 32;
  if (n > kLimit) throw DataError(std::string("checkpoint ") + what + " length implausible");
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), static_cast<std::streamsize>(n))) {
    throw DataError(std::string("checkpoint truncated while reading ") + what);
  }
  return s;
}

template <class P>
std::map<std::string, const Matrix*> Named(const P& params) {
  std::map<std::string, const Matrix*> out;
  params.ForEachTensor(
      [&](std::string_view name, const Matrix& m) { out.emplace(std::string(name), &m); });
  return out;
}

template <class P>
void Fill(P& params, std::map<std::string, Matrix>& tensors) {
  params.ForEachTensor([&](std::string_view name, Matrix& m) {
    auto it = tensors.find(std::string(name));
    if (it == tensors.end()) throw DataError("checkpoint lacks tensor '" + std::string(name) + "'");
    if (it->second.rows() != m.rows() || it->second.cols() != m.cols()) {
      throw DataError("checkpoint tensor '" + std::string(name) + "' is " +
                      std::to_string(it->second.rows()) + "x" + std::to_string(it->second.cols()) +
                      ", expected " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    m = std::move(it->second);
  });
}

template <class Model>
std::string Metadata(const char* kind, const Model& model) {
  json meta;
  meta["kind"] = kind;
  meta["vocab"] = model.vocab.tokens();
  meta["event_types"] = model.event_types.names();
  meta["argument_types"] = model.argument_types.names();
  meta["config"] = model.config.ToMap();
  return meta.dump();
}

template <class Model>
void ApplyMetadata(const std::string& text, const char* kind, Model& model) {
  json meta;
  try {
    meta = json::parse(text);
    if (meta.at("kind").get<std::string>() != kind) {
      throw DataError("checkpoint holds a '" + meta.at("kind").get<std::string>() +
                      "' model, expected '" + kind + "'");
    }
    const auto vocab = meta.at("vocab").get<std::vector<std::string>>();
    if (vocab.empty() || vocab.front() != Vocabulary::kUnkToken) {
      throw DataError("checkpoint vocabulary does not start with the unknown token");
    }
    for (const auto& t : vocab) model.vocab.Add(t);
    model.event_types = LabelSpace(meta.at("event_types").get<std::vector<std::string>>());
    model.argument_types = LabelSpace(meta.at("argument_types").get<std::vector<std::string>>());
    for (const auto& [key, value] : meta.at("config").items()) {
      model.config.Set(key, value.template get<std::string>());
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  }
}

}  // namespace

void WriteRawCheckpoint(std::ostream& out, const std::string& metadata,
                        const std::map<std::string, const Matrix*>& tensors) {
  out.write(kMagic, sizeof(kMagic));
  Put<std::uint32_t>(out, kCheckpointVersion);
  Put<std::uint64_t>(out, metadata.size());
  out.write(metadata.data(), static_cast<std::streamsize>(metadata.size()));
  Put<std::uint64_t>(out, tensors.size());
  for (const auto& [name, m] : tensors) {
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    Put<std::uint64_t>(out, m->rows());
    Put<std::uint64_t>(out, m->cols());
    for (double v : m->data()) Put<double>(out, v);
  }
  if (!out) throw Error("checkpoint write failed");
}

RawCheckpoint ReadRawCheckpoint(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw DataError("not a checkpoint file (bad magic)");
  }
  const auto version = Get<std::uint32_t>(in, "version");
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  RawCheckpoint raw;
  raw.metadata = GetBytes(in, Get<std::uint64_t>(in, "metadata length"), "metadata");
  const auto count = Get<std::uint64_t>(in, "tensor count");
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string name = GetBytes(in, Get<std::uint32_t>(in, "name length"), "tensor name");
    const auto rows = Get<std::uint64_t>(in, "rows");
    const auto cols = Get<std::uint64_t>(in, "cols");
    if (cols != 0 && rows > (1ull << 32) / cols) {
      throw DataError("checkpoint tensor '" + name + "' shape implausible");
    }
    Matrix m(rows, cols);
    for (double& v : m.data()) v = Get<double>(in, "tensor data");
    raw.tensors.emplace(std::move(name), std::move(m));
  }
  return raw;
}

void SaveSeeModel(std::ostream& out, const SeeModel& model) {
  WriteRawCheckpoint(out, Metadata("see", model), Named(model.params));
}

void SaveDeeModel(std::ostream& out, const DeeModel& model) {
  WriteRawCheckpoint(out, Metadata("dee", model), Named(model.params));
}

SeeModel LoadSeeModel(std::istream& in) {
  RawCheckpoint raw = ReadRawCheckpoint(in);
  SeeModel model;
  ApplyMetadata(raw.metadata, "see", model);
  Rng shapes(0);
  model.params = SeeParams::Random(model.vocab.size(), model.event_types.size(),
                                   model.argument_types.size(), model.config, shapes);
  Fill(model.params, raw.tensors);
  return model;
}

DeeModel LoadDeeModel(std::istream& in) {
  RawCheckpoint raw = ReadRawCheckpoint(in);
  DeeModel model;
  ApplyMetadata(raw.metadata, "dee", model);
  Rng shapes(0);
  model.params =
      DeeParams::Random(model.vocab.size(), model.argument_types.size(), model.config, shapes);
  Fill(model.params, raw.tensors);
  return model;
}

}  // namespace multiie
