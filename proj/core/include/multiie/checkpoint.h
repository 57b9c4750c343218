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

#ifndef MULTIIE_CHECKPOINT_H_
#define MULTIIE_CHECKPOINT_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "multiie/dee_model.h"
#include "multiie/see_model.h"
#include "multiie/tensor.h"

namespace multiie {

// Byte layout, all integers little-endian:
//
//   magic        4 bytes   "MIIE"
//   version      u32       kCheckpointVersion
//   meta_len     u64
//   metadata     meta_len bytes of UTF-8 JSON:
//                {"kind", "vocab", "event_types", "argument_types", "config"}
//   count        u64       number of tensor blocks
//   per block:
//     name_len   u32
//     name       name_len bytes, e.g. "decoder.layers.0.ff_w1"
//     rows       u64
//     cols       u64
//     data       rows * cols IEEE-754 binary64, row-major
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct RawCheckpoint {
  std::string metadata;
  std::map<std::string, Matrix> tensors;
};

void WriteRawCheckpoint(std::ostream& out, const std::string& metadata,
                        const std::map<std::string, const Matrix*>& tensors);
// Throws DataError on a bad magic, unsupported version, or truncated input.
RawCheckpoint ReadRawCheckpoint(std::istream& in);

void SaveSeeModel(std::ostream& out, const SeeModel& model);
void SaveDeeModel(std::ostream& out, const DeeModel& model);
// Throw DataError when the checkpoint holds the other model kind or a tensor
// is missing or mis-shaped.
SeeModel LoadSeeModel(std::istream& in);
DeeModel LoadDeeModel(std::istream& in);

}  // namespace multiie

#endif  // MULTIIE_CHECKPOINT_H_
