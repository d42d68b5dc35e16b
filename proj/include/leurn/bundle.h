/*
 * Copyright 2026 The LEURN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef LEURN_BUNDLE_H_
#define LEURN_BUNDLE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "leurn/data.h"
#include "leurn/model.h"
#include "leurn/similarity.h"
#include "leurn/train.h"

namespace leurn {

inline constexpr int kBundleFormatVersion = 1;

struct Provenance {
  std::uint64_t seed = 0;
  std::string metric;
  double best_val_metric = 0.0;
  std::int64_t best_epoch = -1;
  std::size_t epochs_run = 0;
  // Seconds since the epoch; SOURCE_DATE_EPOCH when set.
  std::int64_t timestamp = 0;
};

struct ModelBundle {
  LeurnConfig config;
  LeurnParams params;
  Preprocessor preprocessor;
  Schema schema;
  std::optional<EmbeddingIndex> index;
  Provenance provenance;
};

std::string bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(const std::string& text);

void save_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle(const std::string& path);

// SOURCE_DATE_EPOCH if set and valid, otherwise the current time.
std::int64_t build_timestamp();

}  // namespace leurn

#endif  // LEURN_BUNDLE_H_
