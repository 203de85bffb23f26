/*
 * Copyright 2026 The groupcf Authors.
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

#ifndef GROUPCF_IO_HPP_
#define GROUPCF_IO_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "groupcf/dataset.hpp"
#include "groupcf/models.hpp"
#include "groupcf/report.hpp"
#include "json.hpp"

namespace groupcf {

using Json = nlohmann::json;

// Every document carries {"format": <kind>, "version": kFormatVersion}.
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kModelFormat = "groupcf-model";
inline constexpr const char* kScalerFormat = "groupcf-scaler";
inline constexpr const char* kManifestFormat = "groupcf-manifest";
inline constexpr const char* kReportFormat = "groupcf-report";

// Throws SchemaError unless doc is an object with the given format and a
// supported version.
void check_format(const Json& doc, const std::string& format);

Json model_to_json(const Scorer& scorer, const std::vector<std::string>& feature_names);

struct LoadedModel {
  std::unique_ptr<Scorer> scorer;
  std::vector<std::string> feature_names;
};

LoadedModel model_from_json(const Json& doc);

// The scaler document holds the whole feature schema.
Json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const Json& doc);

Json report_to_json(const ExplanationReport& report);
ExplanationReport report_from_json(const Json& doc);

// Pretty-printed with sorted keys and a trailing newline, so equal documents
// are byte-identical on disk.
void write_json(const std::filesystem::path& path, const Json& doc);
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace groupcf

#endif  // GROUPCF_IO_HPP_
