// Copyright 2026 The proprank Authors.
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace proprank::io {

// Calls `handle(line_number, parsed)` for every non-blank line. Parse
// failures go to `on_error(line_number, message)` and reading continues.
void for_each_jsonl(std::istream& in,
                    const std::function<void(int, const nlohmann::json&)>& handle,
                    const std::function<void(int, const std::string&)>& on_error);

// Minimal RFC-4180 CSV row parser: quoted fields, doubled-quote escapes,
// tolerant of a trailing carriage return.
std::vector<std::string> parse_csv_row(std::string_view line);

std::string csv_escape(const std::string& field);

// FNV-1a, used for config hashes and corpus fingerprints.
uint64_t fnv1a(std::string_view bytes, uint64_t seed = 0xCBF29CE484222325ULL);
uint64_t fnv1a_mix(uint64_t hash, uint64_t value);

std::string to_hex(uint64_t value);

// Writes to `<path>.tmp` then renames, so readers never observe a
// partially written report.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace proprank::io
