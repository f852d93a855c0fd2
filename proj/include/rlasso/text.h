// Copyright 2026 The rlasso Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the file formats: 17-significant-digit
// floats, RFC 4180 CSV fields, and whole-file reads and writes that report
// the path on failure.

#ifndef RLASSO_TEXT_H_
#define RLASSO_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace rlasso {

// printf("%.17g"), which round-trips every finite double.
std::string format_double(double value);

// Strict parse of a whole field; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

// Splits CSV text into records of fields. Accepts quoted fields with embedded
// separators and doubled quotes, and LF or CRLF record ends.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string read_text_file(const std::string& path);
// Writes bytes verbatim (no newline translation); throws std::runtime_error
// naming the path on failure.
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace rlasso

#endif  // RLASSO_TEXT_H_
