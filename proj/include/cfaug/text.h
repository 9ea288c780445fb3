// Copyright 2026 The cfaug Authors.
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

#ifndef CFAUG_TEXT_H_
#define CFAUG_TEXT_H_

#include <string>
#include <string_view>

namespace cfaug::text {

// Letters, digits, and non-ASCII code points outside the common
// punctuation blocks.
bool IsWordChar(char32_t c);
bool IsDigit(char32_t c);
bool IsUpper(char32_t c);
bool IsLower(char32_t c);
bool IsSpace(char32_t c);

// Case folding is ASCII-only; other bytes pass through unchanged.
std::string AsciiLower(std::string_view s);

// Case-insensitive (ASCII) substring test.
bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle);

// True for abbreviations that end in a period and do not end a sentence
// ("Mr.", "Dr.", "U.S.", "e.g."). Matching is case-sensitive on the
// bundled list; dotted initialisms like "U.K." are recognized by shape.
bool IsAbbreviation(std::string_view token);

// Bundled English stopword list, queried with a lowercased word.
bool IsStopword(std::string_view lowered);
std::size_t StopwordCount();

}  // namespace cfaug::text

#endif  // CFAUG_TEXT_H_
