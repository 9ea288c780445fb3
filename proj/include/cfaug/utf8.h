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

#ifndef CFAUG_UTF8_H_
#define CFAUG_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cfaug::utf8 {

// Decodes UTF-8 into code points. Throws std::invalid_argument on malformed
// input (overlong forms, surrogates and truncated sequences included).
std::u32string Decode(std::string_view text);

std::string Encode(std::u32string_view text);

bool IsValid(std::string_view text);

// Number of code points.
std::size_t Length(std::string_view text);

// Maps character (code point) offsets to byte offsets for one string.
// All spans in the data model are character offsets; this is the bridge
// to std::string slicing.
class CharIndex {
 public:
  explicit CharIndex(std::string_view text);

  std::size_t chars() const { return starts_.size() - 1; }

  // Byte offset of character `ch`; ch == chars() maps to the byte length.
  std::size_t ByteOffset(std::size_t ch) const { return starts_[ch]; }

  // Character offset of the code point starting at byte `byte`.
  std::size_t CharOffset(std::size_t byte) const;

  std::string_view Slice(std::size_t begin, std::size_t end) const {
    return text_.substr(starts_[begin], starts_[end] - starts_[begin]);
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> starts_;
};

}  // namespace cfaug::utf8

#endif  // CFAUG_UTF8_H_
