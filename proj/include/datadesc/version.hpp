// Copyright 2026 The Datadesc Authors
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

#ifndef DATADESC_VERSION_HPP_
#define DATADESC_VERSION_HPP_

namespace datadesc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kLanguageId = "datadesc";
inline constexpr const char* kFileExtension = ".ddesc";

}  // namespace datadesc

#endif  // DATADESC_VERSION_HPP_
