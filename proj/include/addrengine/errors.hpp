/*
 * Copyright 2026 The AddressEngine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ae {

// Values match ae_status in addrengine.h.
enum class ErrorCode : int {
  invalid_argument = 1,
  malformed_word = 2,
  size_mismatch = 3,
  malformed_header = 4,
  io = 5,
  mask_span = 6,
  dimension_mismatch = 7,
  unsupported_mode = 8,
  non_divisible = 9,
  layout_overflow = 10,
  protocol_violation = 11,
  zero_hardware = 12,
  empty_seeds = 13,
  seed_outside = 14,
  out_of_range = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& what);

}  // namespace ae
