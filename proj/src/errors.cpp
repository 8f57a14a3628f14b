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

#include "addrengine/errors.hpp"

namespace ae {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::malformed_word: return "malformed-word";
    case ErrorCode::size_mismatch: return "size-mismatch";
    case ErrorCode::malformed_header: return "malformed-header";
    case ErrorCode::io: return "io-error";
    case ErrorCode::mask_span: return "mask-span";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::unsupported_mode: return "unsupported-mode";
    case ErrorCode::non_divisible: return "non-divisible-extent";
    case ErrorCode::layout_overflow: return "layout-overflow";
    case ErrorCode::protocol_violation: return "protocol-violation";
    case ErrorCode::zero_hardware: return "zero-hardware-count";
    case ErrorCode::empty_seeds: return "empty-seeds";
    case ErrorCode::seed_outside: return "seed-outside-frame";
    case ErrorCode::out_of_range: return "out-of-range";
  }
  return "unknown";
}

void throw_error(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ae
