// Copyright 2026 The dicke-critic Authors
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

#include "dicke/error.hpp"

namespace dicke {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NonHermitian: return "non-Hermitian operator";
    case ErrorKind::NegativeRate: return "negative rate";
    case ErrorKind::DegenerateSteadyState: return "degenerate steady state";
    case ErrorKind::NotIntegrable: return "not integrable";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::NoClosedForm: return "no closed form";
    case ErrorKind::StepUnderflow: return "step-size underflow";
    case ErrorKind::DimensionGuard: return "dimension guard exceeded";
    case ErrorKind::Io: return "i/o error";
  }
  return "unknown";
}

}  // namespace dicke
