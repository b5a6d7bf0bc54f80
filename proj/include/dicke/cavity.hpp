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

#pragma once

namespace dicke {

/// Single cavity mode: detuning omega0 > 0 and decay kappa >= 0
/// (the same doubled Lindblad convention as the atoms).
struct CavityParams {
  double omega0 = 1.0;
  double kappa = 0.0;
};

/// Throws InvalidArgument unless omega0 > 0, kappa >= 0, both finite.
void validate(const CavityParams& cavity);

}  // namespace dicke
