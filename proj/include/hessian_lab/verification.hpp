// Copyright 2026 The hessian-lab Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace hessian_lab {

/// Outcome of an inequality check: the worst margin (rhs - lhs) seen and
/// the scale the tolerance is measured against.
struct VerificationRecord {
  std::string name;
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  double tolerance = 0.0;
  std::map<std::string, double> details;

  /// Folds one sampled margin into the record.
  void observe(double m) {
    if (std::isnan(m)) {
      margin = m;
      pass = false;
      return;
    }
    margin = std::min(margin, m);
  }

  /// Sets `pass` from margin >= -tolerance * scale.
  VerificationRecord& finish() {
    if (std::isinf(margin) && margin > 0) margin = 0.0;
    pass = !std::isnan(margin) && margin >= -tolerance * scale;
    return *this;
  }
};

}  // namespace hessian_lab
