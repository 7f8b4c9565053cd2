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

#include "hessian_lab/capacity.hpp"
#include "hessian_lab/error.hpp"
#include "hessian_lab/iteration.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/orlicz.hpp"
#include "hessian_lab/params.hpp"
#include "hessian_lab/radial.hpp"
#include "hessian_lab/radial_hessian.hpp"
#include "hessian_lab/report.hpp"
#include "hessian_lab/special_fn.hpp"
#include "hessian_lab/verification.hpp"
