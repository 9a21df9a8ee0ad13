// Copyright 2026 The Bregman Toolkit Authors
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

#include "bregman/certifier.hpp"
#include "bregman/clustering.hpp"
#include "bregman/dataset.hpp"
#include "bregman/divergence.hpp"
#include "bregman/domain.hpp"
#include "bregman/generator.hpp"
#include "bregman/information.hpp"
#include "bregman/random.hpp"
#include "bregman/types.hpp"
