// Copyright 2026 The mmo Authors
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

#ifndef MMO_MMO_HPP
#define MMO_MMO_HPP

#include "mmo/core_model.hpp"
#include "mmo/pareto.hpp"
#include "mmo/knapsack.hpp"
#include "mmo/search.hpp"
#include "mmo/ilp.hpp"
#include "mmo/oracle.hpp"
#include "mmo/generator.hpp"
#include "mmo/evaluate.hpp"

#endif  // MMO_MMO_HPP
