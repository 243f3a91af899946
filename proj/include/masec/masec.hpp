// SPDX-License-Identifier: Apache-2.0
//
// masec - secrecy-rate optimization for movable-antenna linear arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MASEC_MASEC_HPP
#define MASEC_MASEC_HPP

#include "array_core.hpp"
#include "beamformer.hpp"
#include "positions.hpp"
#include "solver.hpp"
#include "oracle.hpp"

#endif
