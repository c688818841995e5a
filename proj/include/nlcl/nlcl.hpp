/* Copyright 2026 The nlcl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NLCL_NLCL_HPP
#define NLCL_NLCL_HPP

#include "nlcl/geometry.hpp"
#include "nlcl/fields.hpp"
#include "nlcl/kernels.hpp"
#include "nlcl/nonlocal.hpp"
#include "nlcl/transport.hpp"
#include "nlcl/models.hpp"
#include "nlcl/io.hpp"
#include "nlcl/simulator.hpp"

#endif  // NLCL_NLCL_HPP
