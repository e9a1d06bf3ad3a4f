/*
 * Copyright 2026 The ktheta Authors
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

#ifndef KTHETA_KTHETA_HPP
#define KTHETA_KTHETA_HPP

#include "embedding.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "manifold.hpp"
#include "sampling.hpp"
#include "sections.hpp"
#include "series.hpp"
#include "symplectic.hpp"
#include "theta.hpp"

#endif
