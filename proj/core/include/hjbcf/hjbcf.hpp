/*
 Copyright 2026 The hjbcf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef HJBCF_HJBCF_HPP
#define HJBCF_HJBCF_HPP

#include "hjbcf/dynamics.hpp"
#include "hjbcf/errors.hpp"
#include "hjbcf/linalg.hpp"
#include "hjbcf/metrics.hpp"
#include "hjbcf/regulation.hpp"
#include "hjbcf/simulation.hpp"
#include "hjbcf/sola.hpp"
#include "hjbcf/tracking.hpp"

#endif // HJBCF_HJBCF_HPP
