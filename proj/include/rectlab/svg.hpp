// Copyright 2026 The rectlab Authors
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

// Deterministic SVG drawings of experiment data.

#ifndef RECTLAB_SVG_HPP_
#define RECTLAB_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "rectlab/json_io.hpp"

namespace rectlab {

// Render input, all fields optional:
//   bounds   [xmin, ymin, xmax, ymax]
//   points   [[x, y], ...]     input cloud
//   cells    [[x0, y0, x1, y1], ...]  occupied cells
//   skeleton [[x0, y0, x1, y1], ...]  skeleton faces (segments or points)
//   image    [[x, y], ...]     image cloud
//   shadows  [s0, s1, ...]     per-direction shadow measures
// Returns (file name, svg text) pairs. A missing field drops its panel and
// leaves a note in the drawing.
std::vector<std::pair<std::string, std::string>> RenderPanels(const Json& data);

}  // namespace rectlab

#endif  // RECTLAB_SVG_HPP_
