// Copyright 2026 The viewbayes Authors
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

#ifndef VIEWBAYES_PROCEDURAL_HPP
#define VIEWBAYES_PROCEDURAL_HPP

#include <optional>
#include <string>
#include <string_view>

#include "viewbayes/geometry.hpp"

namespace viewbayes {

/// Subdivided icosahedron with all vertices on the unit sphere.
/// Level 0 has 20 faces, each level multiplies that by four.
Mesh make_icosphere(int subdivisions);

/// Axis-aligned cube with corners at (+-1, +-1, +-1).
Mesh make_cube();

/// Extruded L-shaped profile. No rotational or mirror symmetry about the
/// ring axis, so different ring angles give distinct silhouettes.
Mesh make_lbracket();

/// Generator lookup by name: "icosphere:<level>", "cube", "lbracket".
/// Returns nullopt for names that are not generators.
std::optional<Mesh> procedural_mesh(std::string_view name);

/// Resolves a mesh source (generator name or OBJ file path) and normalizes it
/// into the unit sphere.
Mesh resolve_mesh(const std::string& source);

}  // namespace viewbayes

#endif  // VIEWBAYES_PROCEDURAL_HPP
