#pragma once

#include <iosfwd>
#include <string>

#include "meshtape/mesh.hpp"

namespace meshtape {

// Wavefront OBJ subset: `v x y z` and `f i j k ...` records. Face indices
// are 1-based; negative indices count back from the vertices defined so
// far; `i/t/n` slash forms are accepted with only the vertex index used.
// Faces with more than 3 vertices are fan-triangulated from their first
// vertex. Comments and unknown record types are ignored.
//
// Throws ParseError (with 1-based line number) on non-numeric or
// non-finite coordinates, indices out of range or zero, and faces with
// fewer than 3 vertices.
Mesh parse_obj(std::istream& in);
Mesh parse_obj(const std::string& text);
Mesh read_obj_file(const std::string& path);

// Writes %.17g coordinates so parse_obj(write_obj(mesh)) reproduces the
// vertex coordinates bit-exactly.
void write_obj(const Mesh& mesh, std::ostream& out);
void write_obj_file(const Mesh& mesh, const std::string& path);

}  // namespace meshtape
