#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "meshtape/skeleton.hpp"

namespace meshtape {

// Renames applied to joint names as they are parsed, before the
// required-joint check. Maps input name -> canonical name.
using JointNameMap = std::map<std::string, std::string>;

// Parses {"joints": {"<name>": [x, y, z], ...}}. All four joints from
// kRequiredJoints must be present (after renaming); extra joints are
// preserved. Throws ParseError on malformed JSON, a malformed joint
// entry, a rename collision, or a missing required joint
// ("missing joint <name>").
Skeleton parse_skeleton(std::istream& in, const JointNameMap& rename = {});
Skeleton parse_skeleton(const std::string& text,
                        const JointNameMap& rename = {});
Skeleton read_skeleton_file(const std::string& path,
                            const JointNameMap& rename = {});

// Parses a flat JSON object {"<from>": "<to>", ...}.
JointNameMap read_joint_name_map_file(const std::string& path);

// Writes joints sorted by name with %.17g coordinates (bit-exact
// round-trip through parse_skeleton).
void write_skeleton(const Skeleton& skeleton, std::ostream& out);
void write_skeleton_file(const Skeleton& skeleton, const std::string& path);

}  // namespace meshtape
