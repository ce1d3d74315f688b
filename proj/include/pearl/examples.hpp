// Shipped instance bundles: lookup by name, loading and end-to-end checks.
#pragma once

#include "pearl/report.hpp"
#include "pearl/serialize.hpp"

#include <string>
#include <vector>

namespace pearl {

// $PEARL_FIXTURES when set, else the build-time fixture directory.
std::string fixture_dir();

// "rpn(4)" -> "rpn_4"; plain names pass through. Throws ArgumentError on
// characters outside [A-Za-z0-9_()].
std::string fixture_stem(const std::string& name);
// "rpn_4" -> "rpn(4)".
std::string display_name(const std::string& stem);

// Display names of every bundle in the fixture directory, sorted.
std::vector<std::string> list_examples();

// Throws ArgumentError for an unknown name, ParseError for a bad file.
InstanceBundle load_example(const std::string& name);
InstanceBundle load_bundle_file(const std::string& path);

// Validation, homology, dichotomy, axioms and golden comparison, one item per check.
Report verify_bundle(const InstanceBundle& b);
Report verify_example(const std::string& name);

}  // namespace pearl
