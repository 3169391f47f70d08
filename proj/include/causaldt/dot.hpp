#pragma once

#include <string>

#include "causaldt/structural.hpp"

namespace causaldt {

/// Display label: mapping names such as "c_of_t_g" render as "c(t, g)",
/// everything else as itself.
std::string display_label(const std::string& name);

/// Graphviz text. Decisions are boxes, chance nodes ellipses and deterministic
/// nodes double ellipses labelled "x := f(parents)". Nodes appear in
/// declaration order, arcs grouped by child.
std::string export_dot(const InfluenceDiagram& diagram);

}  // namespace causaldt
