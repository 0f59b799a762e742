#pragma once

// Static SVG renderings. Output is a pure function of the configuration, so
// repeated runs are byte-identical.

#include <string>

#include "cantor/campaign.hpp"

namespace cantor {

/// Rows Lambda_0 ... Lambda_depth of the invariant cover; row n has 2^n bars.
std::string render_cantor_bars(const RunConfig& c);

/// The map F on [0,1] with the escape region between the branch images.
std::string render_logistic(const RunConfig& c);

/// Level nodes S, D1, ... joined by homeomorphism arrows h^k, each level with
/// its contraction loops f_j^k.
std::string render_hierarchy(const RunConfig& c);

/// The dendrite with vertices shaded by fiber size at address depth 2L+4, one
/// panel per hierarchy level.
std::string render_dendrite(const RunConfig& c);

} // namespace cantor
