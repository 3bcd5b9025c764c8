#pragma once

#include <iosfwd>
#include <string>

#include "adcast/graph.hpp"

namespace adcast {

// Edge-list format: a header line `agents N`, then one `i j w` line per
// edge meaning a_ij = w (agent j influences agent i). Indices are 1-based;
// lines starting with `#` are comments.
SocialGraph read_graph(std::istream& in);
SocialGraph read_graph_file(const std::string& path);

void write_graph(const SocialGraph& graph, std::ostream& out);
void write_graph_file(const SocialGraph& graph, const std::string& path);

}  // namespace adcast
