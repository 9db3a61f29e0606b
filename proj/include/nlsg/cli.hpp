#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlsg {

// Runs the nlsg command line; args[0] is the program name. Returns the exit
// status: 0 on success, 1 on a computational failure or a failed check, 2 on
// a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "random:N:D[:SEED]", "cycle:M", "cycle-loops:M", "complete-loops:N",
// "corpus:NAME", or a path to a graph file.
class Multigraph;
Multigraph resolve_graph(const std::string& source, unsigned long long default_seed);

}  // namespace nlsg
