#pragma once

#include <iosfwd>

namespace uavmesh::cli {

/// Runs one `sim` command line. Exit codes: 0 success, 1 unsustained or
/// infeasible verdict, 2 usage or configuration error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uavmesh::cli
