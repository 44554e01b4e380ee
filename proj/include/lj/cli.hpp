#pragma once

#include <string>
#include <vector>

namespace lj {

// ljc command line: parse | reduce | nf | sn | type | check-derivation |
// translate | verify. Exit codes: 0 success/holds, 1 property fails or
// untypable, 2 parse error, 3 unknown (fuel).
int cli_dispatch(std::vector<std::string> args);

}  // namespace lj
