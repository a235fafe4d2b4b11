#pragma once

#include <iosfwd>
#include <string>

#include "qtrio/config.hpp"

namespace qtrio {

/// Renders an (n, x)-indexed CSV value table (columns n, x, value) for one
/// of the function families. `fn` is one of: qracah, wilson, w, w-partner,
/// r1, h1, r3. `params_json` carries the parameters and an optional grid,
/// e.g. {"params": {"q": "3/5", ...}, "grid": {"n": [0, 4], "x": [0, 4]}}.
void render_table(const std::string& fn, const std::string& params_json,
                  Mode mode, unsigned float_bits, std::ostream& os);

}  // namespace qtrio
