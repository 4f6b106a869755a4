#pragma once

#include <string>
#include <vector>

namespace gasket {

struct SelfCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Identities that hold exactly (or to solver precision) on small levels: Green
// function equality, the ball-family profile constants, the smoothing identity.
// Runs in a few seconds.
std::vector<SelfCheck> exact_identity_suite();

}  // namespace gasket
