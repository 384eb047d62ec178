#pragma once
#include <string>
#include <vector>

namespace vdp {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
    std::string text() const;
};

// Self-contained property checks over randomized state grids with a fixed
// seed. Exceptions inside a check are caught and reported as failures.
VerifyReport run_verification();

} // namespace vdp
