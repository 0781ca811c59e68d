#pragma once

#include <string>
#include <vector>

namespace fusionkit {

/// One named pass/fail check with an optional numeric residual and a witness
/// (the first violating index tuple, or the instantiated arithmetic).
struct Check {
    std::string name;
    bool passed = true;
    double residual = 0.0;
    std::vector<int> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool valid() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }

    const Check* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }
};

} // namespace fusionkit
