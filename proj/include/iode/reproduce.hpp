#ifndef IODE_REPRODUCE_HPP
#define IODE_REPRODUCE_HPP

#include <string>
#include <vector>

#include "iode/ode.hpp"
#include "iode/problems.hpp"

namespace iode {

struct CellCheck {
    std::string label;
    std::string got;
    std::string want;
    bool pass = false;
};

struct TableReport {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<CellCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Reference tables recomputed from scratch and compared against the published
// values embedded below. Each reproduce_* returns the rendered table plus one
// check per golden cell.

TableReport reproduce_example2(); // infinite-number product, bit-exact
TableReport reproduce_example3(); // infinitesimal Euler trace and extraction
TableReport reproduce_table1();   // one finite step vs Heun / RK4
TableReport reproduce_table2();   // Method 1.0 / Method 1.1 walk, h = 0.2
TableReport reproduce_table3(int digits = 30); // derivative recovery with rounding errors
TableReport reproduce_sec41_walkthrough();     // backward-correction worked example

TableReport reproduce(const std::string& name, int digits = 30); // dispatch by name
std::vector<std::string> reproduce_names();

} // namespace iode

#endif
