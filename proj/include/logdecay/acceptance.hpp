#ifndef LOGDECAY_ACCEPTANCE_HPP
#define LOGDECAY_ACCEPTANCE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace logdecay::acceptance {

struct Options {
    int workers = 0;
    std::vector<int> only;  // criterion ids to run; empty = all
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
    double seconds = 0.0;
};

/// Run the verification matrix, one pass/fail line per criterion.
std::vector<CriterionResult> run_all(const Options& opt, std::ostream& log);

} // namespace logdecay::acceptance

#endif
