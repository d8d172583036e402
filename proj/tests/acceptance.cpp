// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <iostream>

#include "topo/verify.hpp"

int main()
{
    topo::verify::Options opt;
    int failed = 0;
    topo::verify::run_all(opt, {}, [&](topo::verify::CriterionResult const & r) {
        std::cout << topo::verify::format(r) << std::flush;
        failed += !r.pass;
    });
    std::cout << (failed ? "FAILED: " : "all criteria pass: ") << failed << " of "
              << topo::verify::criteria().size() << " criteria red\n";
    return failed ? 1 : 0;
}
