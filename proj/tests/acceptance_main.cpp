// One line per acceptance criterion; exits nonzero if any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "validation.hpp"

int main(int argc, char** argv) {
    vstool::ValidationOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            opt.quick = true;
        } else if (arg == "--workers" && i + 1 < argc) {
            opt.workers = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
        } else {
            std::cerr << "usage: vixsmile_acceptance [--quick] [--workers N]\n";
            return 2;
        }
    }
    int failed = 0;
    const auto results = vstool::run_validation(opt, [&](const vstool::CriterionResult& r) {
        std::cout << vstool::format_result(r) << '\n';
        for (const std::string& d : r.details) {
            std::cout << "       " << d << '\n';
        }
        std::cout.flush();
        failed += r.passed ? 0 : 1;
    });
    std::cout << "acceptance: " << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
