#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ow/acceptance.hpp"

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
            only = std::atoi(argv[++i]);
            if (only < 1 || only > ow::criterion_count()) {
                std::fprintf(stderr, "criterion id must lie in 1..%d\n",
                             ow::criterion_count());
                return 1;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
            return 1;
        }
    }

    int failures = 0;
    auto report = [&](const ow::CriterionResult& r) {
        std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    };

    if (only) {
        report(ow::run_criterion(only));
    } else {
        for (int id = 1; id <= ow::criterion_count(); ++id)
            report(ow::run_criterion(id));
    }
    return failures ? 2 : 0;
}
