#include <iostream>

#include "gammaext/acceptance.hpp"

int main()
{
    bool ok = true;
    gammaext::run_acceptance([&](const gammaext::CriterionResult& r) {
        std::cout << gammaext::format_result(r) << std::endl;
        ok = ok && r.passed;
    });
    return ok ? 0 : 1;
}
