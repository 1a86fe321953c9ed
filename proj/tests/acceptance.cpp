// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

#include "qwk/correlators.hpp"
#include "qwk/parallel.hpp"
#include "qwk/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace qwk;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail, double seconds) {
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(), seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void report(int id, const std::string& name, const VerifyReport& r) {
    std::string detail = std::to_string(r.comparisons.size()) + " comparisons";
    if (auto f = r.first_failure()) detail += "; first failure " + f->key + ": " + f->lhs + " vs " + f->rhs;
    report(id, name, r.passed() && !r.comparisons.empty(), detail, r.seconds);
}

void report_all(int id, const std::string& name, const std::vector<VerifyReport>& rs) {
    VerifyReport merged{name, {}, {}, 0};
    for (const auto& r : rs) {
        merged.seconds += r.seconds;
        for (const auto& c : r.comparisons) merged.comparisons.push_back({r.suite + " " + c.key, c.lhs, c.rhs, c.equal});
    }
    report(id, name, merged);
}

struct Golden {
    int g;
    std::vector<int> d;
    const char* value;
};

}  // namespace

int main() {
    int jobs = default_jobs();

    {
        auto t0 = std::chrono::steady_clock::now();
        const std::vector<Golden> golden{
            {0, {0, 0, 0}, "1"},  {1, {0, 1}, "1/24"},   {1, {2}, "1/24"},       {1, {0, 3}, "1/24"},
            {1, {1, 2}, "1/24"},  {2, {6}, "1/1920"},    {2, {0, 7}, "1/1920"},  {2, {1, 6}, "1/480"},
            {2, {4}, "1/576"},    {2, {0, 5}, "1/576"},  {2, {1, 4}, "1/192"},   {2, {2}, "7/5760"},
            {2, {0, 3}, "7/5760"}, {2, {1, 2}, "7/1920"},
        };
        std::string detail;
        bool ok = true;
        for (const auto& k : golden) {
            Rat got = correlator(k.d, k.g);
            if (got != rat_from_string(k.value)) {
                ok = false;
                std::string d;
                for (int x : k.d) d += (d.empty() ? "" : ",") + std::to_string(x);
                detail += (detail.empty() ? "" : "; ") + std::string("g=") + std::to_string(k.g) + " d=[" + d +
                          "] expected " + k.value + " got " + to_string(got);
            }
        }
        if (ok) detail = std::to_string(golden.size()) + " values";
        report(1, "golden correlator values", ok, detail,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }

    GridBounds grid{2, 3, -1};
    report(2, "engine equals Hurwitz closed form", verify_main_theorem(grid, jobs));
    report(3, "string equation", verify_string(grid, jobs));
    report(4, "level structure vanishing", verify_levels(grid, jobs));
    report(5, "tau symmetry and integrability", verify_tau_structure(4, 3));
    report(6, "bracket against truncated Weyl algebra", verify_bracket_oracle(20240601, 60, 5));
    report(7, "Ehrhart convolution oracle", verify_ehrhart(4, 6, 15, 0));
    report(8, "Hurwitz closed form against factorization counts", verify_hurwitz_oracle(5, 2));
    report(9, "identity suite", verify_identities(8, jobs));
    report(10, "Hamiltonian sanity", verify_hamiltonians(6));

    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
