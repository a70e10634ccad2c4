// Full-scale acceptance sweep. Each numbered line states one contract the
// library must meet, at the trial counts and dimension ranges it is specified
// for; the binary prints PASS or FAIL per line and exits nonzero if anything
// failed. Runs the same seeded check engine the selftest subcommand uses.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "isofactor/selftest.hpp"

using namespace isofactor;

namespace {

int failures = 0;

void report(int index, const char* title, const CheckResult& r,
            const std::string& extra = "") {
    if (!r.pass) ++failures;
    std::printf("[%s] %d. %s: %s%s\n", r.pass ? "PASS" : "FAIL", index, title,
                r.detail.c_str(), extra.c_str());
    std::fflush(stdout);
}

} // namespace

int main() {
    const uint64_t seed = 2026;
    const Tols tols{};

    {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r = check_su_involution_length(3, 8, 200, seed, tols);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (secs >= 30.0) {
            r.pass = false;
            r.detail += "; over the 30s budget";
        }
        char timed[32];
        std::snprintf(timed, sizeof timed, ", %.1fs", secs);
        report(1, "special unitary involution count bound", r, timed);
    }

    report(2, "diagonal two-reversible split closed form",
           check_reversible_diagonal_split(2, 8, 50, seed, tols));

    report(3, "involution plus mandated reflection per class",
           check_isometry_reflection_table(2, 4, 100, seed, tols));

    report(4, "Hermitian witness separates involutions",
           check_involution_witness(2, 4, 67, seed, tols));

    {
        CheckResult split = check_antiholo_split(2, 4, 50, seed, tols);
        CheckResult comm = check_antiholo_commutator(2, 4, 5, seed, tols);
        CheckResult joint = split;
        joint.pass = split.pass && comm.pass;
        joint.detail = "split " + split.detail + "; commutator " + comm.detail;
        report(5, "anti-holomorphic split and commutator", joint);
    }

    report(6, "commutator split of reversible special unitaries",
           check_su_commutator(2, 8, 200, seed, tols));

    {
        CheckResult fuzz = check_fuzzed_rejection(2, 4, 25, seed, tols);
        CheckResult round = check_classify_roundtrip(2, 4, 100, seed, tols);
        CheckResult joint = fuzz;
        joint.pass = fuzz.pass && round.pass;
        joint.detail = "fuzz " + fuzz.detail + "; labels " + round.detail;
        report(7, "negative controls and label round-trip", joint);
    }

    {
        SelftestConfig cfg;
        const std::string a = render_report(run_selftest(cfg), cfg);
        const std::string b = render_report(run_selftest(cfg), cfg);
        CheckResult r{"determinism", a == b && !a.empty(),
                      "two full selftest reports, " +
                          std::to_string(a.size()) + " bytes each"};
        if (!r.pass) r.detail += "; reports differ";
        report(8, "byte-identical selftest reports", r);
    }

    if (failures == 0)
        std::printf("all 8 acceptance checks passed\n");
    else
        std::printf("%d of 8 acceptance checks failed\n", failures);
    return failures == 0 ? 0 : 1;
}
