#include "collatz/props.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "collatz/kernel.hpp"
#include "collatz/padic.hpp"
#include "collatz/realext.hpp"
#include "collatz/structure.hpp"

namespace collatz {
namespace {

constexpr std::array<std::string_view, 5> kSuites = {"syracuse", "mod3", "pipeline", "isometry", "realagree"};

PropResult syracuse_suite(std::uint64_t bound) {
    PropResult r{"syracuse", 0, std::nullopt};
    for (std::uint64_t k = 1; k <= bound; k += 2) {
        ++r.cases_checked;
        if (syracuse_step(Natural(4 * k + 1)) != syracuse_step(Natural(k))) {
            r.first_counterexample = "f(4k+1) != f(k) at k=" + std::to_string(k);
            return r;
        }
    }
    for (std::uint64_t h = 1; h <= bound; h += 2) {
        ++r.cases_checked;
        // f(2h-1) <= (3h-1)/2, compared as 2 f(2h-1) <= 3h-1 to stay exact.
        if (syracuse_step(Natural(2 * h - 1)) * Natural(2) > Natural(3 * h - 1)) {
            r.first_counterexample = "f(2h-1) > (3h-1)/2 at h=" + std::to_string(h);
            return r;
        }
    }
    const std::uint64_t h_max = std::min<std::uint64_t>(bound, 1000);
    for (std::uint64_t h = 1; h <= h_max; h += 2) {
        for (std::uint64_t p = 1; p <= 20; ++p) {
            ++r.cases_checked;
            Natural x = Natural::pow2(p) * Natural(h) - Natural(1);
            for (std::uint64_t i = 0; i + 1 < p; ++i) x = syracuse_step(x);
            Natural expected(2 * h);
            for (std::uint64_t i = 0; i + 1 < p; ++i) expected *= Natural(3);
            expected -= Natural(1);
            if (x != expected) {
                r.first_counterexample = "f^(p-1)(2^p h - 1) mismatch at h=" + std::to_string(h) +
                                         " p=" + std::to_string(p);
                return r;
            }
        }
    }
    return r;
}

PropResult mod3_suite(std::uint64_t bound) {
    PropResult r{"mod3", 0, std::nullopt};
    for (std::uint64_t k = 1; k <= bound; ++k) {
        ++r.cases_checked;
        const auto residue = pow2_minus1_mod3(k);
        if (residue != (k % 2 == 0 ? 0U : 1U)) {
            r.first_counterexample = "(2^k - 1) mod 3 = " + std::to_string(residue) + " at k=" + std::to_string(k);
            return r;
        }
    }
    return r;
}

PropResult pipeline_suite(std::uint64_t bound) {
    PropResult r{"pipeline", 0, std::nullopt};
    for (std::uint64_t n = 2; n <= bound; ++n) {
        ++r.cases_checked;
        const auto report = classify_stage(Natural(n));
        if (!report.reached_one || !report.pipeline_consistent) {
            r.first_counterexample = "stage pipeline violated at n=" + std::to_string(n);
            return r;
        }
    }
    return r;
}

PropResult isometry_suite(std::uint64_t pairs) {
    PropResult r{"isometry", 0, std::nullopt};
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<std::uint64_t> value(1, 1'000'000'000);
    std::uniform_int_distribution<std::uint64_t> shift(1, 29);
    for (std::uint64_t i = 0; i < pairs; ++i) {
        const std::uint64_t x = value(rng);
        std::uint64_t y = value(rng);
        // Every other pair shares a low residue so both sides of the
        // equivalence get exercised.
        if (i % 2 == 1) {
            const std::uint64_t m = std::uint64_t{1} << shift(rng);
            y = x % m + m * (value(rng) % (1'000'000'000 / m));
            if (y == 0) y = m;
        }
        for (std::uint64_t k = 1; k <= 32; ++k) {
            ++r.cases_checked;
            if (!isometry_check(Natural(x), Natural(y), k)) {
                r.first_counterexample = "isometry fails at x=" + std::to_string(x) + " y=" + std::to_string(y) +
                                         " k=" + std::to_string(k);
                return r;
            }
        }
    }
    return r;
}

PropResult realagree_suite(std::uint64_t bound) {
    PropResult r{"realagree", 0, std::nullopt};
    for (std::uint64_t n = 1; n <= bound; ++n) {
        ++r.cases_checked;
        const double z = static_cast<double>(n);
        const double std_int = step_standard(Natural(n)).to_double();
        const double cut_int = step_shortcut(Natural(n)).to_double();
        if (std::fabs(smooth_map(z) - std_int) > 1e-9 * (1 + std_int) ||
            std::fabs(smooth_map_shortcut(z) - cut_int) > 1e-9 * (1 + cut_int)) {
            r.first_counterexample = "smooth map disagrees at n=" + std::to_string(n);
            return r;
        }
    }
    return r;
}

}  // namespace

std::span<const std::string_view> prop_suite_names() { return kSuites; }

PropResult run_prop_suite(std::string_view suite, std::uint64_t bound) {
    if (suite == "syracuse") return syracuse_suite(bound);
    if (suite == "mod3") return mod3_suite(bound);
    if (suite == "pipeline") return pipeline_suite(bound);
    if (suite == "isometry") return isometry_suite(bound);
    if (suite == "realagree") return realagree_suite(bound);
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace collatz
