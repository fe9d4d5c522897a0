#pragma once

#include <string>
#include <vector>

#include "polyg/asymptotics.hpp"

// Verification suites: each law measures one asymptotic statement or
// exact identity and reports observed error against its pinned tolerance.
// The acceptance runner executes the full-scale criteria; the named suites
// back the CLI `verify` command (with an optional reduced-scale mode).

namespace polyg::verify {

using Report = asymptotics::VerificationReport;

struct Options {
    bool fast = false;  // reduced m-grid (<= 200) for interactive runs
};

// suites: specfun, kernels, bulk, boundary, exterior, dpp, transforms
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);  // also accepts "all"
std::vector<Report> run_suite(const std::string& name, const Options& opt = {});

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::vector<Report> details;
};

// The eleven acceptance criteria at full scale.
std::vector<CriterionResult> run_acceptance();

}  // namespace polyg::verify
