#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wvamp::cli {

// Stable process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Figure-1 reproduction constants: coupling, meter width, the three preselection
// phases and the four postselection angles (as fractions of pi/2).
inline constexpr double kFigureCoupling = 1e-4;
inline constexpr double kFigureSigma = 1.0;
inline constexpr double kFigureThetas[] = {2e-4, 0.0, -2e-4};
inline constexpr const char* kFigureThetaLabels[] = {"pos", "zero", "neg"};
inline constexpr double kFigureChiFractions[] = {1.0, 0.5, 0.00007, 0.0};
inline constexpr char kFigurePanels[] = {'a', 'b', 'c', 'd'};

// Runs one subcommand (`distribution`, `figure1`, `estimate`, `sweep-chi`).
// args excludes the program name. Output goes to files named by --out, or to
// `out` when --out is "-" or omitted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wvamp::cli
