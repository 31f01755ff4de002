#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace toral::cli {

/// Default seed for every command that draws random bases.
inline constexpr unsigned long long kDefaultSeed = 1;

/// Runs one command; args exclude the program name.
/// Returns 0 on success, 1 on a computation error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Handler for `selftest`: writes its report and returns an exit code.
using SelftestHook = std::function<int(std::ostream&)>;
void set_selftest(SelftestHook hook);

/// Fixed 15-significant-digit rendering used in CSV output.
std::string format_real(double x);

struct ScanOptions {
    long long from = -3;
    long long to = -200;
    double s = 0.5;
    double epsilon = 0.1;
    double delta = 0.0;
    double c_convex = 1.0;
    unsigned threads = 0; ///< 0: hardware concurrency
};

/// Fundamental discriminants between from and to (either order), by |D|,
/// negative before positive on ties.
std::vector<long long> scan_discriminants(long long from, long long to);

/// CSV table of Theorem-1 quantities, one row per discriminant.
void write_scan_csv(const ScanOptions& opts, std::ostream& out, std::ostream& err);

} // namespace toral::cli
