#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace llec::cli {

/// Runs the llec command line; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies LLEC_THREADS (if set) to the OpenMP thread count.
void apply_thread_limit();

} // namespace llec::cli
