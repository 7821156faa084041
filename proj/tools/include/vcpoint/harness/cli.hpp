#pragma once

#include <iosfwd>

namespace vcpoint::harness {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitAborted = 2,  ///< regularity monitor or controller failure during a run
  kExitConfig = 3,   ///< bad configuration, parameters or initial geometry
};

/// Entry point of vcpoint-sim, with the streams injectable for tests.
///
///   run <scenario> [--config FILE] [--out DIR] [--set key=value ...]
///   list-scenarios
///   emit-arc [--r R] [--theta-min DEG] [--theta-max DEG] [--n N] [--z0 Z] [--out FILE]
///
/// Without --out, runs write to $VCPOINT_OUT_DIR/<scenario>, or to
/// ./vcpoint-runs/<scenario> when the variable is unset.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vcpoint::harness
