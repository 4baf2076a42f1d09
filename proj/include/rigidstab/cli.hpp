#pragma once

namespace rigidstab {

// Command-line entry point. Returns the process exit code:
// 0 = success / stable, 10 = unstable, 20 = inconclusive (tangency),
// 2 = bad input, 1 = a check inside the subcommand failed.
int run_cli(int argc, char** argv);

}  // namespace rigidstab
