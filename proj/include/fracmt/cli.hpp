#pragma once

namespace fracmt {

// Full command-line front end: parses argv, runs one subcommand, writes the
// report (CSV/JSON) to --out.  Returns the process exit status: 0 success,
// 2 input error, 3 accuracy (budget) error, 4 I/O error.
int cli_main(int argc, char** argv);

}  // namespace fracmt
