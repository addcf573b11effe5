#include "fracmt/cli.hpp"

int main(int argc, char** argv) { return fracmt::cli_main(argc, argv); }
