#include "wlab/cli.hpp"

int main(int argc, char** argv) { return wlab::cli::run_cli(argc, argv); }
