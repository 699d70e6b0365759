#include "approxlab/cli.hpp"

int main(int argc, char** argv) { return approxlab::cli_run(argc, argv); }
