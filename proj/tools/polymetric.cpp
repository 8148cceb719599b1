#include "polymetric/cli.hpp"

int main(int argc, char** argv) { return polymetric::cli_main(argc, argv); }
