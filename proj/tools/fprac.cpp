#include "fprac_cli.hpp"

int main(int argc, char** argv) { return fprac::cli::run(argc, argv); }
