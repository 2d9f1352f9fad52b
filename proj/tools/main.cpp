#include "cli.hpp"

int main(int argc, char** argv) { return shilov::cli::run_cli(argc, argv); }
