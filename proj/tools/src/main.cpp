#include "twist_cli/cli.hpp"

int main(int argc, char** argv) { return twist::cli::run(argc, argv); }
