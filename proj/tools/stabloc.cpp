#include "stabloc/cli.hpp"

int main(int argc, char** argv) { return stabloc::run_command(argc, argv); }
