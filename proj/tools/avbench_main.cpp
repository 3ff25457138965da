#include "avbench/cli.hpp"

int main(int argc, char** argv) { return avbench::cli::main(argc, argv); }
