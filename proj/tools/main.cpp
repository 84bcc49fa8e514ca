#include "fpgmm/cli.hpp"

int main(int argc, char** argv) { return fpgmm::cli::main_entry(argc, argv); }
