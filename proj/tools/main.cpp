#include "cli.hpp"

int main(int argc, char** argv) { return irsvm::cli::cli_main(argc, argv); }
