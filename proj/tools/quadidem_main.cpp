#include "quadidem/cli.hpp"

int main(int argc, char** argv) { return quadidem::cli::run_main(argc, argv); }
