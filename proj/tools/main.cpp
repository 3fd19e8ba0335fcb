#include "meridian/cli.hpp"

int main(int argc, char** argv) { return meridian::cli::run_main(argc, argv); }
