#include "asdist/cli.hpp"

int main(int argc, char** argv) { return asdist::cli::run(argc, argv); }
