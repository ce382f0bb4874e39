#include "stccpm/cli/commands.hpp"

int main(int argc, char** argv) { return stccpm::cli::run(argc, argv); }
