#include "regvec/cli/commands.hpp"

int main(int argc, char** argv) { return regvec::cli::run(argc, argv); }
